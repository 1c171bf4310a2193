use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type BigRat = num_rational::BigRational;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// `p^e` for any integer `e`.
pub fn pow_i(p: u64, e: i64) -> BigRat {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRat::from_integer(base)
    } else {
        BigRat::new(BigInt::one(), base)
    }
}

pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation; `None` for zero.
pub fn valuation(x: &BigRat, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
}

pub fn is_integral_at(x: &BigRat, p: u64) -> bool {
    valuation(x, p).map_or(true, |v| v >= 0)
}

pub fn is_unit_at(x: &BigRat, p: u64) -> bool {
    valuation(x, p) == Some(0)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Residue in `[0, p^e)` of a `p`-integral rational modulo `p^e`.
pub fn residue(x: &BigRat, p: u64, e: u32) -> BigInt {
    let m = BigInt::from(p).pow(e);
    let d = mod_inverse(x.denom(), &m).expect("rational is not p-integral");
    (x.numer() * d).mod_floor(&m)
}

/// The representative of `x + p^e Z_(p)` in `[0, p^e)` with a pure `p`-power
/// denominator.
pub fn canon_mod(x: &BigRat, p: u64, e: i64) -> BigRat {
    let Some(v) = valuation(x, p) else {
        return BigRat::zero();
    };
    if v >= e {
        return BigRat::zero();
    }
    let s = (-v).max(0);
    let scaled = x * pow_i(p, s);
    let r = residue(&scaled, p, (e + s) as u32);
    BigRat::from_integer(r) * pow_i(p, -s)
}

pub fn to_i64(x: &BigRat) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn abs_rat(x: &BigRat) -> BigRat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_and_residues() {
        assert_eq!(valuation(&frac(12, 5), 2), Some(2));
        assert_eq!(valuation(&frac(5, 24), 2), Some(-3));
        assert_eq!(residue(&frac(1, 3), 2, 3), BigInt::from(3));
        assert_eq!(canon_mod(&frac(7, 4), 2, 0), frac(3, 4));
        assert_eq!(canon_mod(&rat(9), 3, 2), rat(0));
        assert_eq!(canon_mod(&frac(-1, 3), 3, 1), frac(8, 3));
    }

    #[test]
    fn factorization() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(is_prime(97) && !is_prime(91));
    }
}

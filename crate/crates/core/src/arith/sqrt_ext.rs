use super::rat::{pow_i, BigRat};
use super::ring::Ring;

/// `a + b*sqrt(l)` over a base ring. `l = 0` marks an element whose `b` is
/// zero and whose prime is not yet fixed; mixing two different primes panics.
#[derive(Clone, Debug)]
pub struct SqrtExt<R> {
    pub l: u64,
    pub a: R,
    pub b: R,
}

pub type SqrtPrimeExt = SqrtExt<BigRat>;

impl<R: Ring> SqrtExt<R> {
    pub fn new(l: u64, a: R, b: R) -> Self {
        let l = if b.is_zero() && l == 0 { 0 } else { l };
        assert!(l != 0 || b.is_zero(), "sqrt coefficient without a prime");
        SqrtExt { l, a, b }
    }

    pub fn base(a: R) -> Self {
        SqrtExt { l: 0, a, b: R::zero() }
    }

    fn joint(&self, o: &Self) -> u64 {
        match (self.l, o.l) {
            (0, x) | (x, 0) => x,
            (x, y) if x == y => x,
            (x, y) => panic!("sqrt({x}) and sqrt({y}) mixed"),
        }
    }

    /// The base-ring value when the `sqrt(l)` part vanishes.
    pub fn as_base(&self) -> Option<R> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    /// Conjugation `sqrt(l) -> -sqrt(l)`.
    pub fn sconj(&self) -> Self {
        SqrtExt { l: self.l, a: self.a.clone(), b: self.b.rneg() }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SqrtExt<S> {
        SqrtExt { l: self.l, a: f(&self.a), b: f(&self.b) }
    }
}

impl<R: Ring> PartialEq for SqrtExt<R> {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b.rsub(&o.b).is_zero() && (self.b.is_zero() || self.l == o.l)
    }
}

impl<R: Ring> Ring for SqrtExt<R> {
    fn zero() -> Self {
        Self::base(R::zero())
    }
    fn one() -> Self {
        Self::base(R::one())
    }
    fn from_rat(q: &BigRat) -> Self {
        Self::base(R::from_rat(q))
    }
    fn radd(&self, o: &Self) -> Self {
        SqrtExt { l: self.joint(o), a: self.a.radd(&o.a), b: self.b.radd(&o.b) }
    }
    fn rmul(&self, o: &Self) -> Self {
        let l = self.joint(o);
        let lb = self.b.rmul(&o.b).scale(&BigRat::from_integer(l.into()));
        SqrtExt {
            l,
            a: self.a.rmul(&o.a).radd(&lb),
            b: self.a.rmul(&o.b).radd(&self.b.rmul(&o.a)),
        }
    }
    fn rneg(&self) -> Self {
        SqrtExt { l: self.l, a: self.a.rneg(), b: self.b.rneg() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let l = BigRat::from_integer(self.l.into());
        let norm = self.a.rmul(&self.a).rsub(&self.b.rmul(&self.b).scale(&l));
        let ni = norm.inv()?;
        Some(SqrtExt { l: self.l, a: self.a.rmul(&ni), b: self.b.rneg().rmul(&ni) })
    }
}

/// `l^(k/2)` as an element of the extension.
pub fn sqrt_pow<R: Ring>(l: u64, k: i64) -> SqrtExt<R> {
    if k % 2 == 0 {
        SqrtExt { l, a: R::from_rat(&pow_i(l, k / 2)), b: R::zero() }
    } else {
        SqrtExt { l, a: R::zero(), b: R::from_rat(&pow_i(l, (k - 1).div_euclid(2))) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{frac, rat};

    #[test]
    fn half_powers_multiply() {
        for a in -5..5 {
            for b in -5..5 {
                let lhs: SqrtPrimeExt = sqrt_pow(3, a).rmul(&sqrt_pow(3, b));
                assert_eq!(lhs, sqrt_pow(3, a + b), "{a} {b}");
            }
        }
        let s: SqrtPrimeExt = sqrt_pow(2, -3);
        assert_eq!(s.b, frac(1, 4));
    }

    #[test]
    fn inverse() {
        let x = SqrtPrimeExt::new(5, rat(2), rat(3));
        assert_eq!(x.rmul(&x.inv().unwrap()), SqrtPrimeExt::one());
    }

    #[test]
    #[should_panic]
    fn mixing_primes_panics() {
        let _ = sqrt_pow::<BigRat>(2, 1).radd(&sqrt_pow(3, 1));
    }
}

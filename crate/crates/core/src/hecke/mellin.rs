//! Mellin transforms of Siegel sections attached to simple Schwartz functions.

use super::satake::Poly;
use crate::arith::rat::{pow_i, rat, valuation};
use crate::arith::{sqrt_pow, Ring, SqrtPrimeExt, ToJson};
use crate::error::{Error, Result};
use crate::padic::MatQ;
use crate::report::Report;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schwartz {
    /// `ch(Z_l^2)`.
    Lattice,
    /// `ch(l^t Z_l x (1 + l^t Z_l))`.
    Phi(u32),
}

/// `num / den` in the variable `X = l^{-s}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MellinValue {
    pub num: Poly,
    pub den: Poly,
}

impl MellinValue {
    /// Power-series expansion up to `X^order` (inclusive), for rational
    /// functions whose denominator is `1 - r X`.
    pub fn series(&self, order: i64) -> Poly {
        if self.den == Poly::one() {
            return truncate(&self.num, order);
        }
        let r = Poly::one().sub(&self.den);
        let mut acc = Poly::zero();
        let mut term = Poly::one();
        for _ in 0..=order.max(0) + 8 {
            acc = acc.add(&term);
            term = truncate(&term.mul(&r), order + 8);
        }
        truncate(&self.num.mul(&acc), order)
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }
}

fn truncate(p: &Poly, order: i64) -> Poly {
    let mut out = Poly::zero();
    for (e, c) in p.collect_in("X") {
        if e <= order {
            out = out.add(&c.mul(&Poly::var_pow("X", e)));
        }
    }
    out
}

/// `p^n` for a single-term `p` and any integer `n`.
pub(crate) fn mono_pow(p: &Poly, n: i64) -> Result<Poly> {
    Poly::var_pow("_u", n).subst("_u", p)
}

/// `int_{Q_l^x} phi((0, x) k) lam(x) |x|^{s + 1/2} d^x x` with
/// `vol(Z_l^x) = 1` and `lam` unramified, given by its value at `l`.
pub fn mellin_siegel_eval(phi: Schwartz, k: &MatQ, lam: &Poly) -> Result<MellinValue> {
    let l = k.prime;
    let r = lam.mul(&Poly::var("X")).scale(&sqrt_pow(l, -1));
    let v10 = valuation(k.get(1, 0), l);
    let v11 = valuation(k.get(1, 1), l);
    match phi {
        Schwartz::Lattice => {
            // shells v(x) >= -min(v(k10), v(k11)) are all of full measure
            let m = match (v10, v11) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => return Err(Error::InvalidInput("singular k".into())),
            };
            Ok(MellinValue { num: mono_pow(&r, -m)?, den: Poly::one().sub(&r) })
        }
        Schwartz::Phi(t) => {
            let Some(b) = v11 else {
                return Ok(MellinValue { num: Poly::zero(), den: Poly::one() });
            };
            let supported = v10.map_or(true, |a| a - b >= t as i64);
            if !supported {
                return Ok(MellinValue { num: Poly::zero(), den: Poly::one() });
            }
            // a single shell v(x) = -v(k11), a coset of 1 + l^t Z_l
            let vol = pow_i(l, 1 - t as i64) / rat(l as i64 - 1);
            Ok(MellinValue { num: mono_pow(&r, -b)?.scale(&SqrtPrimeExt::from_rat(&vol)), den: Poly::one() })
        }
    }
}

/// `phi_{l,2}` over bottom rows `(c, d)` of `GL_2(Z_l)` modulo `l^3`: the
/// value is non-zero exactly on `U_0(l^2)` and equals `l^-1 (l-1)^-1` there.
pub fn siegel_section_check(l: u64) -> Result<Report> {
    let mut rep = Report::new("siegel-section").param("prime", l);
    let li = l as i64;
    let m = li.pow(3);
    let lam = Poly::var("lam");
    let expect = Poly::constant(SqrtPrimeExt::from_rat(&(pow_i(l, -1) / rat(li - 1))));
    let (mut support_ok, mut value_ok, mut in_support) = (true, true, 0u64);
    for c in 0..m {
        for d in 0..m {
            if c % li == 0 && d % li == 0 {
                continue;
            }
            let k = if d % li != 0 {
                MatQ::from_ints(l, &[&[1, 0], &[c, d]])
            } else {
                MatQ::from_ints(l, &[&[0, 1], &[c, d]])
            };
            let v = mellin_siegel_eval(Schwartz::Phi(2), &k, &lam)?;
            let member = c % (li * li) == 0;
            support_ok &= v.num.is_zero() != member;
            if member {
                in_support += 1;
                value_ok &= v.num == expect && v.den == Poly::one();
            }
        }
    }
    rep.check("support of phi_{l,2} is U_0(l^2)", support_ok, json!({ "rows": m * m, "in_support": in_support }));
    rep.check("value on U_0(l^2) is l^-1 (l-1)^-1", value_ok, json!({ "value": expect.to_json() }));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{residue, BigRat};
    use num_bigint::BigInt;

    /// Shell-by-shell oracle: the measure of `{x : v(x) = n, phi((0,x)k) = 1}`
    /// by counting units modulo `l^prec`.
    fn brute(phi: Schwartz, k: &MatQ, lam: &Poly, lo: i64, hi: i64) -> Poly {
        let l = k.prime;
        let prec = 6u32;
        let modulus = (l as i64).pow(prec);
        let units = modulus - modulus / l as i64;
        let mut acc = Poly::zero();
        for n in lo..=hi {
            let mut count = 0i64;
            for u in 0..modulus {
                if u % l as i64 == 0 {
                    continue;
                }
                let x = pow_i(l, n) * rat(u);
                let a = &x * k.get(1, 0);
                let b = &x * k.get(1, 1);
                let hit = match phi {
                    Schwartz::Lattice => valuation(&a, l).map_or(true, |v| v >= 0) && valuation(&b, l).map_or(true, |v| v >= 0),
                    Schwartz::Phi(t) => {
                        valuation(&a, l).map_or(true, |v| v >= t as i64)
                            && valuation(&b, l).map_or(false, |v| v >= 0)
                            && residue(&(b.clone() - rat(1)), l, t) == BigInt::from(0)
                    }
                };
                count += i64::from(hit);
            }
            if count > 0 {
                let meas = BigRat::new(count.into(), units.into());
                let r = lam.mul(&Poly::var("X")).scale(&sqrt_pow(l, -1));
                acc = acc.add(&mono_pow(&r, n).unwrap().scale(&SqrtPrimeExt::from_rat(&meas)));
            }
        }
        acc
    }

    #[test]
    fn phi_two_support() {
        for l in [2u64, 3] {
            let lam = Poly::var("lam");
            let k = MatQ::from_ints(l, &[&[1, 1], &[(l * l) as i64, 1]]);
            let v = mellin_siegel_eval(Schwartz::Phi(2), &k, &lam).unwrap();
            let expect = pow_i(l, -1) / rat(l as i64 - 1);
            assert_eq!(v.num, Poly::constant(SqrtPrimeExt::from_rat(&expect)));
            for bottom in [1i64, l as i64] {
                let k = MatQ::from_ints(l, &[&[0, 1], &[bottom, 1]]);
                assert!(mellin_siegel_eval(Schwartz::Phi(2), &k, &lam).unwrap().num.is_zero());
            }
            assert_eq!(v.series(3), brute(Schwartz::Phi(2), &k, &lam, -2, 3));
        }
    }

    #[test]
    fn lattice_geometric_series() {
        let l = 3;
        let one = Poly::one();
        let v = mellin_siegel_eval(Schwartz::Lattice, &MatQ::identity(2, l), &one).unwrap();
        let r = Poly::var("X").scale(&sqrt_pow(l, -1));
        assert_eq!(v.den, Poly::one().sub(&r));
        assert_eq!(v.num, Poly::one());
        let lam = Poly::var("lam");
        for k in [MatQ::identity(2, l), MatQ::from_ints(l, &[&[1, 0], &[0, 9]]), MatQ::from_ints(l, &[&[3, 1], &[3, 0]])] {
            let v = mellin_siegel_eval(Schwartz::Lattice, &k, &lam).unwrap();
            assert_eq!(v.series(4), brute(Schwartz::Lattice, &k, &lam, -3, 4));
        }
        let phi1 = mellin_siegel_eval(Schwartz::Phi(1), &MatQ::identity(2, l), &lam).unwrap();
        assert_eq!(phi1.series(3), brute(Schwartz::Phi(1), &MatQ::identity(2, l), &lam, -2, 3));
    }

    #[test]
    fn siegel_section_report() {
        for l in [2, 3] {
            let rep = siegel_section_check(l).unwrap();
            assert!(rep.pass(), "{}", rep.summary());
        }
    }
}

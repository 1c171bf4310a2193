use crate::arith::rat::{factor, is_prime, rat};
use crate::arith::{CycNum, Ring, ToJson};
use crate::error::{Error, Result};
use crate::iqf::{HeckeChar, Ideal, QuadField, Splitting};
use crate::report::Report;
use num_integer::Integer;
use serde_json::{json, Value};

/// Integral ideals of norm `n`, built from the splitting of each prime
/// power dividing `n`.
pub fn ideals_of_norm(k: &QuadField, n: u64) -> Vec<Ideal> {
    let mut out = vec![Ideal::unit(k)];
    for (l, e) in factor(n) {
        let local: Vec<Ideal> = match k.split_prime(l) {
            Splitting::Split(p, q) => (0..=e).map(|i| p.pow(i).mul(&q.pow(e - i))).collect(),
            Splitting::Inert(p) if e % 2 == 0 => vec![p.pow(e / 2)],
            Splitting::Inert(_) => vec![],
            Splitting::Ramified(p) => vec![p.pow(e)],
        };
        out = out.iter().flat_map(|a| local.iter().map(move |b| a.mul(b))).collect();
    }
    out
}

/// `a_n = sum psi(a)` over ideals of norm `n` prime to the modulus of `psi`.
pub fn coefficient(psi: &HeckeChar, n: u64) -> Result<CycNum> {
    let m = psi.modulus();
    let mut acc = CycNum::zero();
    for a in ideals_of_norm(&psi.field, n) {
        if a.coprime(m) {
            acc = acc.radd(&psi.eval(&a)?);
        }
    }
    Ok(acc)
}

/// `N_m = N(m) |D_K|` for the modulus `m` of `psi`.
pub fn level(psi: &HeckeChar) -> u64 {
    psi.modulus().norm() * psi.field.disc.unsigned_abs()
}

/// Truncated `q`-expansion of the weight-two CM form attached to `psi`.
#[derive(Clone, Debug)]
pub struct QExpansion {
    pub bound: u64,
    /// `coeffs[n]` for `1 <= n <= bound`; `coeffs[0]` is unused.
    pub coeffs: Vec<CycNum>,
    pub level: u64,
}

impl QExpansion {
    pub fn a(&self, n: u64) -> &CycNum {
        &self.coeffs[n as usize]
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs.iter().skip(1).map(|c| c.to_json()).collect();
        json!({ "bound": self.bound, "level": self.level, "weight": 2, "coefficients": coeffs })
    }
}

pub fn q_expansion(psi: &HeckeChar, bound: u64) -> Result<QExpansion> {
    if bound == 0 {
        return Err(Error::InvalidInput("coefficient bound must be positive".into()));
    }
    let mut coeffs = vec![CycNum::zero()];
    for n in 1..=bound {
        coeffs.push(coefficient(psi, n)?);
    }
    Ok(QExpansion { bound, coeffs, level: level(psi) })
}

fn eigenform_checks(f: &QExpansion, psi: &HeckeChar, primes: u64) -> Result<Report> {
    let mut rep = Report::new("eigenform");
    let k = &psi.field;
    let b = f.bound;
    rep.check("a_1 = 1", *f.a(1) == CycNum::one(), json!({}));

    let mut pairs = 0u64;
    let mut bad: Vec<Value> = Vec::new();
    for m in 2..=b {
        for n in (m + 1)..=(b / m) {
            if m.gcd(&n) != 1 {
                continue;
            }
            pairs += 1;
            if *f.a(m * n) != f.a(m).rmul(f.a(n)) {
                bad.push(json!([m, n]));
            }
        }
    }
    bad.truncate(5);
    rep.check("a_mn = a_m a_n for coprime m, n", bad.is_empty(), json!({ "pairs": pairs, "failures": bad }));

    let mut rec = 0u64;
    let mut bad_rec = Vec::new();
    let mut bad_al = Vec::new();
    let mut bad_sq = Vec::new();
    for l in (2..=primes).filter(|&l| is_prime(l) && f.level % l != 0) {
        // l (omega eps_K)(l), read off the character on the principal ideal (l)
        let neb = psi.omega(l as i64)?.scale(&rat(l as i64 * k.epsilon(l)));
        let mut lr = l;
        while lr * l <= b {
            rec += 1;
            let rhs = f.a(l).rmul(f.a(lr)).rsub(&neb.rmul(f.a(lr / l)));
            if *f.a(lr * l) != rhs {
                bad_rec.push(json!([l, lr * l]));
            }
            lr *= l;
        }
        match k.split_prime(l) {
            Splitting::Split(p, q) => {
                let (x, y) = (psi.eval(&p)?, psi.eval(&q)?);
                if l <= b && *f.a(l) != x.radd(&y) {
                    bad_al.push(l);
                }
                if l * l <= b {
                    let lhs = x.rmul(&x).radd(&psi.eval(&p.mul(&q))?).radd(&y.rmul(&y));
                    if *f.a(l * l) != lhs {
                        bad_sq.push(l);
                    }
                }
            }
            _ => {
                if l <= b && !f.a(l).is_zero() {
                    bad_al.push(l);
                }
            }
        }
    }
    rep.check(
        "a_{l^(r+1)} = a_l a_{l^r} - l (omega eps_K)(l) a_{l^(r-1)}",
        bad_rec.is_empty(),
        json!({ "instances": rec, "failures": bad_rec }),
    );
    rep.check("a_l = psi(l) + psi(lbar) for split l, 0 for inert l", bad_al.is_empty(), json!({ "failures": bad_al }));
    rep.check(
        "a_{l^2} = psi(l)^2 + psi(l lbar) + psi(lbar)^2 for split l",
        bad_sq.is_empty(),
        json!({ "failures": bad_sq }),
    );
    Ok(rep)
}

/// Multiplicativity, the weight-two Hecke recurrence with nebentypus
/// `omega eps_K`, and the values at primes. A copy with `a_2` shifted by one
/// must fail.
pub fn verify_eigenform(f: &QExpansion, psi: &HeckeChar, primes: u64) -> Result<Report> {
    if primes * primes > f.bound {
        return Err(Error::InvalidInput(format!("bound {} below {}^2", f.bound, primes)));
    }
    let mut rep = eigenform_checks(f, psi, primes)?;
    rep = Report { name: "verify-eigenform".into(), ..rep }
        .param("bound", f.bound)
        .param("prime_bound", primes)
        .param("level", f.level);
    let mut bad = f.clone();
    if bad.bound >= 2 {
        bad.coeffs[2] = bad.coeffs[2].radd(&CycNum::one());
    }
    let corrupted = eigenform_checks(&bad, psi, primes)?;
    rep.negative_control("corrupted a_2 is flagged", !corrupted.pass(), json!({ "failures": corrupted.failures() }));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iqf::parse_ideal;

    fn psi() -> HeckeChar {
        let k = QuadField::gaussian();
        HeckeChar::construct(&k, &parse_ideal(&k, "2+2i").unwrap()).unwrap()
    }

    /// Brute force over all HNF triples of norm `n`.
    fn ideals_by_hnf(k: &QuadField, n: u64) -> Vec<Ideal> {
        let n = n as i64;
        let mut out = Vec::new();
        for c in 1..=n {
            if n % c != 0 {
                continue;
            }
            let a = n / c;
            for b in 0..a {
                if let Ok(i) = Ideal::from_hnf(k, a, b, c) {
                    out.push(i);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn ideal_enumeration_matches_hnf_scan() {
        for d in [-4, -3, -23] {
            let k = QuadField::new(d).unwrap();
            for n in 1..80 {
                let mut listed = ideals_of_norm(&k, n);
                listed.sort();
                assert_eq!(listed, ideals_by_hnf(&k, n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn first_coefficients() {
        let psi = psi();
        let k = psi.field;
        let f = q_expansion(&psi, 30).unwrap();
        assert_eq!(*f.a(1), CycNum::one());
        assert!(f.a(3).is_zero() && f.a(7).is_zero());
        let p = crate::iqf::parse_element(&k, "2+i").unwrap();
        let q = crate::iqf::parse_element(&k, "2-i").unwrap();
        let a5 = psi
            .eval(&Ideal::principal(&k, p).unwrap())
            .unwrap()
            .radd(&psi.eval(&Ideal::principal(&k, q).unwrap()).unwrap());
        assert_eq!(*f.a(5), a5);
        assert!(!f.a(5).is_zero());
        assert_eq!(f.level, 32);
    }

    #[test]
    fn eigenform_report() {
        let psi = psi();
        let f = q_expansion(&psi, 150).unwrap();
        let rep = verify_eigenform(&f, &psi, 12).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
        assert!(verify_eigenform(&f, &psi, 13).is_err());
    }
}

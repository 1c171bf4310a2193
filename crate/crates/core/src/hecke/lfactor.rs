//! Spin and Novodvorsky Euler-factor polynomials.

use super::algebra::HeckeOp;
use super::satake::{ps_eigenvalue, Poly};
use crate::arith::rat::{pow_i, rat};
use crate::arith::{sqrt_pow, Monomial, Ring, SqrtPrimeExt, ToJson};
use crate::error::Result;
use crate::report::Report;
use serde_json::json;
use std::collections::BTreeSet;

/// `1 - l^{-3/2} lam X + (l^{-2} mu + (1 + l^{-2}) om) X^2 - l^{-3/2} om lam X^3 + om^2 X^4`.
pub fn p_spin_poly(prime: u64, lam: &Poly, mu: &Poly, om: &Poly) -> Poly {
    let x = Poly::var("X");
    let l32 = Poly::constant(sqrt_pow(prime, -3));
    let lm2 = pow_i(prime, -2);
    let c1 = l32.mul(lam).neg();
    let c2 = mu.scale(&SqrtPrimeExt::from_rat(&lm2)).add(&om.scale(&SqrtPrimeExt::from_rat(&(rat(1) + &lm2))));
    let c3 = l32.mul(om).mul(lam).neg();
    let c4 = om.mul(om);
    Poly::one()
        .add(&c1.mul(&x))
        .add(&c2.mul(&x.pow(2)))
        .add(&c3.mul(&x.pow(3)))
        .add(&c4.mul(&x.pow(4)))
}

/// The spin polynomial with symbolic `lambda`, `mu`, `omega`.
pub fn p_spin_symbolic(prime: u64) -> Poly {
    p_spin_poly(prime, &Poly::var("lambda"), &Poly::var("mu"), &Poly::var("omega"))
}

/// Product of the spin brackets at `X -> y_nu X` and `X -> y_mu X`.
pub fn p_nov_poly(prime: u64, lam: &Poly, mu: &Poly, om: &Poly, ynu: &Poly, ymu: &Poly) -> Poly {
    let spin = p_spin_poly(prime, lam, mu, om);
    let x = Poly::var("X");
    let a = spin.subst("X", &ynu.mul(&x)).expect("polynomial in X");
    let b = spin.subst("X", &ymu.mul(&x)).expect("polynomial in X");
    a.mul(&b)
}

/// Spin parameters of the theta lift: `x0 * {1, x1, x2, x1 x2}`.
pub fn spin_parameters() -> Vec<Poly> {
    let x0 = Poly::var("x0");
    let x1 = Poly::var("x1");
    let x2 = Poly::var("x2");
    vec![x0.clone(), x0.mul(&x1), x0.mul(&x2), x0.mul(&x1).mul(&x2)]
}

pub fn product_form(alphas: &[Poly], betas: &[Poly]) -> Poly {
    let x = Poly::var("X");
    let mut out = Poly::one();
    for a in alphas {
        for b in betas {
            out = out.mul(&Poly::one().sub(&a.mul(b).mul(&x)));
        }
    }
    out
}

/// Eigenvalues `(lambda, mu, omega)` of the three generators computed from
/// their enumerated coset lists.
pub fn gsp4_eigensystem(prime: u64) -> Result<(Poly, Poly, Poly)> {
    Ok((
        ps_eigenvalue(&HeckeOp::t_op(prime))?,
        ps_eigenvalue(&HeckeOp::r_op(prime))?,
        ps_eigenvalue(&HeckeOp::s_op(prime))?,
    ))
}

/// Checks that the Novodvorsky polynomial built from enumerated eigenvalues
/// factors as `prod (1 - alpha_i beta_j X)`. With `corrupt`, `lambda` is
/// shifted by one so the residual must be non-zero.
pub fn verify_nov_factorization(prime: u64, corrupt: bool) -> Result<Report> {
    let mut rep = Report::new("nov-factorization").param("prime", prime).param("corrupt", corrupt);
    let (mut lam, mu, om) = gsp4_eigensystem(prime)?;
    if corrupt {
        lam = lam.add(&Poly::one());
    }
    let ynu = Poly::var("ynu");
    let ymu = Poly::var("ymu");
    let nov = p_nov_poly(prime, &lam, &mu, &om, &ynu, &ymu);
    let rhs = product_form(&spin_parameters(), &[ynu.clone(), ymu.clone()]);
    let residual = nov.sub(&rhs);
    let degree = nov.collect_in("X").keys().max().copied().unwrap_or(0);
    rep.check("constant term 1", nov.coeff_of("X", 0) == Poly::one(), json!(null));
    rep.check("degree 8", degree == 8, json!(degree));
    rep.check(
        "factorization residual vanishes",
        residual.is_zero(),
        json!({ "residual_terms": residual.terms.len() }),
    );
    let spin = p_spin_poly(prime, &lam, &mu, &om);
    let spin_rhs = product_form(&spin_parameters(), &[Poly::one()]);
    rep.check("spin bracket factors", spin.sub(&spin_rhs).is_zero(), json!(null));
    let square = p_nov_poly(prime, &lam, &mu, &om, &Poly::one(), &Poly::one());
    rep.check("y = 1 gives the spin square", square == spin.mul(&spin), json!(null));
    Ok(rep)
}

fn gsp4_part(m: &Monomial, names: &[&str]) -> Monomial {
    m.iter().filter(|(k, _)| names.contains(&k.as_str())).map(|(k, e)| (k.clone(), *e)).collect()
}

fn render(m: &Monomial) -> String {
    m.iter().map(|(k, e)| if *e == 1 { k.clone() } else { format!("{k}^{e}") }).collect::<Vec<_>>().join("*")
}

/// Multiplier-valuation grading of the Novodvorsky polynomial written in the
/// Hecke operators: in the `X^i` coefficient every monomial in `T, R, S` has
/// total multiplier valuation `i` (valuations 1, 2, 2), and every monomial in
/// the primed operators has valuation `-i` (valuations -1, -2, -2).
pub fn multiplier_grading_check(prime: u64) -> Report {
    let mut rep = Report::new("multiplier-grading").param("prime", prime);
    let ynu = Poly::var("ynu");
    let ymu = Poly::var("ymu");
    for (names, vals, sign, tag) in [
        (["T", "R", "S"], [1i64, 2, 2], 1i64, "Nov"),
        (["T'", "R'", "S'"], [-1, -2, -2], -1, "Nov'"),
    ] {
        let nov = p_nov_poly(prime, &Poly::var(names[0]), &Poly::var(names[1]), &Poly::var(names[2]), &ynu, &ymu);
        for (i, coeff) in nov.collect_in("X") {
            let mut ok = true;
            let mut seen = BTreeSet::new();
            for m in coeff.terms.keys() {
                let g = gsp4_part(m, &names);
                let v: i64 = names.iter().zip(vals).map(|(n, w)| w * g.get(*n).copied().unwrap_or(0)).sum();
                ok &= v == sign * i;
                seen.insert(render(&g));
            }
            rep.check(&format!("{tag} X^{i} graded by {}", sign * i), ok, json!(seen.into_iter().collect::<Vec<_>>()));
        }
        if tag == "Nov'" {
            let x5 = nov.coeff_of("X", 5);
            let seen: BTreeSet<String> = x5.terms.keys().map(|m| render(&gsp4_part(m, &names))).collect();
            let expect: BTreeSet<String> = ["R'*S'*T'", "S'^2*T'"].iter().map(|s| s.to_string()).collect();
            rep.check("Nov' X^5 operator monomials are S'T'R' and S'^2T'", seen == expect, json!(seen));
        }
    }
    rep
}

/// The symbolic spin polynomial's coefficients, for display.
pub fn spin_coefficients_json(prime: u64) -> serde_json::Value {
    let p = p_spin_symbolic(prime);
    json!(p.collect_in("X").into_iter().map(|(i, c)| json!({ "power": i, "coeff": c.to_json() })).collect::<Vec<_>>())
}

/// The five coefficients of the spin bracket, compared with terms written
/// out monomial by monomial.
pub fn spin_verbatim_check(prime: u64) -> Report {
    let mut rep = Report::new("spin-verbatim").param("prime", prime);
    let p = p_spin_symbolic(prime);
    let mono = |vars: &[(&str, i64)]| -> Monomial { vars.iter().map(|(v, e)| (v.to_string(), *e)).collect() };
    let c = |q: crate::arith::BigRat| SqrtPrimeExt::from_rat(&q);
    let l32: SqrtPrimeExt = sqrt_pow(prime, -3);
    let lm2 = pow_i(prime, -2);
    let expected = [
        Poly::term(mono(&[]), c(rat(1))),
        Poly::term(mono(&[("lambda", 1)]), l32.rneg()),
        Poly::term(mono(&[("mu", 1)]), c(lm2.clone())).add(&Poly::term(mono(&[("omega", 1)]), c(rat(1) + &lm2))),
        Poly::term(mono(&[("lambda", 1), ("omega", 1)]), l32.rneg()),
        Poly::term(mono(&[("omega", 2)]), c(rat(1))),
    ];
    let names = ["1", "-l^{-3/2} lambda", "l^{-2} mu + (1 + l^{-2}) omega", "-l^{-3/2} omega lambda", "omega^2"];
    for (i, (e, n)) in expected.iter().zip(names).enumerate() {
        let got = p.coeff_of("X", i as i64);
        rep.check(&format!("X^{i} coefficient is {n}"), got == *e, json!(got.to_json()));
    }
    let degree = p.collect_in("X").keys().copied().max();
    rep.check("no terms beyond X^4", degree == Some(4), json!(degree));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::frac;

    #[test]
    fn spin_at_zero_eigenvalues() {
        let l = 3;
        let p = p_spin_poly(l, &Poly::zero(), &Poly::zero(), &Poly::one());
        let x = Poly::var("X");
        let expect = Poly::one().add(&x.pow(2).scale(&SqrtPrimeExt::from_rat(&(rat(1) + frac(1, 9))))).add(&x.pow(4));
        assert_eq!(p, expect);
    }

    #[test]
    fn symbolic_coefficients_verbatim() {
        let l = 2;
        let p = p_spin_symbolic(l);
        let lam = Poly::var("lambda");
        let half: SqrtPrimeExt = sqrt_pow(l, -3);
        assert_eq!(p.coeff_of("X", 1), lam.scale(&half).neg());
        assert_eq!(p.coeff_of("X", 4), Poly::var("omega").pow(2));
        assert_eq!(p.coeff_of("X", 0), Poly::one());
    }

    #[test]
    fn factorization_and_negative_control() {
        for l in [2, 3] {
            assert!(verify_nov_factorization(l, false).unwrap().pass());
            let bad = verify_nov_factorization(l, true).unwrap();
            assert!(!bad.pass());
        }
    }

    #[test]
    fn grading() {
        let r = multiplier_grading_check(2);
        assert!(r.pass(), "{}", r.summary());
        assert_eq!(r.checks.len(), 19);
    }

    #[test]
    fn verbatim_report() {
        for l in [2, 3, 5] {
            assert!(spin_verbatim_check(l).pass());
        }
    }
}

//! The group-ring identity behind the well-definedness of the norm map
//! `N^{nl}_n` at a split prime `l = l lbar`.

use super::phi::{bracket, phi_n};
use crate::arith::rat::{frac, is_prime, rat};
use crate::arith::{CycNum, GroupRingElt, Ring, ToJson};
use crate::error::{Error, Result};
use crate::iqf::{HeckeChar, Ideal, RayClassGroup, Splitting};
use crate::report::Report;
use serde_json::{json, Value};

/// `u (pr1)_* x + v (pr2)_* x` with coefficients in `L[H_n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrSymbols {
    pub pr1: GroupRingElt,
    pub pr2: GroupRingElt,
}

impl PrSymbols {
    fn to_json(&self) -> Value {
        json!({ "pr1": self.pr1.to_json(), "pr2": self.pr2.to_json() })
    }
}

/// Validated split prime data for the identity.
pub struct SplitPrime {
    pub l: u64,
    pub lp: Ideal,
    pub lbar: Ideal,
}

pub fn split_prime_data(psi: &HeckeChar, n: &Ideal, lp: &Ideal) -> Result<SplitPrime> {
    let k = psi.field;
    let l = lp.norm();
    if !is_prime(l) {
        return Err(Error::NotSplit(l));
    }
    let Splitting::Split(p, q) = k.split_prime(l) else { return Err(Error::NotSplit(l)) };
    let lbar = if *lp == p { q } else { p };
    if !n.is_subset(&psi.conductor) {
        return Err(Error::ModulusMismatch);
    }
    if (n.norm() * k.disc.unsigned_abs()) % l == 0 {
        return Err(Error::ModulusViolation(format!("{l} divides N_n")));
    }
    Ok(SplitPrime { l, lp: lp.clone(), lbar })
}

/// `N^{nl}_n` applied to `cx (x) x + ctx (x) T'x`, with `(pr1)_* T' =
/// T'(pr1)_* - S'(pr2)_*` and `(pr2)_* T' = l (pr1)_*`, Hecke operators acting
/// on the `H_n` side through `phi_n`. The unit factor `[lbar]^-2
/// psi(lbar)^-2` is left out.
fn norm_map(
    t: &GroupRingElt,
    s: &GroupRingElt,
    lpsi: &GroupRingElt,
    l: u64,
    cx: &GroupRingElt,
    ctx: &GroupRingElt,
) -> PrSymbols {
    let lq = CycNum::from_rat(&rat(l as i64));
    let pr1_of = PrSymbols { pr1: cx.add(&ctx.mul(t)), pr2: ctx.mul(s).scale(&CycNum::from_int(-1)) };
    let pr2_of = PrSymbols { pr1: ctx.scale(&lq), pr2: cx.clone() };
    let corr = lpsi.scale(&CycNum::from_rat(&frac(1, l as i64)));
    PrSymbols { pr1: pr1_of.pr1.sub(&corr.mul(&pr2_of.pr1)), pr2: pr1_of.pr2.sub(&corr.mul(&pr2_of.pr2)) }
}

/// Checks `N(1 (x) T'x) = (phi_n(T') - [l]psi(l)) (pr1)_* x - phi_n(S')
/// (pr2)_* x = N(phi_{nl}(T') (x) x)` in `L[H_n]`.
pub fn check_norm_relation(psi: &HeckeChar, ray: &RayClassGroup, lp: &Ideal) -> Result<Report> {
    let k = psi.field;
    let sp = split_prime_data(psi, &ray.modulus, lp)?;
    let l = sp.l;
    let g = ray.group();
    let img = phi_n(psi, ray, l)?;
    let t = img.t[&l].clone();
    let s = img.s[&l].clone();
    let lpsi = bracket(psi, ray, &sp.lp)?;
    let lbpsi = bracket(psi, ray, &sp.lbar)?;
    let one = GroupRingElt::scalar(g, CycNum::one());
    let zero = GroupRingElt::zero(g);

    let mut rep = Report::new("norm-relation")
        .param("field", k.disc)
        .param("modulus", ray.modulus.to_json())
        .param("prime", l)
        .param("l", sp.lp.to_json());

    rep.check("phi_n(T') = [l]psi(l) + [lbar]psi(lbar)", t == lpsi.add(&lbpsi), json!({ "phi_T": t.to_json() }));

    // phi_{nl}(T') lives on H_{nl}: one term, pushed to H_n along the class of lbar.
    let nl = ray.modulus.mul(&sp.lp);
    let ray_nl = RayClassGroup::new(&k, &nl)?;
    let t_nl = phi_n(psi, &ray_nl, l)?.t[&l].clone();
    let single = t_nl == bracket(psi, &ray_nl, &sp.lbar)?;
    rep.check("phi_nl(T') = [lbar]psi(lbar) on H_nl", single, json!({ "terms": t_nl.terms.len() }));
    let t_nl_pushed = lbpsi.clone();

    let lhs = norm_map(&t, &s, &lpsi, l, &zero, &one);
    let displayed = PrSymbols { pr1: t.sub(&lpsi), pr2: s.scale(&CycNum::from_int(-1)) };
    let rhs = norm_map(&t, &s, &lpsi, l, &t_nl_pushed, &zero);
    rep.check("N(1 (x) T'x) has the displayed expansion", lhs == displayed, json!({ "lhs": lhs.to_json() }));
    rep.check("N(1 (x) T'x) = N(phi_nl(T') (x) x)", lhs == rhs, json!({ "rhs": rhs.to_json() }));

    let unit = lbpsi.pow(2).monomial_inverse();
    let unit_ok = unit.as_ref().map(|u| u.mul(&lbpsi.pow(2)) == one).unwrap_or(false);
    rep.check("[lbar]^-2 psi(lbar)^-2 is a unit of L[H_n]", unit_ok, json!({}));

    let uncorrected = PrSymbols { pr1: t.clone(), pr2: displayed.pr2.clone() };
    rep.negative_control("dropping -[l]psi(l) breaks the identity", uncorrected != rhs, json!({}));

    // The proof also writes phi_n(S') as [l lbar] psi(l lbar); that element is l phi_n(S').
    let literal = bracket(psi, ray, &sp.lp.mul(&sp.lbar))?;
    let ratio = literal == s.scale(&CycNum::from_int(l as i64));
    rep = rep.param("literal_s_image_is_l_times_phi_s", ratio);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iqf::{parse_ideal, QuadField};

    #[test]
    fn gaussian_identity() {
        let k = QuadField::gaussian();
        let f = parse_ideal(&k, "2+2i").unwrap();
        let psi = HeckeChar::construct(&k, &f).unwrap();
        let ray = RayClassGroup::new(&k, &f).unwrap();
        for l in [5u64, 13, 17] {
            for lp in k.primes_above(l) {
                let rep = check_norm_relation(&psi, &ray, &lp).unwrap();
                assert!(rep.pass(), "{}", rep.summary());
                assert_eq!(rep.params["literal_s_image_is_l_times_phi_s"], json!(true));
            }
        }
    }

    #[test]
    fn eisenstein_identity() {
        let k = QuadField::eisenstein();
        let f = parse_ideal(&k, "3").unwrap();
        let psi = HeckeChar::construct(&k, &f).unwrap();
        let ray = RayClassGroup::new(&k, &f).unwrap();
        for l in [7u64, 13] {
            for lp in k.primes_above(l) {
                assert!(check_norm_relation(&psi, &ray, &lp).unwrap().pass());
            }
        }
    }

    #[test]
    fn preconditions() {
        let k = QuadField::gaussian();
        let f = parse_ideal(&k, "2+2i").unwrap();
        let psi = HeckeChar::construct(&k, &f).unwrap();
        let ray = RayClassGroup::new(&k, &f).unwrap();
        assert!(matches!(check_norm_relation(&psi, &ray, &Ideal::from_int(&k, 3).unwrap()), Err(Error::NotSplit(9))));
        let n = parse_ideal(&k, "(2+2i)(2+i)").unwrap();
        let ray5 = RayClassGroup::new(&k, &n).unwrap();
        let l = parse_ideal(&k, "2-i").unwrap();
        assert!(matches!(check_norm_relation(&psi, &ray5, &l), Err(Error::ModulusViolation(_))));
    }
}

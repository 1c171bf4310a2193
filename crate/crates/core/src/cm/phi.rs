use super::qexp::coefficient;
use crate::arith::rat::{is_prime, rat};
use crate::arith::{Character, FinAbGroup, GroupRingElt, Ring, ToJson};
use crate::error::{Error, Result};
use crate::iqf::{HeckeChar, Ideal, RayClassGroup, Splitting};
use crate::report::Report;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Images of `T'_{n,l}` and `S'_l` in `L[H_n]` for primes `l` up to a bound.
#[derive(Clone, Debug)]
pub struct PhiImage {
    pub group: FinAbGroup,
    pub t: BTreeMap<u64, GroupRingElt>,
    pub s: BTreeMap<u64, GroupRingElt>,
}

impl PhiImage {
    pub fn to_json(&self) -> Value {
        let t: serde_json::Map<String, Value> = self.t.iter().map(|(l, e)| (l.to_string(), e.to_json())).collect();
        let s: serde_json::Map<String, Value> = self.s.iter().map(|(l, e)| (l.to_string(), e.to_json())).collect();
        json!({ "group": self.group.orders, "T": t, "S": s })
    }
}

/// `[a] psi(a)` in `L[H_n]`.
pub fn bracket(psi: &HeckeChar, ray: &RayClassGroup, a: &Ideal) -> Result<GroupRingElt> {
    Ok(GroupRingElt::monomial(ray.group(), &ray.dlog(a)?, psi.eval(a)?))
}

/// `T'_{n,l} -> sum [l] psi(l)` over primes `l` of norm `l` prime to `n`;
/// `S'_l -> [(l)] (omega eps_K)(l)` for `l` prime to `N_n`.
pub fn phi_n(psi: &HeckeChar, ray: &RayClassGroup, bound: u64) -> Result<PhiImage> {
    if psi.is_twisted() || !ray.modulus.is_subset(&psi.conductor) {
        return Err(Error::ModulusMismatch);
    }
    let k = psi.field;
    let g = ray.group().clone();
    let n_level = ray.modulus.norm() * k.disc.unsigned_abs();
    let mut t = BTreeMap::new();
    let mut s = BTreeMap::new();
    for l in (2..=bound).filter(|&l| is_prime(l)) {
        let mut e = GroupRingElt::zero(&g);
        for p in k.primes_above(l).into_iter().filter(|p| p.norm() == l && p.coprime(&ray.modulus)) {
            e = e.add(&bracket(psi, ray, &p)?);
        }
        t.insert(l, e);
        if n_level % l != 0 {
            let li = Ideal::from_int(&k, l as i64)?;
            let c = psi.omega(l as i64)?.scale(&rat(k.epsilon(l)));
            s.insert(l, GroupRingElt::monomial(&g, &ray.dlog(&li)?, c));
        }
    }
    Ok(PhiImage { group: g, t, s })
}

/// The image with `[l]` replaced by `[lbar]` in the first term at the
/// first split prime whose two classes differ.
fn swapped_image(psi: &HeckeChar, ray: &RayClassGroup, img: &PhiImage) -> Result<Option<(u64, PhiImage)>> {
    let k = psi.field;
    for &l in img.t.keys() {
        let Splitting::Split(p, q) = k.split_prime(l) else { continue };
        if !p.coprime(&ray.modulus) || !q.coprime(&ray.modulus) || ray.dlog(&p)? == ray.dlog(&q)? {
            continue;
        }
        let wrong = GroupRingElt::monomial(ray.group(), &ray.dlog(&q)?, psi.eval(&p)?).add(&bracket(psi, ray, &q)?);
        let mut out = img.clone();
        out.t.insert(l, wrong);
        return Ok(Some((l, out)));
    }
    Ok(None)
}

fn compare(img: &PhiImage, tw: &HeckeChar, chi: &Character) -> Result<(Vec<u64>, Vec<u64>)> {
    let mut bad_t = Vec::new();
    let mut bad_s = Vec::new();
    for (&l, t) in &img.t {
        let al = coefficient(tw, l)?;
        let lhs = t.apply_char(chi);
        if lhs != al {
            bad_t.push(l);
        }
        if let Some(s) = img.s.get(&l) {
            // a_{l^2} = a_l^2 - l * chi(phi(S'_l))
            let rhs = al.rmul(&al).rsub(&coefficient(tw, l * l)?);
            if s.apply_char(chi).scale(&rat(l as i64)) != rhs {
                bad_s.push(l);
            }
        }
    }
    Ok((bad_t, bad_s))
}

/// `chi(phi_n(T'_l)) = a_l(g_{psi chi})` and `l chi(phi_n(S'_l)) = a_l^2 -
/// a_{l^2}` for every prime `l <= bound`, the right sides computed from the
/// twisted character.
pub fn check_phi_specialization(
    psi: &HeckeChar,
    ray: &Arc<RayClassGroup>,
    chi: &Character,
    bound: u64,
) -> Result<Report> {
    let img = phi_n(psi, ray, bound)?;
    let tw = psi.twist(ray, chi)?;
    let (bad_t, bad_s) = compare(&img, &tw, chi)?;
    let mut rep = Report::new(&format!("phi-specialization{:?}", chi.exps))
        .param("chi", chi.exps.clone())
        .param("bound", bound);
    rep.check("chi(phi_n(T'_l)) = a_l(g_psi chi)", bad_t.is_empty(), json!({ "primes": img.t.len(), "failures": bad_t }));
    rep.check(
        "l chi(phi_n(S'_l)) = a_l^2 - a_{l^2}",
        bad_s.is_empty(),
        json!({ "primes": img.s.len(), "failures": bad_s }),
    );
    Ok(rep)
}

/// [`check_phi_specialization`] for every character of `H_n`, plus a
/// negative control swapping `l` and `lbar` in one term.
pub fn phi_defining_property(psi: &HeckeChar, ray: &Arc<RayClassGroup>, bound: u64) -> Result<Report> {
    let mut rep = Report::new("phi-defining-property")
        .param("field", psi.field.disc)
        .param("modulus", ray.modulus.to_json())
        .param("group", ray.group().orders.clone())
        .param("bound", bound);
    let chars = ray.group().characters();
    for chi in &chars {
        rep.merge(check_phi_specialization(psi, ray, chi, bound)?);
    }
    let img = phi_n(psi, ray, bound)?;
    match swapped_image(psi, ray, &img)? {
        Some((l, wrong)) => {
            let mut detected = 0;
            for chi in &chars {
                let tw = psi.twist(ray, chi)?;
                let lhs = wrong.t[&l].apply_char(chi);
                if lhs != coefficient(&tw, l)? {
                    detected += 1;
                }
            }
            rep.negative_control(
                "swapping l and lbar in one term is detected",
                detected > 0,
                json!({ "prime": l, "characters_detecting": detected }),
            );
        }
        None => rep = rep.param("swap_control", "classes of l and lbar agree for all l"),
    }
    Ok(rep)
}

//! Left-coset decompositions `K t K = ⊔ g_i K` of spherical double cosets.

use crate::arith::rat::{pow_i, rat, valuation, BigRat};
use crate::error::{Error, Result};
use crate::padic::{cartan_label, coset_key, gsp4_torus, unipotent, CartanLabel, MatQ};
use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

/// `{k * l^v : 0 <= k * l^v < l^s}` for the lower valuation bound `v`.
fn residue_range(prime: u64, s: i64, v: i64) -> Vec<BigRat> {
    if s <= v {
        return vec![rat(0)];
    }
    let step = pow_i(prime, v);
    let count = (prime as i64).pow((s - v) as u32);
    (0..count).map(|k| &step * rat(k)).collect()
}

fn gsp4_candidates(prime: u64, a_lab: i64, b_lab: i64, c: i64, radius: i64) -> Vec<MatQ> {
    let lo = c - a_lab;
    let mut out = Vec::new();
    for f1 in lo..=a_lab {
        for f2 in lo..=a_lab {
            let mut ex = [f1, f2, c - f2, c - f1];
            ex.sort();
            if ex[3] + ex[2] > a_lab + b_lab {
                continue;
            }
            let t = gsp4_torus(prime, f1, f2, c);
            let va = lo - f2.min(c - f1) - radius;
            let vd = lo - (c - f2) - radius;
            let vb = lo - (c - f2) - radius;
            let vc = lo - (c - f1) - radius;
            let ra = residue_range(prime, f1 - f2, va);
            let rd = residue_range(prime, 2 * f2 - c, vd);
            let rb = residue_range(prime, f1 + f2 - c, vb);
            let rc = residue_range(prime, 2 * f1 - c, vc);
            for x in &ra {
                for d in &rd {
                    for b in &rb {
                        for cc in &rc {
                            out.push(unipotent(prime, x, b, cc, d).mul(&t));
                        }
                    }
                }
            }
        }
    }
    out
}

fn gl2_candidates(prime: u64, e1: i64, e2: i64, radius: i64) -> Vec<MatQ> {
    let mut out = Vec::new();
    for f1 in e2..=e1 {
        let f2 = e1 + e2 - f1;
        for x in residue_range(prime, f1, e2 - radius) {
            let mut g = MatQ::diag_pows(prime, &[f1, f2]);
            g.set(0, 1, x);
            out.push(g);
        }
    }
    out
}

/// Representatives in Borel form `n * t` of the left cosets in `K t K`,
/// scanning unipotent coordinates with `radius` extra powers of `l` in the
/// denominators.
pub fn enumerate_cosets(label: CartanLabel, prime: u64, radius: i64) -> Vec<MatQ> {
    let candidates = match label {
        CartanLabel::Gl2 { e1, e2 } => gl2_candidates(prime, e1, e2, radius),
        CartanLabel::Gsp4 { a, b, c } => gsp4_candidates(prime, a, b, c, radius),
    };
    // the smallest elementary divisor is the minimal entry valuation
    let floor = *label.diagonal().iter().min().expect("non-empty label");
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in candidates {
        let least = g.e.iter().filter_map(|x| valuation(x, prime)).min();
        if least != Some(floor) || cartan_label(&g).ok() != Some(label) {
            continue;
        }
        if seen.insert(coset_key(&g)) {
            out.push(g);
        }
    }
    out
}

/// `|K t K / K|` from Macdonald's formula `l^<lambda, 2rho> W(1/l) / W_lambda(1/l)`
/// with `W(t) = (1+t)(1+t+t^2+t^3)` for `GSp_4` and `1+t` for `GL_2`.
pub fn macdonald_degree(label: CartanLabel, prime: u64) -> u64 {
    let q = prime;
    match label {
        CartanLabel::Gl2 { e1, e2 } => {
            if e1 == e2 {
                1
            } else {
                q.pow((e1 - e2 - 1) as u32) * (q + 1)
            }
        }
        CartanLabel::Gsp4 { a, b, c } => {
            let pairing = (4 * a + 2 * b - 3 * c) as u32;
            let walls = (a == b, 2 * b == c);
            // l^n W(1/l)/W_lambda(1/l) as a polynomial in l
            let (quot_deg, factors): (u32, Vec<u64>) = match walls {
                (true, true) => return 1,
                (false, false) => (4, vec![1 + q, 1 + q + q * q + q * q * q]),
                _ => (3, vec![1 + q + q * q + q * q * q]),
            };
            q.pow(pairing - quot_deg) * factors.iter().product::<u64>()
        }
    }
}

/// Complete, duplicate-free left-coset list, certified against
/// [`macdonald_degree`]; a scan with one more power of `l` in the
/// denominators is tried before giving up.
pub fn decompose_double_coset(label: CartanLabel, prime: u64) -> Result<Vec<MatQ>> {
    static CACHE: OnceLock<Mutex<HashMap<(CartanLabel, u64), Vec<MatQ>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(label, prime)) {
        return Ok(v.clone());
    }
    if !label.is_dominant() {
        return Err(Error::InvalidInput(format!("label {label:?} is not dominant")));
    }
    let degree = macdonald_degree(label, prime) as usize;
    let mut reps = enumerate_cosets(label, prime, 0);
    if reps.len() != degree {
        reps = enumerate_cosets(label, prime, 1);
    }
    if reps.len() != degree {
        return Err(Error::InvalidInput(format!(
            "enumeration bound exceeded for {label:?}: {} of {degree} cosets",
            reps.len()
        )));
    }
    cache.lock().unwrap().insert((label, prime), reps.clone());
    Ok(reps)
}

/// Number of left cosets `|K t K / K|` from the enumeration.
pub fn coset_count(label: CartanLabel, prime: u64) -> Result<usize> {
    decompose_double_coset(label, prime).map(|v| v.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{in_integral_group, Side, SubgroupTag};

    #[test]
    fn gl2_t_l() {
        let reps = decompose_double_coset(CartanLabel::Gl2 { e1: 1, e2: 0 }, 3).unwrap();
        assert_eq!(reps.len(), 4);
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                assert_eq!(crate::padic::coset_equal(a, b, SubgroupTag::K, Side::Left), i == j);
            }
        }
    }

    #[test]
    fn central_label_has_one_coset() {
        let s = CartanLabel::Gsp4 { a: 1, b: 1, c: 2 };
        assert_eq!(decompose_double_coset(s, 2).unwrap().len(), 1);
    }

    #[test]
    fn classical_counts() {
        for l in [2u64, 3] {
            let t = CartanLabel::Gsp4 { a: 1, b: 1, c: 1 };
            let r = CartanLabel::Gsp4 { a: 2, b: 1, c: 2 };
            assert_eq!(coset_count(t, l).unwrap() as u64, 1 + l + l * l + l * l * l);
            assert_eq!(coset_count(r, l).unwrap() as u64, l.pow(4) + l.pow(3) + l * l + l);
        }
    }

    #[test]
    fn reps_are_symplectic_and_in_label() {
        let lab = CartanLabel::Gsp4 { a: 2, b: 1, c: 2 };
        for g in decompose_double_coset(lab, 2).unwrap() {
            assert_eq!(cartan_label(&g).unwrap(), lab);
            // right K-translates stay in the same coset
            let k = crate::padic::j_matrix(2);
            assert!(in_integral_group(&g.inv().unwrap().mul(&g.mul(&k))));
        }
    }

    #[test]
    fn wider_scan_adds_nothing() {
        for (lab, l) in [
            (CartanLabel::Gsp4 { a: 1, b: 1, c: 1 }, 3),
            (CartanLabel::Gsp4 { a: 2, b: 1, c: 2 }, 2),
            (CartanLabel::Gsp4 { a: 2, b: 2, c: 2 }, 2),
            (CartanLabel::Gl2 { e1: 3, e2: 0 }, 3),
        ] {
            let n = enumerate_cosets(lab, l, 0).len();
            assert_eq!(enumerate_cosets(lab, l, 1).len(), n);
            assert_eq!(n as u64, macdonald_degree(lab, l));
        }
    }
}

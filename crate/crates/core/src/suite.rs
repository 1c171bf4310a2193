//! The acceptance battery: one report per criterion, each a merge of the
//! module-level reports at the configured primes and fields.

use crate::arith::CycNum;
use crate::cm::{
    check_norm_relation, phi_defining_property, q_expansion, q_l_twist_consistency, verify_eigenform, weight_exponents,
    weight_report, SpinFrobData,
};
use crate::error::{Error, Result};
use crate::gejima::{verify_partition, PartitionConfig};
use crate::hecke::degeneracy::gl2_degeneracy_identities;
use crate::hecke::integrality::{integrality_volume_check, volume_algebra_check};
use crate::hecke::lfactor::{multiplier_grading_check, spin_verbatim_check, verify_nov_factorization};
use crate::hecke::mellin::siegel_section_check;
use crate::hecke::satake::homomorphism_check;
use crate::iqf::{parse_ideal, HeckeChar, Ideal, QuadField, RayClassGroup};
use crate::report::{Report, SCHEMA};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::sync::Arc;

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub quick: bool,
    pub seed: u64,
}

/// Criteria run by [`run`]; determinism of the CLI output is checked
/// outside the library.
pub const LIBRARY_CRITERIA: [u32; 13] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13];

/// Criteria left out of `--quick`.
pub const SLOW_CRITERIA: [u32; 1] = [8];

pub fn title(n: u32) -> &'static str {
    match n {
        1 => "spin Euler factor coefficients verbatim",
        2 => "Satake transform is a homomorphism",
        3 => "Novodvorsky factorization",
        4 => "multiplier grading",
        5 => "degeneracy identities",
        6 => "Siegel-section values and volume algebra",
        7 => "integrality containments and volume",
        8 => "Gejima partition",
        9 => "CM eigenform",
        10 => "phi_n defining property",
        11 => "norm-relation identity",
        12 => "Q_l twist consistency",
        13 => "weight exponents",
        14 => "determinism of suite --quick",
        _ => "unknown",
    }
}

fn primes(cfg: &SuiteConfig, full: &[u64], quick: &[u64]) -> Vec<u64> {
    if cfg.quick { quick } else { full }.to_vec()
}

fn gaussian_psi() -> Result<HeckeChar> {
    let k = QuadField::gaussian();
    HeckeChar::construct(&k, &parse_ideal(&k, "2+2i")?)
}

fn eisenstein_psi() -> Result<HeckeChar> {
    let k = QuadField::eisenstein();
    HeckeChar::construct(&k, &parse_ideal(&k, "3")?)
}

/// Roots of unity `x1, x2` for synthetic Satake data.
pub fn synthetic_roots(rng: &mut ChaCha8Rng) -> (CycNum, CycNum, Value) {
    let orders = [3u64, 4, 5, 6, 8];
    let mut pick = || {
        let m = orders[rng.gen_range(0..orders.len())];
        let k = rng.gen_range(1..m as i64);
        (m, k)
    };
    let (a, b) = (pick(), pick());
    (CycNum::zeta(a.0, a.1), CycNum::zeta(b.0, b.1), json!([format!("zeta_{}^{}", a.0, a.1), format!("zeta_{}^{}", b.0, b.1)]))
}

fn c12(cfg: &SuiteConfig, rep: &mut Report) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let gauss = QuadField::gaussian();
    let eis = QuadField::eisenstein();
    let q31 = eis.primes_above(31).remove(0);
    let configs: Vec<(HeckeChar, Ideal, u64, u64, (i64, i64))> = vec![
        (gaussian_psi()?, parse_ideal(&gauss, "(2+2i)(3+2i)")?, 3, 5, (4, 3)),
        (eisenstein_psi()?, parse_ideal(&eis, "3")?.mul(&q31), 5, 7, (5, 3)),
    ];
    for (psi, n, p, l, (k1, k2)) in configs {
        let ray = RayClassGroup::new(&psi.field, &n)?;
        let (x1, x2, shown) = synthetic_roots(&mut rng);
        let d = SpinFrobData::synthetic(l, k1, k2, x1, x2)?;
        for lp in psi.field.primes_above(l) {
            let mut r = q_l_twist_consistency(&d, &psi, &ray, p, &lp)?;
            r.name = format!("D={} p={p} l={}", psi.field.disc, lp.to_json());
            rep.params.insert(format!("satake_roots D={}", psi.field.disc), shown.clone());
            rep.merge(r);
        }
    }
    Ok(())
}

/// Report for criterion `n`.
pub fn criterion(n: u32, cfg: &SuiteConfig) -> Result<Report> {
    let mut rep = Report::new(&format!("criterion-{n}")).param("title", title(n)).param("quick", cfg.quick);
    match n {
        1 => {
            for l in primes(cfg, &[2, 3, 5], &[2, 3]) {
                rep.merge(spin_verbatim_check(l));
            }
        }
        2 => {
            for l in [2, 3] {
                rep.merge(homomorphism_check(l)?);
            }
        }
        3 => {
            for l in [2, 3] {
                rep.merge(verify_nov_factorization(l, false)?);
                let bad = verify_nov_factorization(l, true)?;
                rep.negative_control(
                    &format!("corrupted lambda at l = {l} leaves a residual"),
                    !bad.pass(),
                    json!({ "failures": bad.failures() }),
                );
            }
        }
        4 => {
            for l in primes(cfg, &[2, 3], &[2]) {
                rep.merge(multiplier_grading_check(l));
            }
        }
        5 => {
            for l in [2, 3] {
                rep.merge(gl2_degeneracy_identities(l));
            }
        }
        6 => {
            for l in primes(cfg, &[2, 3, 5], &[2, 3]) {
                let mut r = siegel_section_check(l)?;
                r.name = format!("siegel-section l={l}");
                rep.merge(r);
                let mut v = volume_algebra_check(l);
                v.name = format!("volume-algebra l={l}");
                rep.merge(v);
            }
        }
        7 => {
            for l in primes(cfg, &[2, 3], &[2]) {
                let mut r = integrality_volume_check(l);
                r.name = format!("integrality l={l}");
                rep.merge(r);
            }
        }
        8 => {
            rep = rep.param("seed", cfg.seed);
            rep.merge(verify_partition(2, 1, PartitionConfig { samples: 200, seed: cfg.seed })?);
        }
        9 => {
            let psi = gaussian_psi()?;
            let (bound, p) = if cfg.quick { (150, 12) } else { (500, 22) };
            let f = q_expansion(&psi, bound)?;
            rep = rep.param("bound", bound).param("level", f.level);
            rep.merge(verify_eigenform(&f, &psi, p)?);
        }
        10 => {
            let psi = gaussian_psi()?;
            let bound = if cfg.quick { 40 } else { 100 };
            for n in ["(2+2i)(3)", "(2+2i)(3+2i)"] {
                let ray = Arc::new(RayClassGroup::new(&psi.field, &parse_ideal(&psi.field, n)?)?);
                let mut r = phi_defining_property(&psi, &ray, bound)?;
                r.name = format!("n={n}");
                rep.merge(r);
            }
        }
        11 => {
            let cases: [(HeckeChar, &[u64]); 2] = [(gaussian_psi()?, &[5, 13, 17]), (eisenstein_psi()?, &[7, 13])];
            for (psi, ls) in cases {
                let ray = RayClassGroup::new(&psi.field, &psi.conductor)?;
                for &l in ls {
                    for lp in psi.field.primes_above(l) {
                        let mut r = check_norm_relation(&psi, &ray, &lp)?;
                        r.name = format!("D={} l={}", psi.field.disc, lp.to_json());
                        rep.merge(r);
                    }
                }
            }
        }
        12 => c12(cfg, &mut rep)?,
        13 => {
            let pairs: Vec<(i64, i64)> = (3..9).flat_map(|k2| (k2..12).map(move |k1| (k1, k2))).collect();
            rep.merge(weight_report(&pairs)?);
            let a = weight_exponents(4, 3)?;
            let b = weight_exponents(3, 3)?;
            rep.check(
                "(4,3) gives {3/2, -1/2}",
                a.v.to_string() == "3/2" && a.v_dual_1.to_string() == "-1/2",
                json!([a.v.to_string(), a.v_dual_1.to_string()]),
            );
            rep.check(
                "(3,3) gives {1, 0}",
                b.v.to_string() == "1" && b.v_dual_1.to_string() == "0",
                json!([b.v.to_string(), b.v_dual_1.to_string()]),
            );
        }
        _ => return Err(Error::InvalidInput(format!("no library criterion {n}"))),
    }
    Ok(rep)
}

/// Runs every library criterion (all but the slow ones with `quick`).
pub fn run(cfg: &SuiteConfig) -> Result<Vec<(u32, Report)>> {
    let mut out = Vec::new();
    for n in LIBRARY_CRITERIA {
        if cfg.quick && SLOW_CRITERIA.contains(&n) {
            continue;
        }
        out.push((n, criterion(n, cfg)?));
    }
    Ok(out)
}

pub fn suite_json(cfg: &SuiteConfig, results: &[(u32, Report)]) -> Value {
    let skipped: Vec<u32> = if cfg.quick { SLOW_CRITERIA.to_vec() } else { vec![] };
    json!({
        "schema": SCHEMA,
        "name": "suite",
        "seed": cfg.seed,
        "quick": cfg.quick,
        "skipped": skipped,
        "pass": results.iter().all(|(_, r)| r.pass()),
        "criteria": results.iter().map(|(n, r)| json!({ "criterion": n, "report": r.to_json() })).collect::<Vec<_>>(),
    })
}

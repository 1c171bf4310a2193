//! Satake transforms on unramified principal series.

use super::algebra::{Group, HeckeOp};
use super::cosets::decompose_double_coset;
use crate::arith::rat::{rat, BigRat};
use crate::arith::{sqrt_pow, Monomial, MultiLaurent, Ring, SqrtPrimeExt};
use crate::error::Result;
use crate::padic::{iwasawa_borel, j_matrix, MatQ};
use crate::report::Report;
use serde_json::json;
use std::collections::BTreeMap;

pub type Poly = MultiLaurent<SqrtPrimeExt>;

/// Torus coordinates in terms of the free exponents: `(e1, e2)` for `GL_2`,
/// `(e1, e2, c)` for `GSp_4` with `t = diag(l^e1, l^e2, l^(c-e2), l^(c-e1))`.
fn diagonal_forms(group: Group) -> Vec<Vec<i64>> {
    match group {
        Group::Gl2 => vec![vec![1, 0], vec![0, 1]],
        Group::Gsp4 => vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, -1, 1], vec![-1, 0, 1]],
    }
}

/// Rank of a rational matrix given as rows.
fn rank(mut rows: Vec<Vec<BigRat>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for j in c..cols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Sum of the positive roots (with multiplicity) as a linear form in the
/// free torus exponents, read off from the torus weights on the strictly
/// upper-triangular part of the Lie algebra.
pub fn two_rho(group: Group) -> Vec<i64> {
    let forms = diagonal_forms(group);
    let n = forms.len();
    let mut groups: BTreeMap<Vec<i64>, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let w: Vec<i64> = forms[i].iter().zip(&forms[j]).map(|(a, b)| a - b).collect();
            groups.entry(w).or_default().push((i, j));
        }
    }
    let mut total = vec![0; forms[0].len()];
    for (w, pos) in groups {
        let mult = match group {
            Group::Gl2 => pos.len(),
            Group::Gsp4 => {
                // X^t J + J X = 0 restricted to X supported on `pos`.
                let jm = j_matrix(2);
                let mut eqs = vec![vec![rat(0); pos.len()]; 16];
                for (u, &(i, j)) in pos.iter().enumerate() {
                    let mut x = MatQ::zero(4, 2);
                    x.set(i, j, rat(1));
                    let m = x.transpose().mul(&jm);
                    let s = jm.mul(&x);
                    for k in 0..16 {
                        eqs[k][u] = &m.e[k] + &s.e[k];
                    }
                }
                pos.len() - rank(eqs)
            }
        };
        for (t, x) in total.iter_mut().zip(&w) {
            *t += mult as i64 * x;
        }
    }
    total
}

fn free_exponents(group: Group, diag: &[i64]) -> Vec<i64> {
    match group {
        Group::Gl2 => vec![diag[0], diag[1]],
        Group::Gsp4 => vec![diag[0], diag[1], diag[0] + diag[3]],
    }
}

pub fn satake_vars(group: Group) -> Vec<&'static str> {
    match group {
        Group::Gl2 => vec!["ynu", "ymu"],
        Group::Gsp4 => vec!["x1", "x2", "x0"],
    }
}

/// `delta_B^{1/2} * chi` evaluated at the torus element with diagonal
/// exponents `diag`.
pub fn torus_value(group: Group, prime: u64, diag: &[i64]) -> Poly {
    let e = free_exponents(group, diag);
    let rho2 = two_rho(group);
    let pairing: i64 = rho2.iter().zip(&e).map(|(a, b)| a * b).sum();
    let mut m = Monomial::new();
    for (v, x) in satake_vars(group).iter().zip(&e) {
        if *x != 0 {
            m.insert(v.to_string(), *x);
        }
    }
    Poly::term(m, sqrt_pow(prime, -pairing))
}

/// Eigenvalue of `op` on the spherical vector of the unramified principal
/// series, as a Laurent polynomial in the Satake variables.
pub fn ps_eigenvalue(op: &HeckeOp) -> Result<Poly> {
    let mut out = Poly::zero();
    for (label, c) in &op.terms {
        let reps = decompose_double_coset(*label, op.prime)?;
        out = out.add(&eigen_from_reps(op.group, op.prime, &reps).scale(&SqrtPrimeExt::from_rat(c)));
    }
    Ok(out)
}

/// Sum of `delta^{1/2} chi` over the torus parts of the given left-coset
/// representatives.
pub fn eigen_from_reps(group: Group, prime: u64, reps: &[MatQ]) -> Poly {
    let mut out = Poly::zero();
    for g in reps {
        out = out.add(&torus_value(group, prime, &iwasawa_borel(g).t));
    }
    out
}

fn rename(p: &Poly, from: &str, to: &str) -> Poly {
    p.subst(from, &Poly::var(to)).expect("renaming a variable")
}

/// `x1 <-> x2`.
pub fn weyl_swap(p: &Poly) -> Poly {
    let q = rename(p, "x1", "_t");
    let q = rename(&q, "x2", "x1");
    rename(&q, "_t", "x2")
}

/// `x1 -> x1^{-1}`, `x0 -> x0 x1`.
pub fn weyl_invert(p: &Poly) -> Poly {
    let q = p.subst("x0", &Poly::var("x0").mul(&Poly::var("_t"))).unwrap();
    let q = q.subst("x1", &Poly::var_pow("x1", -1)).unwrap();
    rename(&q, "_t", "x1")
}

/// `ynu <-> ymu`.
pub fn gl2_swap(p: &Poly) -> Poly {
    let q = rename(p, "ynu", "_t");
    let q = rename(&q, "ymu", "ynu");
    rename(&q, "_t", "ymu")
}

/// `ps_eigenvalue(a * b) = ps_eigenvalue(a) ps_eigenvalue(b)` for every
/// unordered pair of `{T, R, S}` in `GSp_4` and of `{T, S}` in `GL_2`. The
/// control drops the leading label of `T * T`.
pub fn homomorphism_check(prime: u64) -> Result<Report> {
    let mut rep = Report::new("satake-homomorphism").param("prime", prime);
    let families = [
        vec![("T", HeckeOp::t_op(prime)), ("R", HeckeOp::r_op(prime)), ("S", HeckeOp::s_op(prime))],
        vec![("T_gl2", HeckeOp::gl2_t(prime)), ("S_gl2", HeckeOp::gl2_s(prime))],
    ];
    for ops in &families {
        for i in 0..ops.len() {
            for j in i..ops.len() {
                let (na, a) = &ops[i];
                let (nb, b) = &ops[j];
                let ab = a.convolve(b)?;
                let ok = ps_eigenvalue(&ab)? == ps_eigenvalue(a)?.mul(&ps_eigenvalue(b)?);
                rep.check(&format!("Theta({na} * {nb}) = Theta({na}) Theta({nb})"), ok, json!({ "product": ab.to_json() }));
            }
        }
    }
    let t = HeckeOp::t_op(prime);
    let mut broken = t.convolve(&t)?;
    let top = *broken.terms.keys().next_back().expect("T * T is non-zero");
    broken.terms.remove(&top);
    let lhs = ps_eigenvalue(&broken)?;
    let rhs = ps_eigenvalue(&t)?.pow(2);
    rep.negative_control("T * T with a label dropped is detected", lhs != rhs, json!({ "dropped": top.to_json() }));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Poly {
        Poly::var(name)
    }

    #[test]
    fn positive_root_sums() {
        assert_eq!(two_rho(Group::Gl2), vec![1, -1]);
        assert_eq!(two_rho(Group::Gsp4), vec![4, 2, -3]);
    }

    #[test]
    fn basic_eigenvalues() {
        let l = 3;
        assert_eq!(ps_eigenvalue(&HeckeOp::identity(Group::Gsp4, l)).unwrap(), Poly::one());
        let s = ps_eigenvalue(&HeckeOp::s_op(l)).unwrap();
        assert_eq!(s, v("x1").mul(&v("x2")).mul(&v("x0").pow(2)));
        let t = ps_eigenvalue(&HeckeOp::gl2_t(l)).unwrap();
        // oracle: the l + 1 cosets diag(1, l) and [[l, x], [0, 1]] by hand
        let half: SqrtPrimeExt = sqrt_pow(l, 1);
        assert_eq!(t, v("ynu").add(&v("ymu")).scale(&half));
        let big_t = ps_eigenvalue(&HeckeOp::t_op(l)).unwrap();
        let x0 = v("x0");
        let expect = x0
            .add(&x0.mul(&v("x1")))
            .add(&x0.mul(&v("x2")))
            .add(&x0.mul(&v("x1")).mul(&v("x2")))
            .scale(&sqrt_pow(l, 3));
        assert_eq!(big_t, expect);
    }

    #[test]
    fn weyl_invariance() {
        for op in [HeckeOp::t_op(2), HeckeOp::r_op(2), HeckeOp::s_op(2)] {
            let e = ps_eigenvalue(&op).unwrap();
            assert_eq!(weyl_swap(&e), e);
            assert_eq!(weyl_invert(&e), e);
        }
        let t = ps_eigenvalue(&HeckeOp::gl2_t(5)).unwrap();
        assert_eq!(gl2_swap(&t), t);
    }

    #[test]
    fn homomorphism_report() {
        let rep = homomorphism_check(2).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
        assert_eq!(rep.checks.len(), 10);
    }
}

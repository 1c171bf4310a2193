//! Coset identities for the degeneracy maps `GL_2(Q_l)/K_1(l) -> GL_2(Q_l)/K`.
//!
//! Vectors are formal integer combinations of left cosets `g K_1(l)` with
//! `GL_2(Q_l)` acting by left multiplication.

use super::cosets::decompose_double_coset;
use crate::arith::rat::{frac, residue};
use crate::padic::{coset_equal, coset_key, CartanLabel, MatQ, Side, SubgroupTag};
use crate::report::Report;
use num_bigint::BigInt;
use serde_json::json;
use std::collections::BTreeMap;

type Key = (MatQ, Vec<BigInt>);

/// Canonical label of `g K_1(l)`: the `GL_2(Z_l)`-coset key `h` of `g`
/// together with the bottom row of `g^{-1} h` modulo `l`, which indexes
/// `K / K_1(l)`.
fn key1(g: &MatQ) -> Key {
    let h = coset_key(g);
    let k = g.inv().expect("singular").mul(&h);
    let l = g.prime;
    (h, vec![residue(k.get(1, 0), l, 1), residue(k.get(1, 1), l, 1)])
}

#[derive(Clone, Debug, Default)]
pub struct CosetSum {
    terms: BTreeMap<Key, (MatQ, i64)>,
}

impl PartialEq for CosetSum {
    fn eq(&self, o: &Self) -> bool {
        self.terms.len() == o.terms.len() && self.terms.iter().all(|(k, (_, c))| o.terms.get(k).is_some_and(|(_, d)| c == d))
    }
}

impl CosetSum {
    pub fn single(g: &MatQ) -> Self {
        let mut s = Self::default();
        s.push(g, 1);
        s
    }

    fn push(&mut self, g: &MatQ, c: i64) {
        let e = self.terms.entry(key1(g)).or_insert_with(|| (g.clone(), 0));
        e.1 += c;
        if e.1 == 0 {
            self.terms.remove(&key1(g));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (g, c) in o.terms.values() {
            s.push(g, *c);
        }
        s
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut s = Self::default();
        for (g, d) in self.terms.values() {
            s.push(g, c * d);
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn translate(&self, g: &MatQ) -> Self {
        let mut s = Self::default();
        for (h, c) in self.terms.values() {
            s.push(&g.mul(h), *c);
        }
        s
    }

    /// `sum_i a_i . self`.
    pub fn act(&self, reps: &[MatQ]) -> Self {
        reps.iter().fold(Self::default(), |acc, a| acc.add(&self.translate(a)))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.terms.values().map(|(_, c)| c).sum()
    }
}

fn m(l: u64, a: i64, b: i64, c: i64, d: i64) -> MatQ {
    MatQ::from_ints(l, &[&[a, b], &[c, d]])
}

/// Lifts of `K_1(l)` modulo `l^2`.
fn k1_lifts(l: u64) -> Vec<MatQ> {
    let l = l as i64;
    let q = l * l;
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in (0..q).step_by(l as usize) {
                for d in (1..q).step_by(l as usize) {
                    if (a * d - b * c).rem_euclid(l) != 0 {
                        out.push(m(l as u64, a, b, c, d));
                    }
                }
            }
        }
    }
    out
}

/// Lifts of `GL_2(Z/l)`.
fn k_lifts(l: u64) -> Vec<MatQ> {
    let li = l as i64;
    let mut out = Vec::new();
    for a in 0..li {
        for b in 0..li {
            for c in 0..li {
                for d in 0..li {
                    if (a * d - b * c).rem_euclid(li) != 0 {
                        out.push(m(l, a, b, c, d));
                    }
                }
            }
        }
    }
    out
}

/// Distinct `x K_1(l)` among `{ f(k) }`.
fn distinct_by_key1(ks: &[MatQ], f: impl Fn(&MatQ) -> MatQ) -> Vec<MatQ> {
    let mut seen = BTreeMap::new();
    for k in ks {
        let x = f(k);
        seen.entry(key1(&x)).or_insert(x);
    }
    seen.into_values().collect()
}

struct Operators {
    prime: u64,
    s_prime: MatQ,
    t_level: Vec<MatQ>,
    t_full: Vec<MatQ>,
    pr1: Vec<MatQ>,
    pr2: Vec<MatQ>,
}

impl Operators {
    fn new(l: u64) -> Self {
        let t = m(l, 1, 0, 0, l as i64);
        let t_inv = t.inv().unwrap();
        let k1 = k1_lifts(l);
        let k = k_lifts(l);
        let t_level = distinct_by_key1(&k1, |x| x.mul(&t));
        let pr1 = distinct_by_key1(&k, |x| x.clone());
        // k t^{-1} K_1 t  <->  k t^{-1} K_1, then translate by diag(l, 1) = l t^{-1}
        let pr2 = distinct_by_key1(&k, |x| x.mul(&t_inv)).into_iter().map(|x| x.mul(&t).mul(&m(l, l as i64, 0, 0, 1))).collect();
        let t_full = decompose_double_coset(CartanLabel::Gl2 { e1: 1, e2: 0 }, l).expect("GL_2 cosets");
        let s_prime = MatQ::diag(l, &[frac(1, l as i64), frac(1, l as i64)]);
        Operators { prime: l, s_prime, t_level, t_full, pr1, pr2 }
    }

    fn t_level_prime(&self, x: &CosetSum) -> CosetSum {
        x.act(&self.t_level).translate(&self.s_prime)
    }

    fn t_full_prime(&self, x: &CosetSum) -> CosetSum {
        x.act(&self.t_full).translate(&self.s_prime)
    }

    fn pr1(&self, x: &CosetSum) -> CosetSum {
        x.act(&self.pr1)
    }

    fn pr2(&self, x: &CosetSum) -> CosetSum {
        x.act(&self.pr2)
    }

    fn s_prime_pr2(&self, x: &CosetSum) -> CosetSum {
        self.pr2(x).translate(&self.s_prime)
    }

    /// `K_1(l)`-invariant test vectors: the orbit sums of `K_1`, `t_l K_1`
    /// and `diag(l, 1) K_1`.
    fn test_vectors(&self) -> Vec<(&'static str, CosetSum)> {
        let l = self.prime;
        let k1 = k1_lifts(l);
        let orbit = |g: &MatQ| {
            distinct_by_key1(&k1, |k| k.mul(g)).iter().fold(CosetSum::default(), |acc, h| acc.add(&CosetSum::single(h)))
        };
        vec![
            ("K1", CosetSum::single(&MatQ::identity(2, l))),
            ("K1 t K1", orbit(&m(l, 1, 0, 0, l as i64))),
            ("K1 diag(l,1) K1", orbit(&m(l, l as i64, 0, 0, 1))),
        ]
    }
}

/// Number of distinct cosets `k (K_1 ∩ t^{-1} K_1 t)` for `k` in `K_1(l)`.
pub fn level_index(l: u64) -> usize {
    let t_inv = m(l, 1, 0, 0, l as i64).inv().unwrap();
    distinct_by_key1(&k1_lifts(l), |k| k.mul(&t_inv)).len()
}

/// The system `{[[1,0],[v,1]] : v mod l} ∪ {[[0,1],[1,0]]}` for `K/K_0(l)`.
pub fn k0_system(l: u64) -> Vec<MatQ> {
    let mut out: Vec<MatQ> = (0..l as i64).map(|v| m(l, 1, 0, v, 1)).collect();
    out.push(m(l, 0, 1, 1, 0));
    out
}

pub fn gl2_degeneracy_identities(l: u64) -> Report {
    let ops = Operators::new(l);
    let mut rep = Report::new("gl2_degeneracy_identities").param("prime", l);
    rep.check("level T has l cosets", ops.t_level.len() == l as usize, json!(ops.t_level.len()));
    rep.check("|K/K1(l)| = l^2 - 1", ops.pr1.len() == (l * l - 1) as usize, json!(ops.pr1.len()));
    rep.check("|K/t^-1 K1 t| = l^2 - 1", ops.pr2.len() == (l * l - 1) as usize, json!(ops.pr2.len()));
    let idx = level_index(l);
    rep.check("[K1 : K1 ∩ t^-1 K1 t] = l", idx == l as usize, json!(idx));

    let sys = k0_system(l);
    let distinct = sys
        .iter()
        .enumerate()
        .all(|(i, a)| sys[i + 1..].iter().all(|b| !coset_equal(a, b, SubgroupTag::K0(1), Side::Left)));
    let k0_count = distinct_by_key1(&k_lifts(l), |k| k.clone())
        .iter()
        .fold(Vec::<MatQ>::new(), |mut acc, k| {
            if !acc.iter().any(|a| coset_equal(a, k, SubgroupTag::K0(1), Side::Left)) {
                acc.push(k.clone());
            }
            acc
        })
        .len();
    rep.check(
        "K/K0(l) system complete and irredundant",
        distinct && sys.len() == l as usize + 1 && k0_count == sys.len(),
        json!({ "size": sys.len(), "index": k0_count }),
    );

    for (name, x) in ops.test_vectors() {
        let lhs13 = ops.pr1(&ops.t_level_prime(&x));
        let rhs13 = ops.t_full_prime(&ops.pr1(&x)).sub(&ops.s_prime_pr2(&x));
        rep.check(
            &format!("pr1 T' = T' pr1 - S' pr2 on {name}"),
            lhs13 == rhs13,
            json!({ "lhs_cosets": lhs13.len(), "rhs_cosets": rhs13.len(), "lhs_mass": lhs13.total() }),
        );
        let naive = ops.t_full_prime(&ops.pr1(&x));
        rep.negative_control(&format!("dropping S' pr2 breaks the identity on {name}"), lhs13 != naive, json!(null));
        let lhs14 = ops.pr2(&ops.t_level_prime(&x));
        let rhs14 = ops.pr1(&x).scale(l as i64);
        rep.check(
            &format!("pr2 T' = l pr1 on {name}"),
            lhs14 == rhs14,
            json!({ "lhs_mass": lhs14.total(), "rhs_mass": rhs14.total() }),
        );
    }
    rep
}

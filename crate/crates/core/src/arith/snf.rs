//! Smith normal form over the integers and finite abelian groups presented by
//! generators and relations.

use super::finab::FinAbGroup;
use std::collections::HashMap;
use std::hash::Hash;

pub type IMat = Vec<Vec<i128>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// Returns `(d, u, v)` with `u * a * v = diag(d)` and `d[i] | d[i+1]`.
pub fn smith(a: &IMat, cols: usize) -> (Vec<i128>, IMat, IMat) {
    let rows = a.len();
    let mut a = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (diag(&a, n), u, v);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    for j in 0..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= q * u[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for i in 0..rows {
                        a[i][j] -= q * a[i][t];
                    }
                    for i in 0..cols {
                        v[i][j] -= q * v[i][t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in 0..cols {
                        a[t][j] += a[i][j];
                    }
                    for j in 0..rows {
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
    }
    (diag(&a, n), u, v)
}

fn diag(a: &IMat, n: usize) -> Vec<i128> {
    (0..n).map(|i| a[i][i]).collect()
}

/// A finite abelian group `Z^n / rowspan(relations)` with the coordinate
/// change to its invariant-factor decomposition.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FinAbGroup,
    /// Column transform; a word `x` maps to `x * v`.
    v: IMat,
    /// Indices of the columns of `x * v` that carry non-trivial factors.
    keep: Vec<usize>,
}

impl Presentation {
    /// `None` if the presented group is infinite.
    pub fn new(ngens: usize, relations: &[Vec<i128>], label: &str) -> Option<Self> {
        let mut rel: IMat = relations.to_vec();
        if rel.is_empty() {
            rel.push(vec![0; ngens]);
        }
        if ngens == 0 {
            return Some(Presentation { group: FinAbGroup::trivial(), v: vec![], keep: vec![] });
        }
        let (d, _, v) = smith(&rel, ngens);
        let mut d = d;
        d.resize(ngens, 0);
        if d.iter().any(|&x| x == 0) {
            return None;
        }
        let keep: Vec<usize> = (0..ngens).filter(|&i| d[i] > 1).collect();
        let orders = keep.iter().map(|&i| d[i] as u64).collect();
        let labels = (0..keep.len()).map(|i| format!("{label}{i}")).collect();
        Some(Presentation { group: FinAbGroup { orders, labels }, v, keep })
    }

    /// Normal-form coordinates of the word `x`.
    pub fn dlog(&self, x: &[i128]) -> Vec<i64> {
        self.keep
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                let s: i128 = x.iter().zip(&self.v).map(|(a, row)| a * row[i]).sum();
                s.rem_euclid(self.group.orders[k] as i128) as i64
            })
            .collect()
    }
}

/// Structure of the finite abelian group generated by `gens`, computed by
/// adjoining generators one at a time and recording the first power of each
/// new generator that falls into the subgroup already built.
#[derive(Clone)]
pub struct GeneratedGroup<E> {
    pub presentation: Presentation,
    pub gens: Vec<E>,
    words: HashMap<E, Vec<i128>>,
}

impl<E: Clone + Eq + Hash> GeneratedGroup<E> {
    pub fn build(identity: E, gens: &[E], op: impl Fn(&E, &E) -> E, label: &str) -> Self {
        let mut words: HashMap<E, Vec<i128>> = HashMap::new();
        words.insert(identity.clone(), vec![]);
        let mut used: Vec<E> = Vec::new();
        let mut relations: Vec<Vec<i128>> = Vec::new();
        for g in gens {
            if words.contains_key(g) {
                continue;
            }
            let k = used.len();
            let elems: Vec<(E, Vec<i128>)> = words.iter().map(|(e, w)| (e.clone(), w.clone())).collect();
            let mut power = g.clone();
            let mut j: i128 = 1;
            let mut layers: Vec<(E, Vec<i128>)> = Vec::new();
            while !words.contains_key(&power) {
                for (e, w) in &elems {
                    let mut w2 = w.clone();
                    w2.resize(k, 0);
                    w2.push(j);
                    layers.push((op(e, &power), w2));
                }
                power = op(&power, g);
                j += 1;
            }
            let mut rel = words[&power].clone();
            rel.resize(k + 1, 0);
            for x in rel.iter_mut() {
                *x = -*x;
            }
            rel[k] += j;
            relations.push(rel);
            for (e, w) in layers {
                words.insert(e, w);
            }
            used.push(g.clone());
        }
        let n = used.len();
        for r in relations.iter_mut() {
            r.resize(n, 0);
        }
        for w in words.values_mut() {
            w.resize(n, 0);
        }
        let presentation = Presentation::new(n, &relations, label).expect("finite group");
        GeneratedGroup { presentation, gens: used, words }
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.words.contains_key(e)
    }

    /// Word in the adjoined generators, if `e` lies in the group.
    pub fn word(&self, e: &E) -> Option<&Vec<i128>> {
        self.words.get(e)
    }

    pub fn dlog(&self, e: &E) -> Option<Vec<i64>> {
        self.words.get(e).map(|w| self.presentation.dlog(w))
    }

    pub fn elements(&self) -> impl Iterator<Item = &E> {
        self.words.keys()
    }
}

use super::{multiplier, MatQ};
use crate::arith::rat::{valuation, BigRat};
use crate::error::{Error, Result};
use serde_json::{json, Value};

/// Double-coset label `K t K` for the spherical Hecke algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanLabel {
    /// `diag(l^e1, l^e2)` with `e1 >= e2`.
    Gl2 { e1: i64, e2: i64 },
    /// `diag(l^a, l^b, l^(c-b), l^(c-a))` with `a >= b >= c - b`.
    Gsp4 { a: i64, b: i64, c: i64 },
}

impl CartanLabel {
    pub fn diagonal(&self) -> Vec<i64> {
        match *self {
            CartanLabel::Gl2 { e1, e2 } => vec![e1, e2],
            CartanLabel::Gsp4 { a, b, c } => vec![a, b, c - b, c - a],
        }
    }

    pub fn representative(&self, prime: u64) -> MatQ {
        MatQ::diag_pows(prime, &self.diagonal())
    }

    pub fn size(&self) -> usize {
        match self {
            CartanLabel::Gl2 { .. } => 2,
            CartanLabel::Gsp4 { .. } => 4,
        }
    }

    /// Label of the double coset of `g^{-1}` for `g` in this one.
    pub fn inverse(&self) -> CartanLabel {
        match *self {
            CartanLabel::Gl2 { e1, e2 } => CartanLabel::Gl2 { e1: -e2, e2: -e1 },
            CartanLabel::Gsp4 { a, b, c } => CartanLabel::Gsp4 { a: a - c, b: b - c, c: -c },
        }
    }

    /// Product with the central element `l^m`.
    pub fn shift(&self, m: i64) -> CartanLabel {
        match *self {
            CartanLabel::Gl2 { e1, e2 } => CartanLabel::Gl2 { e1: e1 + m, e2: e2 + m },
            CartanLabel::Gsp4 { a, b, c } => CartanLabel::Gsp4 { a: a + m, b: b + m, c: c + 2 * m },
        }
    }

    pub fn to_json(&self) -> Value {
        match *self {
            CartanLabel::Gl2 { e1, e2 } => json!([e1, e2]),
            CartanLabel::Gsp4 { a, b, c } => json!([a, b, c]),
        }
    }

    pub fn is_dominant(&self) -> bool {
        match *self {
            CartanLabel::Gl2 { e1, e2 } => e1 >= e2,
            CartanLabel::Gsp4 { a, b, c } => a >= b && 2 * b >= c,
        }
    }
}

/// Elementary-divisor valuations over `Z_(l)`, ascending, by elimination with
/// minimal-valuation pivots.
pub fn smith_invariants(g: &MatQ) -> Vec<i64> {
    let n = g.n;
    let p = g.prime;
    let mut a: Vec<Vec<BigRat>> = (0..n).map(|i| (0..n).map(|j| g.get(i, j).clone()).collect()).collect();
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        let mut best: Option<(usize, usize, i64)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if let Some(v) = valuation(x, p) {
                    if best.map_or(true, |(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let (pi, pj, v) = best.expect("singular matrix");
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        out.push(v);
        let piv = a[t][t].clone();
        for i in t + 1..n {
            if valuation(&a[i][t], p).is_none() {
                continue;
            }
            let f = &a[i][t] / &piv;
            for j in t..n {
                let x = &a[t][j] * &f;
                a[i][j] -= x;
            }
        }
        for j in t + 1..n {
            a[t][j] = BigRat::from_integer(0.into());
        }
    }
    out.sort();
    out
}

fn minors(a: &[Vec<BigRat>], k: usize) -> Vec<BigRat> {
    let n = a.len();
    let subsets: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let mut out = Vec::new();
    for rows in &subsets {
        for cols in &subsets {
            let sub: Vec<BigRat> = rows.iter().flat_map(|&r| cols.iter().map(move |&c| a[r][c].clone())).collect();
            out.push(MatQ::from_rats(2, k, sub).det());
        }
    }
    out
}

/// Elementary-divisor valuations from the determinantal divisors
/// `d_k = min v(k x k minors)`; an independent route to [`smith_invariants`].
pub fn smith_invariants_minors(g: &MatQ) -> Vec<i64> {
    let n = g.n;
    let a: Vec<Vec<BigRat>> = (0..n).map(|i| (0..n).map(|j| g.get(i, j).clone()).collect()).collect();
    let mut prev = 0;
    let mut out = Vec::new();
    for k in 1..=n {
        let dk = minors(&a, k).iter().filter_map(|m| valuation(m, g.prime)).min().expect("singular matrix");
        out.push(dk - prev);
        prev = dk;
    }
    out
}

/// Cartan label of `g` in `GL_2` or `GSp_4`.
pub fn cartan_label(g: &MatQ) -> Result<CartanLabel> {
    let s = smith_invariants(g);
    match g.n {
        2 => Ok(CartanLabel::Gl2 { e1: s[1], e2: s[0] }),
        4 => {
            let mu = multiplier(g)?;
            let c = valuation(&mu, g.prime).expect("nonzero multiplier");
            let (a, b) = (s[3], s[2]);
            if s[0] != c - a || s[1] != c - b {
                return Err(Error::InvalidInput(format!("inconsistent invariants {s:?} for multiplier valuation {c}")));
            }
            Ok(CartanLabel::Gsp4 { a, b, c })
        }
        _ => Err(Error::InvalidInput("cartan label needs size 2 or 4".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{random_gsp4_integral, MatQ};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_examples() {
        assert_eq!(smith_invariants(&MatQ::diag_pows(3, &[1, 0])), vec![0, 1]);
        assert_eq!(smith_invariants(&MatQ::diag_pows(3, &[2, 1, 1, 0])), vec![0, 1, 1, 2]);
        let l = 2;
        assert_eq!(cartan_label(&MatQ::diag_pows(l, &[1, 1, 0, 0])).unwrap(), CartanLabel::Gsp4 { a: 1, b: 1, c: 1 });
        let t = MatQ::diag_pows(l, &[2, 1, 2 - 1, 2 - 2]);
        assert_eq!(cartan_label(&t).unwrap(), CartanLabel::Gsp4 { a: 2, b: 1, c: 2 });
    }

    #[test]
    fn invariants_under_integral_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for l in [2u64, 3] {
            let t = MatQ::diag_pows(l, &[3, 2, 1, 0]);
            let t2 = MatQ::diag_pows(l, &[2, 1, 1, 0]);
            for _ in 0..20 {
                let k1 = random_gsp4_integral(l, &mut rng, 6);
                let k2 = random_gsp4_integral(l, &mut rng, 6);
                let g = k1.mul(&t).mul(&k2);
                assert_eq!(cartan_label(&g).unwrap(), CartanLabel::Gsp4 { a: 3, b: 2, c: 3 });
                assert_eq!(smith_invariants_minors(&g), smith_invariants(&g));
                let g2 = k1.mul(&t2).mul(&k2);
                assert_eq!(smith_invariants(&g2), vec![0, 1, 1, 2]);
            }
        }
    }
}

//! Matrices over `Q` viewed inside `GL_2(Q_l)` and `GSp_4(Q_l)`.

mod iwasawa;
mod smith;

pub use iwasawa::{coset_key, iwasawa_borel, Iwasawa};
pub use smith::{cartan_label, smith_invariants, smith_invariants_minors, CartanLabel};

use crate::arith::rat::{is_integral_at, is_unit_at, pow_i, rat, residue, valuation, BigRat};
use crate::arith::Ring;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Square matrix with rational entries, tied to a prime `l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatQ {
    pub n: usize,
    pub prime: u64,
    pub e: Vec<BigRat>,
}

impl MatQ {
    pub fn zero(n: usize, prime: u64) -> Self {
        MatQ { n, prime, e: vec![rat(0); n * n] }
    }

    pub fn identity(n: usize, prime: u64) -> Self {
        let mut m = Self::zero(n, prime);
        for i in 0..n {
            m.e[i * n + i] = rat(1);
        }
        m
    }

    pub fn from_ints(prime: u64, rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let e = rows.iter().flat_map(|r| r.iter().map(|&x| rat(x))).collect();
        MatQ { n, prime, e }
    }

    pub fn from_rats(prime: u64, n: usize, e: Vec<BigRat>) -> Self {
        assert_eq!(e.len(), n * n);
        MatQ { n, prime, e }
    }

    /// `diag(l^e_1, ..., l^e_n)`.
    pub fn diag_pows(prime: u64, exps: &[i64]) -> Self {
        let n = exps.len();
        let mut m = Self::zero(n, prime);
        for (i, &x) in exps.iter().enumerate() {
            m.e[i * n + i] = pow_i(prime, x);
        }
        m
    }

    pub fn diag(prime: u64, d: &[BigRat]) -> Self {
        let n = d.len();
        let mut m = Self::zero(n, prime);
        for (i, x) in d.iter().enumerate() {
            m.e[i * n + i] = x.clone();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRat {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRat) {
        self.e[i * self.n + j] = x;
    }

    pub fn mul(&self, o: &MatQ) -> MatQ {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = Self::zero(n, self.prime);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.e[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRat) -> MatQ {
        MatQ { n: self.n, prime: self.prime, e: self.e.iter().map(|x| x * c).collect() }
    }

    pub fn transpose(&self) -> MatQ {
        let n = self.n;
        let mut out = Self::zero(n, self.prime);
        for i in 0..n {
            for j in 0..n {
                out.e[j * n + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn det(&self) -> BigRat {
        let (_, d) = self.inverse_and_det();
        d
    }

    pub fn inv(&self) -> Option<MatQ> {
        self.inverse_and_det().0
    }

    fn inverse_and_det(&self) -> (Option<MatQ>, BigRat) {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n, self.prime);
        let mut det = rat(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return (None, rat(0));
            };
            if p != c {
                for j in 0..n {
                    a.e.swap(p * n + j, c * n + j);
                    inv.e.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            let pinv = piv.recip();
            for j in 0..n {
                a.e[c * n + j] *= &pinv;
                inv.e[c * n + j] *= &pinv;
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    let t = a.get(c, j) * &f;
                    a.e[r * n + j] -= t;
                    let t = inv.get(c, j) * &f;
                    inv.e[r * n + j] -= t;
                }
            }
        }
        (Some(inv), det)
    }

    pub fn is_integral(&self) -> bool {
        self.e.iter().all(|x| is_integral_at(x, self.prime))
    }

    /// Minimal valuation of the entries; `None` for the zero matrix.
    pub fn min_valuation(&self) -> Option<i64> {
        self.e.iter().filter_map(|x| valuation(x, self.prime)).min()
    }

    /// Row-major array of `"p/q"` strings plus the prime.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> =
            (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect()).collect();
        json!({ "prime": self.prime, "rows": rows })
    }
}

/// The alternating form of the matrix model.
pub fn j_matrix(prime: u64) -> MatQ {
    MatQ::from_ints(prime, &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[-1, 0, 0, 0]])
}

/// `mu(g)` with `g^t J g = mu(g) J`.
pub fn multiplier(g: &MatQ) -> Result<BigRat> {
    if g.n != 4 {
        return Err(Error::InvalidInput("multiplier needs a 4x4 matrix".into()));
    }
    let j = j_matrix(g.prime);
    let form = g.transpose().mul(&j).mul(g);
    let mu = form.get(0, 3).clone();
    if mu.is_zero() || form != j.scale(&mu) {
        return Err(Error::NotInGroup("not a symplectic similitude".into()));
    }
    Ok(mu)
}

/// `iota(h1, h2)`: `h1` acts on the outer coordinates 1,4 and `h2` on 2,3.
pub fn embed_iota(h1: &MatQ, h2: &MatQ) -> Result<MatQ> {
    if h1.n != 2 || h2.n != 2 {
        return Err(Error::InvalidInput("iota takes two 2x2 matrices".into()));
    }
    if h1.det() != h2.det() {
        return Err(Error::NotInGroup("determinant mismatch".into()));
    }
    let mut g = MatQ::zero(4, h1.prime);
    let outer = [0, 3];
    let inner = [1, 2];
    for a in 0..2 {
        for b in 0..2 {
            g.set(outer[a], outer[b], h1.get(a, b).clone());
            g.set(inner[a], inner[b], h2.get(a, b).clone());
        }
    }
    Ok(g)
}

/// Inverse of [`embed_iota`] on its image.
pub fn split_iota(g: &MatQ) -> Option<(MatQ, MatQ)> {
    let outer = [0, 3];
    let inner = [1, 2];
    for i in 0..4 {
        for j in 0..4 {
            let same_block = (outer.contains(&i) && outer.contains(&j)) || (inner.contains(&i) && inner.contains(&j));
            if !same_block && !g.get(i, j).is_zero() {
                return None;
            }
        }
    }
    let pick = |idx: [usize; 2]| {
        let e = vec![
            g.get(idx[0], idx[0]).clone(),
            g.get(idx[0], idx[1]).clone(),
            g.get(idx[1], idx[0]).clone(),
            g.get(idx[1], idx[1]).clone(),
        ];
        MatQ::from_rats(g.prime, 2, e)
    };
    Some((pick(outer), pick(inner)))
}

/// Congruence subgroups and integral points used by the Hecke computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupTag {
    /// `GL_2(Z_l)` or `GSp_4(Z_l)`.
    K,
    /// `[[*, *], [0, 1]] mod l^e`.
    K1(u32),
    /// `[[1, *], [0, *]] mod l^e`.
    K1Upper(u32),
    /// `[[*, *], [0, *]] mod l^e`.
    K0(u32),
    /// `Iw(l^e) ∩ SL_2`: lower-left divisible by `l^e`, determinant 1.
    IwSl2(u32),
    /// Points of `iota(H(Z_l))` inside `GSp_4`.
    H,
}

fn divisible(x: &BigRat, p: u64, e: u32) -> bool {
    valuation(x, p).map_or(true, |v| v >= e as i64)
}

fn congruent_one(x: &BigRat, p: u64, e: u32) -> bool {
    divisible(&(x - rat(1)), p, e)
}

/// Membership in the integral group: integral entries and a unit multiplier
/// (resp. unit determinant).
pub fn in_integral_group(g: &MatQ) -> bool {
    if !g.is_integral() {
        return false;
    }
    if g.n == 4 {
        matches!(multiplier(g), Ok(mu) if is_unit_at(&mu, g.prime))
    } else {
        is_unit_at(&g.det(), g.prime)
    }
}

/// `(mu(g) or det(g), member)`.
pub fn multiplier_and_membership(g: &MatQ, tag: SubgroupTag) -> Result<(BigRat, bool)> {
    let p = g.prime;
    let scalar = if g.n == 4 { multiplier(g)? } else { g.det() };
    let member = match tag {
        SubgroupTag::K => in_integral_group(g),
        SubgroupTag::H => {
            g.n == 4 && in_integral_group(g) && split_iota(g).is_some_and(|(a, b)| a.det() == b.det())
        }
        _ if g.n != 2 => return Err(Error::InvalidInput("congruence tags are for GL_2".into())),
        SubgroupTag::K1(e) => in_integral_group(g) && divisible(g.get(1, 0), p, e) && congruent_one(g.get(1, 1), p, e),
        SubgroupTag::K1Upper(e) => {
            in_integral_group(g) && divisible(g.get(1, 0), p, e) && congruent_one(g.get(0, 0), p, e)
        }
        SubgroupTag::K0(e) => in_integral_group(g) && divisible(g.get(1, 0), p, e),
        SubgroupTag::IwSl2(e) => g.is_integral() && g.det() == rat(1) && divisible(g.get(1, 0), p, e),
    };
    Ok((scalar, member))
}

pub fn is_member(g: &MatQ, tag: SubgroupTag) -> bool {
    multiplier_and_membership(g, tag).map(|(_, m)| m).unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Cosets `gK`.
    Left,
    /// Cosets `Kg`.
    Right,
}

pub fn coset_equal(g: &MatQ, h: &MatQ, tag: SubgroupTag, side: Side) -> bool {
    let gi = g.inv().expect("singular matrix");
    let x = match side {
        Side::Left => gi.mul(h),
        Side::Right => h.mul(&gi),
    };
    is_member(&x, tag)
}

/// Element of the unipotent radical of the Siegel-type Borel of `GSp_4`:
/// `[[1,a,b,c],[0,1,d,b-ad],[0,0,1,-a],[0,0,0,1]]`.
pub fn unipotent(prime: u64, a: &BigRat, b: &BigRat, c: &BigRat, d: &BigRat) -> MatQ {
    let z = rat(0);
    let o = rat(1);
    let e = vec![
        o.clone(), a.clone(), b.clone(), c.clone(),
        z.clone(), o.clone(), d.clone(), b - a * d,
        z.clone(), z.clone(), o.clone(), -a,
        z.clone(), z.clone(), z, o,
    ];
    MatQ::from_rats(prime, 4, e)
}

/// `diag(l^f1, l^f2, l^(c-f2), l^(c-f1))`.
pub fn gsp4_torus(prime: u64, f1: i64, f2: i64, c: i64) -> MatQ {
    MatQ::diag_pows(prime, &[f1, f2, c - f2, c - f1])
}

/// A random element of `GSp_4(Z)` built as a word in integral unipotents,
/// their transposes, `J`, and integral torus units.
pub fn random_gsp4_integral<R: rand::Rng>(prime: u64, rng: &mut R, len: usize) -> MatQ {
    let mut g = MatQ::identity(4, prime);
    for _ in 0..len {
        let r = |rng: &mut R| rat(rng.gen_range(-3..=3));
        let step = match rng.gen_range(0..3) {
            0 => unipotent(prime, &r(rng), &r(rng), &r(rng), &r(rng)),
            1 => unipotent(prime, &r(rng), &r(rng), &r(rng), &r(rng)).transpose(),
            _ => j_matrix(prime),
        };
        g = g.mul(&step);
    }
    g
}

/// A random element of `GL_2(Z)`.
pub fn random_gl2_integral<R: rand::Rng>(prime: u64, rng: &mut R, len: usize) -> MatQ {
    let mut g = MatQ::identity(2, prime);
    for _ in 0..len {
        let x = rng.gen_range(-3..=3);
        let step = match rng.gen_range(0..3) {
            0 => MatQ::from_ints(prime, &[&[1, x], &[0, 1]]),
            1 => MatQ::from_ints(prime, &[&[1, 0], &[x, 1]]),
            _ => MatQ::from_ints(prime, &[&[0, 1], &[1, 0]]),
        };
        g = g.mul(&step);
    }
    g
}

/// Residue of a `l`-integral matrix modulo `l^e`, row-major.
pub fn residues(g: &MatQ, e: u32) -> Vec<BigInt> {
    g.e.iter().map(|x| residue(x, g.prime, e)).collect()
}

/// The auxiliary matrix `eta_l = [[1,0,1/l,0],[0,1,0,1/l],[0,0,1,0],[0,0,0,1]]`.
pub fn eta(prime: u64) -> MatQ {
    let mut m = MatQ::identity(4, prime);
    m.set(0, 2, pow_i(prime, -1));
    m.set(1, 3, pow_i(prime, -1));
    m
}

//! The decomposition `GSp_4(Q_l) = ⊔ H(Z_l) g(mu', mu) GSp_4(Z_l)` with
//! `g(mu', mu) = t(mu') B t(mu)`: representatives, membership at finite
//! precision, reduction of arbitrary elements and a bounded partition check.
//!
//! Since `t(z)` is central for `z = (k, k, 2k)`, the pairs `(mu' + z, mu - z)`
//! all give the same matrix. Candidates are normalized to `mu'_1 = 0`.

use crate::arith::rat::{pow_i, rat, residue, to_i64, valuation, BigRat};
use crate::error::{Error, Result};
use crate::padic::{in_integral_group, multiplier, smith_invariants, unipotent, MatQ};
use crate::report::Report;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CocharPair {
    pub mu_p: [i64; 3],
    pub mu: [i64; 3],
}

impl CocharPair {
    /// Checks `mu'_1 >= 0, 2 mu'_2 >= mu'_3` and `mu_1 >= mu_2, 2 mu_2 >= mu_3`.
    pub fn new(mu_p: [i64; 3], mu: [i64; 3]) -> Result<Self> {
        let ok = mu_p[0] >= 0 && 2 * mu_p[1] >= mu_p[2] && mu[0] >= mu[1] && 2 * mu[1] >= mu[2];
        if ok {
            Ok(CocharPair { mu_p, mu })
        } else {
            Err(Error::ConeViolation)
        }
    }

    /// `(mu' + z, mu - z)` for `z = (k, k, 2k)`; `None` if it leaves the cone.
    pub fn central_shift(&self, k: i64) -> Option<Self> {
        let z = [k, k, 2 * k];
        let add = |a: [i64; 3], s: i64| [a[0] + s * z[0], a[1] + s * z[1], a[2] + s * z[2]];
        Self::new(add(self.mu_p, 1), add(self.mu, -1)).ok()
    }

    pub fn normalized(&self) -> Self {
        self.central_shift(-self.mu_p[0]).expect("shift to mu'_1 = 0 stays in the cone")
    }

    pub fn multiplier_valuation(&self) -> i64 {
        self.mu_p[2] + self.mu[2]
    }

    pub fn to_json(&self) -> Value {
        json!({ "mu_prime": self.mu_p, "mu": self.mu })
    }
}

/// `t(nu) = diag(l^nu1, l^nu2, l^(nu3-nu2), l^(nu3-nu1))`.
pub fn t_matrix(prime: u64, nu: [i64; 3]) -> MatQ {
    MatQ::diag_pows(prime, &[nu[0], nu[1], nu[2] - nu[1], nu[2] - nu[0]])
}

pub fn b_matrix(prime: u64) -> MatQ {
    MatQ::from_ints(prime, &[&[1, 1, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, -1], &[0, 0, 0, 1]])
}

pub fn rep_matrix(pair: &CocharPair, prime: u64) -> MatQ {
    t_matrix(prime, pair.mu_p).mul(&b_matrix(prime)).mul(&t_matrix(prime, pair.mu))
}

type M2 = [i64; 4];

/// Largest `N` for which `GL_2(Z/l^N)` is enumerated.
pub fn max_precision(prime: u64) -> u32 {
    (1..).take_while(|&n| (prime as u128).pow(4 * n) <= 1 << 22).last().unwrap_or(1)
}

/// Integer lifts in `[0, l^N)` of `GL_2(Z/l^N)`, cached.
fn gl2_table(prime: u64, n: u32) -> Arc<Vec<M2>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<Vec<M2>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(prime, n)) {
        return t.clone();
    }
    let l = prime as i64;
    let q = l.pow(n);
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if (a * d - b * c).rem_euclid(l) != 0 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let t = Arc::new(out);
    cache.lock().unwrap().insert((prime, n), t.clone());
    t
}

fn denominator_exponent(g: &MatQ) -> u32 {
    g.min_valuation().map_or(0, |v| (-v).max(0) as u32)
}

fn residue_matrix(g: &MatQ, shift: u32, n: u32) -> [[i64; 4]; 4] {
    let scale = pow_i(g.prime, shift as i64);
    let mut out = [[0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let r: BigInt = residue(&(g.get(i, j) * &scale), g.prime, n);
            *x = to_i64(&BigRat::from_integer(r)).expect("residue fits");
        }
    }
    out
}

/// Witness `h = iota(h1, h2) in H(Z_l)` with `r^{-1} h g in GSp_4(Z_l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub h1: MatQ,
    pub h2: MatQ,
}

/// Lift a pair with `det h1 = det h2 mod l^N` to an exact point of `H(Z_l)`
/// by moving one entry of `h2` by a multiple of `l^N`.
fn exact_lift(prime: u64, h1: &M2, h2: &M2) -> (MatQ, MatQ) {
    let m1 = MatQ::from_ints(prime, &[&[h1[0], h1[1]], &[h1[2], h1[3]]]);
    let d = m1.det();
    let [a, b, c, dd] = h2.map(rat);
    let m2 = if a.numer() % prime as i64 != BigInt::from(0) {
        let d2 = (&d + &b * &c) / &a;
        MatQ::from_rats(prime, 2, vec![a, b, c, d2])
    } else {
        let c2 = (&a * &dd - &d) / &b;
        MatQ::from_rats(prime, 2, vec![a, b, c2, dd])
    };
    (m1, m2)
}

/// Decide `g in H(Z_l) r GSp_4(Z_l)` by exhausting `H(Z/l^N)`.
///
/// With `a`, `b` the denominator exponents of `r^{-1}` and `g`, integrality of
/// `r^{-1} h g` depends on `h` modulo `l^(a+b)`. Writing
/// `l^a r^{-1} iota(h1, h2) l^b g = A(h1) + B(h2)` the search is a join of
/// `{(det h1, A(h1))}` against `{(det h2, -B(h2))}`.
pub fn membership_witness(g: &MatQ, r: &MatQ) -> Result<Option<Witness>> {
    let l = g.prime;
    let mu_g = multiplier(g)?;
    let mu_r = multiplier(r)?;
    if valuation(&mu_g, l) != valuation(&mu_r, l) {
        return Ok(None);
    }
    let r_inv = r.inv().ok_or(Error::NotInvertible)?;
    let (a, b) = (denominator_exponent(&r_inv), denominator_exponent(g));
    let n = a + b;
    if n == 0 {
        let id = MatQ::identity(2, l);
        return Ok(Some(Witness { h1: id.clone(), h2: id }));
    }
    if n > max_precision(l) {
        return Err(Error::PrecisionOverflow(n));
    }
    let q = (l as i64).pow(n);
    let rm = residue_matrix(&r_inv, a, n);
    let gm = residue_matrix(g, b, n);
    let table = gl2_table(l, n);
    let block = |h: &M2, idx: [usize; 2]| {
        let mut t = [[0i64; 4]; 2];
        for (s, row) in t.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (h[2 * s] * gm[idx[0]][j] + h[2 * s + 1] * gm[idx[1]][j]).rem_euclid(q);
            }
        }
        let mut out = [0i64; 16];
        for i in 0..4 {
            for j in 0..4 {
                out[4 * i + j] = (rm[i][idx[0]] * t[0][j] + rm[i][idx[1]] * t[1][j]).rem_euclid(q);
            }
        }
        out
    };
    let det = |h: &M2| (h[0] * h[3] - h[1] * h[2]).rem_euclid(q);
    let mut outer: HashMap<(i64, [i64; 16]), usize> = HashMap::with_capacity(table.len());
    for (i, h) in table.iter().enumerate() {
        outer.entry((det(h), block(h, [0, 3]))).or_insert(i);
    }
    for h2 in table.iter() {
        let neg = block(h2, [1, 2]).map(|x| (q - x) % q);
        if let Some(&i) = outer.get(&(det(h2), neg)) {
            let (m1, m2) = exact_lift(l, &table[i], h2);
            return Ok(Some(Witness { h1: m1, h2: m2 }));
        }
    }
    Ok(None)
}

/// `g in H(Z_l) g(mu', mu) GSp_4(Z_l)`; a found witness is re-checked in
/// exact arithmetic.
pub fn double_coset_member(g: &MatQ, pair: &CocharPair) -> Result<bool> {
    let r = rep_matrix(pair, g.prime);
    match membership_witness(g, &r)? {
        None => Ok(false),
        Some(w) => {
            let h = crate::padic::embed_iota(&w.h1, &w.h2)?;
            let k = r.inv().ok_or(Error::NotInvertible)?.mul(&h).mul(g);
            if in_integral_group(&h) && in_integral_group(&k) {
                Ok(true)
            } else {
                Err(Error::InvalidInput("membership witness failed exact re-check".into()))
            }
        }
    }
}

/// `(v(mu), GL_4 elementary divisors)`, constant on each double coset.
fn invariants(g: &MatQ) -> Result<(i64, Vec<i64>)> {
    let mu = multiplier(g)?;
    Ok((valuation(&mu, g.prime).unwrap_or(0), smith_invariants(g)))
}

/// Normalized pairs (`mu'_1 = 0`) with coordinates in `[-2 bound - 2, 2 bound + 2]`
/// whose double coset can contain elements with entry valuations in
/// `[-bound, bound]`: smallest elementary divisor at least `-bound`, largest
/// at most `3 bound`, multiplier valuation in `[-2 bound, 2 bound]`.
pub fn candidates(prime: u64, bound: i64) -> Vec<CocharPair> {
    let r = 2 * bound + 2;
    let mut out = Vec::new();
    for p2 in -r..=r {
        for p3 in -r..=r {
            for m1 in -r..=r {
                for m2 in -r..=r {
                    for m3 in -r..=r {
                        let Ok(c) = CocharPair::new([0, p2, p3], [m1, m2, m3]) else { continue };
                        let d = smith_invariants(&rep_matrix(&c, prime));
                        let v = c.multiplier_valuation();
                        if d[0] >= -bound && d[3] <= 3 * bound && v.abs() <= 2 * bound {
                            out.push(c);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Candidates grouped by their double-coset invariants.
struct CandidateIndex {
    groups: BTreeMap<(i64, Vec<i64>), Vec<CocharPair>>,
}

impl CandidateIndex {
    fn new(prime: u64, pairs: &[CocharPair]) -> Self {
        let mut groups: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for p in pairs {
            let inv = invariants(&rep_matrix(p, prime)).expect("representatives are symplectic");
            groups.entry(inv).or_default().push(*p);
        }
        CandidateIndex { groups }
    }

    fn matches(&self, g: &MatQ) -> Result<Vec<CocharPair>> {
        let inv = invariants(g)?;
        let mut out = Vec::new();
        for p in self.groups.get(&inv).into_iter().flatten() {
            if double_coset_member(g, p)? {
                out.push(*p);
            }
        }
        Ok(out)
    }
}

fn index_for(prime: u64, bound: i64) -> Arc<CandidateIndex> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, i64), Arc<CandidateIndex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(ix) = cache.lock().unwrap().get(&(prime, bound)) {
        return ix.clone();
    }
    let ix = Arc::new(CandidateIndex::new(prime, &candidates(prime, bound)));
    cache.lock().unwrap().insert((prime, bound), ix.clone());
    ix
}

/// Every candidate pair whose double coset contains `g`.
pub fn gejima_reduce_all(g: &MatQ, bound: i64) -> Result<Vec<CocharPair>> {
    index_for(g.prime, bound).matches(g)
}

/// The unique normalized pair whose double coset contains `g`.
pub fn gejima_reduce(g: &MatQ, bound: i64) -> Result<CocharPair> {
    let found = gejima_reduce_all(g, bound)?;
    match found.len() {
        0 => Err(Error::NotFoundWithinBound),
        1 => Ok(found[0]),
        n => Err(Error::AmbiguousReduction(n)),
    }
}

/// A random element of `iota(H(Z))`.
pub fn random_h_integral<R: Rng>(prime: u64, rng: &mut R) -> MatQ {
    let mut h1 = crate::padic::random_gl2_integral(prime, rng, 6);
    let h2 = crate::padic::random_gl2_integral(prime, rng, 6);
    if h1.det() != h2.det() {
        h1 = h1.mul(&MatQ::from_ints(prime, &[&[1, 0], &[0, -1]]));
    }
    crate::padic::embed_iota(&h1, &h2).expect("equal determinants")
}

/// A random element of `GSp_4(Q_l)` whose nonzero entries have valuations in
/// `[-bound, bound]`, built from unipotents with entries `u l^e`, their
/// transposes and small torus elements.
pub fn random_bounded<R: Rng>(prime: u64, bound: i64, rng: &mut R) -> MatQ {
    loop {
        let mut g = MatQ::identity(4, prime);
        for _ in 0..rng.gen_range(1..=4) {
            let entry = |rng: &mut R| {
                if rng.gen_bool(0.4) {
                    rat(0)
                } else {
                    rat(rng.gen_range(1..prime as i64)) * pow_i(prime, rng.gen_range(-bound..=bound))
                }
            };
            let (a, b, c, d) = (entry(rng), entry(rng), entry(rng), entry(rng));
            let step = match rng.gen_range(0..3) {
                0 => unipotent(prime, &a, &b, &c, &d),
                1 => unipotent(prime, &a, &b, &c, &d).transpose(),
                _ => {
                    let f = |rng: &mut R| rng.gen_range(-bound..=bound);
                    crate::padic::gsp4_torus(prime, f(rng), f(rng), f(rng))
                }
            };
            g = g.mul(&step);
        }
        let in_range = g.e.iter().all(|x| valuation(x, prime).map_or(true, |v| v.abs() <= bound));
        if in_range {
            return g;
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PartitionConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        PartitionConfig { samples: 200, seed: 0 }
    }
}

/// Overlapping ordered pairs `(p, q)` with `g(p)` in the double coset of `q`,
/// with the `H(Z_l)` witness, plus the number of pairs separated by
/// invariants and by search.
pub struct Disjointness {
    pub overlaps: Vec<(CocharPair, CocharPair, Witness)>,
    pub by_invariant: usize,
    pub by_search: usize,
}

pub fn disjointness(prime: u64, pairs: &[CocharPair]) -> Result<Disjointness> {
    let index = CandidateIndex::new(prime, pairs);
    let total = pairs.len();
    let mut out = Disjointness { overlaps: Vec::new(), by_invariant: 0, by_search: 0 };
    for group in index.groups.values() {
        out.by_invariant += group.len() * (total - group.len());
        for p in group {
            let g = rep_matrix(p, prime);
            for q in group.iter().filter(|q| *q != p) {
                match membership_witness(&g, &rep_matrix(q, prime))? {
                    Some(w) => out.overlaps.push((*p, *q, w)),
                    None => out.by_search += 1,
                }
            }
        }
    }
    Ok(out)
}

fn overlap_json(o: &(CocharPair, CocharPair, Witness)) -> Value {
    json!({ "pair": o.0.to_json(), "in_coset_of": o.1.to_json(), "h1": o.2.h1.to_json(), "h2": o.2.h2.to_json() })
}

pub fn verify_partition(prime: u64, bound: i64, cfg: PartitionConfig) -> Result<Report> {
    let pairs = candidates(prime, bound);
    let spread = pairs
        .iter()
        .map(|p| {
            let d = smith_invariants(&rep_matrix(p, prime));
            (d[3] - d[0]) as u32
        })
        .max()
        .unwrap_or(0);
    if spread > max_precision(prime) {
        return Err(Error::PrecisionOverflow(spread));
    }
    let central = pairs
        .iter()
        .filter_map(|p| p.central_shift(1).map(|s| (p, s)))
        .filter(|(p, s)| rep_matrix(p, prime) == rep_matrix(s, prime))
        .count();
    let mut rep = Report::new("gejima_partition")
        .param("prime", prime)
        .param("bound", bound)
        .param("seed", cfg.seed)
        .param("candidates", pairs.len())
        .param("central_shift_coincidences", central);

    let d = disjointness(prime, &pairs)?;
    rep.check(
        "candidate double cosets pairwise disjoint",
        d.overlaps.is_empty(),
        json!({
            "separated_by_invariants": d.by_invariant,
            "separated_by_search": d.by_search,
            "overlapping_ordered_pairs": d.overlaps.len(),
            "examples": d.overlaps.iter().take(10).map(overlap_json).collect::<Vec<_>>(),
        }),
    );

    let dup = [pairs[0], pairs[0].central_shift(1).expect("shift up stays in the cone")];
    let flagged = !disjointness(prime, &dup)?.overlaps.is_empty();
    rep.negative_control("a duplicated candidate is flagged", flagged, json!(dup.iter().map(CocharPair::to_json).collect::<Vec<_>>()));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut reduced, mut ambiguous) = (0usize, 0usize);
    let mut distinct = std::collections::BTreeSet::new();
    let mut misses = Vec::new();
    for _ in 0..cfg.samples {
        let g = random_bounded(prime, bound, &mut rng);
        let found = gejima_reduce_all(&g, bound)?;
        match found.len() {
            0 => misses.push(g.to_json()),
            n => {
                reduced += 1;
                ambiguous += usize::from(n > 1);
                distinct.extend(found);
            }
        }
    }
    let rate = if cfg.samples == 0 { 1.0 } else { reduced as f64 / cfg.samples as f64 };
    rep.check(
        "every sampled element lies in a candidate double coset",
        reduced == cfg.samples,
        json!({ "rate": rate, "samples": cfg.samples, "in_several": ambiguous, "pairs_hit": distinct.len(), "misses": misses }),
    );

    let mut support_ok = true;
    let mut support = Vec::new();
    for (mu_p, mu) in [([0, 0, 0], [1, 0, 0]), ([0, 1, 1], [0, 0, 0]), ([0, 0, -1], [0, 0, 0])] {
        let (tp, t) = (t_matrix(prime, mu_p), t_matrix(prime, mu));
        let mut labels = Vec::new();
        for _ in 0..4 {
            let h = random_h_integral(prime, &mut rng);
            let k1 = crate::padic::random_gsp4_integral(prime, &mut rng, 4);
            let k2 = crate::padic::random_gsp4_integral(prime, &mut rng, 4);
            let g = h.mul(&tp).mul(&k1).mul(&t).mul(&k2);
            let found = gejima_reduce_all(&g, bound)?;
            support_ok &= !found.is_empty();
            labels.push(found.iter().map(CocharPair::to_json).collect::<Vec<_>>());
        }
        support.push(json!({ "mu_prime": mu_p, "mu": mu, "reduced_to": labels }));
    }
    rep.check("H t(mu') K t(mu) K samples lie in the candidate set", support_ok, json!(support));
    Ok(rep)
}

//! Spin Frobenius polynomials `P_l(X)` from Satake data, and the companion
//! polynomial `Q_l` governing the Euler factor in the norm relation over
//! ray class groups.

use super::normrel::split_prime_data;
use super::phi::bracket;
use crate::arith::cyclo::sqrt_disc;
use crate::arith::rat::{frac, pow_i, rat};
use crate::arith::{sqrt_pow, CycNum, GroupRingElt, MultiLaurent, Ring, SqrtExt, ToJson};
use crate::error::{Error, Result};
use crate::hecke::lfactor::p_spin_symbolic;
use crate::iqf::{HeckeChar, Ideal, RayClassGroup};
use crate::report::Report;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Values in `L(sqrt(l))`, `L` cyclotomic.
pub type LVal = SqrtExt<CycNum>;

/// Arithmetic Frobenius at `l` is `[l]^SIGN` under the Artin map that
/// sends uniformizers to geometric Frobenius.
pub const ARITHMETIC_FROBENIUS_SIGN: i64 = -1;

/// Hecke eigenvalues of the three spherical generators at an unramified
/// prime, with the weight `(k1, k2)`.
#[derive(Clone, Debug)]
pub struct SpinFrobData {
    pub prime: u64,
    pub k1: i64,
    pub k2: i64,
    pub lambda: LVal,
    pub mu: LVal,
    pub omega: LVal,
}

fn lv(c: CycNum) -> LVal {
    SqrtExt::base(c)
}

fn lq(l: u64, k: i64) -> LVal {
    sqrt_pow(l, k)
}

/// `sqrt(-l)` inside a cyclotomic field.
pub fn sqrt_minus(l: u64) -> CycNum {
    let l = l as i64;
    if l % 4 == 3 {
        sqrt_disc(-l)
    } else {
        sqrt_disc(-4 * l).scale(&frac(1, 2))
    }
}

impl SpinFrobData {
    pub fn new(prime: u64, k1: i64, k2: i64, lambda: LVal, mu: LVal, omega: LVal) -> Result<Self> {
        if !(k1 >= k2 && k2 >= 3) {
            return Err(Error::InvalidInput(format!("weights ({k1}, {k2}) need k1 >= k2 >= 3")));
        }
        Ok(SpinFrobData { prime, k1, k2, lambda, mu, omega })
    }

    pub fn w(&self) -> i64 {
        self.k1 + self.k2 - 3
    }

    pub fn a(&self) -> i64 {
        self.k2 - 3
    }

    /// Eigenvalues of the unramified representation with spin Satake
    /// parameters `x0 {1, x1, x2, x1 x2}`.
    pub fn from_satake(prime: u64, k1: i64, k2: i64, x: [LVal; 3]) -> Result<Self> {
        let alphas = satake_alphas(&x);
        let e1 = alphas.iter().fold(LVal::zero(), |acc, a| acc.radd(a));
        let mut e2 = LVal::zero();
        for i in 0..4 {
            for j in i + 1..4 {
                e2 = e2.radd(&alphas[i].rmul(&alphas[j]));
            }
        }
        let [x0, x1, x2] = x;
        let omega = x0.rmul(&x0).rmul(&x1).rmul(&x2);
        let lambda = lq(prime, 3).rmul(&e1);
        let one_l2 = lv(CycNum::from_rat(&(rat(1) + pow_i(prime, -2))));
        let mu = lq(prime, 4).rmul(&e2.rsub(&one_l2.rmul(&omega)));
        Self::new(prime, k1, k2, lambda, mu, omega)
    }

    /// Unitary Satake point with `x1`, `x2` roots of unity and `x0` chosen so
    /// that `l^{w/2} x0` lies in `L`.
    pub fn synthetic(prime: u64, k1: i64, k2: i64, x1: CycNum, x2: CycNum) -> Result<Self> {
        let x0 = synthetic_x0(prime, k1 + k2 - 3);
        Self::from_satake(prime, k1, k2, [x0, lv(x1), lv(x2)])
    }

    pub fn to_json(&self) -> Value {
        let f = |v: &LVal| json!({ "a": v.a.to_json(), "b_sqrt_l": v.b.to_json() });
        json!({
            "prime": self.prime, "k1": self.k1, "k2": self.k2, "w": self.w(),
            "lambda": f(&self.lambda), "mu": f(&self.mu), "omega": f(&self.omega),
        })
    }
}

/// `sqrt(-l)/sqrt(l)` for odd `w`, `1` for even `w`.
pub fn synthetic_x0(prime: u64, w: i64) -> LVal {
    if w % 2 == 0 {
        LVal::one()
    } else {
        SqrtExt::new(prime, CycNum::zero(), sqrt_minus(prime).scale(&frac(1, prime as i64)))
    }
}

fn satake_alphas(x: &[LVal; 3]) -> [LVal; 4] {
    let [x0, x1, x2] = x;
    [x0.clone(), x0.rmul(x1), x0.rmul(x2), x0.rmul(x1).rmul(x2)]
}

/// Dense polynomial `sum c_i X^i`.
pub type UPoly = Vec<CycNum>;

fn pmul(a: &[CycNum], b: &[CycNum]) -> UPoly {
    let mut out = vec![CycNum::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].radd(&x.rmul(y));
        }
    }
    out
}

fn padd(a: &[CycNum], b: &[CycNum]) -> UPoly {
    (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(CycNum::zero);
            let y = b.get(i).cloned().unwrap_or_else(CycNum::zero);
            x.radd(&y)
        })
        .collect()
}

fn trim(mut p: UPoly) -> UPoly {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

pub fn peval(p: &[CycNum], x: &CycNum) -> CycNum {
    p.iter().rev().fold(CycNum::zero(), |acc, c| acc.rmul(x).radd(c))
}

/// `P_l(X) = p_spin(lambda, mu, omega)(l^{w/2} X)`. Fails with
/// `HalfIntegerLeak` when a coefficient keeps a `sqrt(l)`.
pub fn spin_frobenius_poly(d: &SpinFrobData) -> Result<UPoly> {
    let sym = p_spin_symbolic(d.prime);
    let lifted: MultiLaurent<LVal> = sym.map_coeffs(|c| c.map(|q| CycNum::from_rat(q)));
    let mut assign = BTreeMap::new();
    assign.insert("lambda".to_string(), d.lambda.clone());
    assign.insert("mu".to_string(), d.mu.clone());
    assign.insert("omega".to_string(), d.omega.clone());
    let in_x = lifted.laurent_eval(&assign, &["X"])?;
    let mut out = Vec::new();
    for i in 0..=4 {
        let c = in_x.coeff_of("X", i).constant_term().rmul(&lq(d.prime, i * d.w()));
        out.push(c.as_base().ok_or(Error::HalfIntegerLeak)?);
    }
    Ok(out)
}

/// `det(1 - X A)` for a 4x4 matrix `A` over `L`, by permutation expansion.
fn char_det(a: &[[CycNum; 4]; 4]) -> UPoly {
    let mut total: UPoly = vec![CycNum::zero()];
    let perms = permutations4();
    for (perm, sign) in perms {
        let mut term: UPoly = vec![CycNum::from_int(sign)];
        for (i, &j) in perm.iter().enumerate() {
            let entry: UPoly = if i == j {
                vec![CycNum::one(), a[i][j].rneg()]
            } else {
                vec![CycNum::zero(), a[i][j].rneg()]
            };
            term = pmul(&term, &entry);
        }
        total = padd(&total, &term);
    }
    trim(total)
}

fn permutations4() -> Vec<([usize; 4], i64)> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().any(|&x| std::mem::replace(&mut seen[x], true)) {
                        continue;
                    }
                    let inv = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    out.push((p, if inv % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
    }
    out
}

/// `Q_l(X) = det(1 - X c C)` with `C` the companion matrix of the reversed
/// `P_l` and `c = psi(l) l^{-(k2-1)}`.
pub fn q_poly(p: &[CycNum], c: &CycNum) -> UPoly {
    // reversed P_l is X^4 + c1 X^3 + c2 X^2 + c3 X + c4
    let z = CycNum::zero;
    let mut m: [[CycNum; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| z()));
    for i in 1..4 {
        m[i][i - 1] = c.clone();
    }
    for i in 0..4 {
        m[i][3] = p[4 - i].rneg().rmul(c);
    }
    char_det(&m)
}

/// For every character `chi` of `H_n^(p)`: `chi(P_l([l] psi(l) l^{-(k2-1)}))
/// = Q_l(chi(sigma_l)^{-1})` with `sigma_l` the arithmetic Frobenius of `l`.
pub fn q_l_twist_consistency(
    d: &SpinFrobData,
    psi: &HeckeChar,
    ray: &RayClassGroup,
    p: u64,
    lp: &Ideal,
) -> Result<Report> {
    let sp = split_prime_data(psi, &ray.modulus, lp)?;
    if sp.l != d.prime || sp.l == p {
        return Err(Error::ModulusViolation(format!("spin data at {} used for l = {}, p = {p}", d.prime, sp.l)));
    }
    let pl = spin_frobenius_poly(d)?;
    let proj = ray.group().quotient_p(p);
    let hp = &proj.target;
    let psi_l = psi.eval(&sp.lp)?;
    let c = psi_l.rmul(&CycNum::from_rat(&pow_i(sp.l, -(d.k2 - 1))));
    let cls = proj.apply(&ray.dlog(&sp.lp)?);

    let x = bracket(psi, ray, &sp.lp)?.pushforward(&proj).scale(&CycNum::from_rat(&pow_i(sp.l, -(d.k2 - 1))));
    let mut e = GroupRingElt::zero(hp);
    for (i, ci) in pl.iter().enumerate() {
        e = e.add(&x.pow(i as u32).scale(ci));
    }
    let q = q_poly(&pl, &c);

    let run = |sign: i64| -> Vec<Vec<i64>> {
        let sigma: Vec<i64> = cls.iter().map(|v| sign * v).collect();
        hp.characters()
            .into_iter()
            .filter(|chi| {
                let at = chi.value(hp, &hp.reduce(&sigma)).inv().expect("root of unity");
                e.apply_char(chi) != peval(&q, &at)
            })
            .map(|chi| chi.exps)
            .collect()
    };
    let bad = run(ARITHMETIC_FROBENIUS_SIGN);
    let mut rep = Report::new("q-l-twist-consistency")
        .param("field", psi.field.disc)
        .param("modulus", ray.modulus.to_json())
        .param("p", p)
        .param("prime", sp.l)
        .param("k1", d.k1)
        .param("k2", d.k2)
        .param("h_p", hp.orders.clone())
        .param("frobenius_class", cls.clone());
    rep.check("P_l coefficients lie in L", true, json!({ "P_l": pl.iter().map(|c| c.to_json()).collect::<Vec<_>>() }));
    rep.check("P_l(0) = 1", pl[0] == CycNum::one(), json!({}));
    rep.check(
        "chi(E) = Q_l(chi(sigma_l)^-1) for every character of H_n^(p)",
        bad.is_empty(),
        json!({ "characters": hp.order(), "convention_mismatch": bad }),
    );
    let doubled: Vec<i64> = cls.iter().map(|v| 2 * v).collect();
    if hp.reduce(&doubled) != hp.identity() {
        let flipped = run(-ARITHMETIC_FROBENIUS_SIGN);
        rep.negative_control(
            "geometric Frobenius in place of arithmetic is flagged",
            !flipped.is_empty(),
            json!({ "mismatching_characters": flipped.len() }),
        );
    } else {
        rep = rep.param("frobenius_flip_detectable", false);
    }
    Ok(rep)
}

/// Purity of synthetic data: every root `r` of `P_l` satisfies `P_l(r) = 0`
/// and `r conj(r) = l^{-w}`.
pub fn purity_check(x: [LVal; 3], d: &SpinFrobData) -> Result<Report> {
    let pl = spin_frobenius_poly(d)?;
    let mut rep = Report::new("spin-purity").param("prime", d.prime).param("w", d.w());
    let target = LVal::from_rat(&pow_i(d.prime, -d.w()));
    let lw2 = lq(d.prime, d.w());
    let mut ok_root = true;
    let mut ok_norm = true;
    for alpha in satake_alphas(&x) {
        let r = lw2.rmul(&alpha).inv().ok_or(Error::NotInvertible)?;
        let mut val = LVal::zero();
        for c in pl.iter().rev() {
            val = val.rmul(&r).radd(&lv(c.clone()));
        }
        ok_root &= val.is_zero();
        let conj = r.map(|c| c.conj());
        ok_norm &= r.rmul(&conj) == target;
    }
    rep.check("l^{-w/2} alpha_i^{-1} are the roots of P_l", ok_root, json!({}));
    rep.check("every root has r conj(r) = l^{-w}", ok_norm, json!({}));
    Ok(rep)
}

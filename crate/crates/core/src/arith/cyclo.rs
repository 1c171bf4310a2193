use super::rat::{rat, BigRat};
use super::ring::Ring;
use num_integer::Integer;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Element of `Q(zeta_m)` in the power basis `1, z, ..., z^(phi(m)-1)`
/// reduced modulo the cyclotomic polynomial. Operands of different levels are
/// lifted to the lcm of the levels.
#[derive(Clone, Debug)]
pub struct CycNum {
    pub m: u64,
    pub coeffs: Vec<BigRat>,
}

fn cyclotomic_poly(m: u64) -> Vec<i128> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i128>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by every Phi_d with d | m, d < m.
    let mut num = vec![0i128; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = div_monic(&num, &cyclotomic_poly(d));
        }
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

fn div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![0i128; r.len() - dn];
    for i in (0..q.len()).rev() {
        let c = r[i + dn];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(m: u64) -> u64 {
    cyclotomic_poly(m).len() as u64 - 1
}

fn reduce(m: u64, mut p: Vec<BigRat>) -> Vec<BigRat> {
    let phi = cyclotomic_poly(m);
    let d = phi.len() - 1;
    while p.len() > d {
        let c = p.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let base = p.len() - d;
        for (j, &a) in phi.iter().enumerate().take(d) {
            if a != 0 {
                p[base + j] -= &c * BigRat::from_integer(a.into());
            }
        }
    }
    p.resize(d, BigRat::zero());
    p
}

impl CycNum {
    pub fn from_rat_at(m: u64, q: &BigRat) -> Self {
        let mut c = vec![BigRat::zero(); euler_phi(m) as usize];
        c[0] = q.clone();
        CycNum { m, coeffs: c }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat_at(1, &rat(n))
    }

    /// `zeta_m^k`.
    pub fn zeta(m: u64, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut p = vec![BigRat::zero(); e + 1];
        p[e] = BigRat::one();
        CycNum { m, coeffs: reduce(m, p) }
    }

    /// Lift to `Q(zeta_big)`; `self.m` must divide `big`.
    pub fn embed(&self, big: u64) -> Self {
        assert!(big % self.m == 0, "cannot embed level {} into {}", self.m, big);
        if big == self.m {
            return self.clone();
        }
        let step = (big / self.m) as usize;
        let mut p = vec![BigRat::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        CycNum { m: big, coeffs: reduce(big, p) }
    }

    fn lifted(&self, o: &Self) -> (Self, Self) {
        let l = self.m.lcm(&o.m);
        (self.embed(l), o.embed(l))
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let m = self.m as usize;
        let mut p = vec![BigRat::zero(); m.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = (m - i % m) % m;
            p[j] += c;
        }
        CycNum { m: self.m, coeffs: reduce(self.m, p) }
    }

    /// Apply the Galois automorphism `zeta -> zeta^a`, `gcd(a, m) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let m = self.m as i64;
        let mut p = vec![BigRat::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = (i as i64 * a).rem_euclid(m) as usize;
            p[j] += c;
        }
        CycNum { m: self.m, coeffs: reduce(self.m, p) }
    }

    pub fn to_rat(&self) -> Option<BigRat> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRat::zero))
        } else {
            None
        }
    }

    /// Image under `zeta_m -> exp(2 pi i / m)`.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * i as f64 / self.m as f64;
            let v = c.to_f64().unwrap_or(f64::NAN);
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    fn mult_matrix(&self) -> Vec<Vec<BigRat>> {
        let d = self.coeffs.len();
        (0..d)
            .map(|j| {
                let mut p = vec![BigRat::zero(); j];
                p.extend(self.coeffs.iter().cloned());
                reduce(self.m, p)
            })
            .collect()
    }
}

/// Solves `sum_j x_j * cols[j] = rhs` by Gaussian elimination.
pub(crate) fn solve(cols: &[Vec<BigRat>], rhs: &[BigRat]) -> Option<Vec<BigRat>> {
    let n = cols.len();
    let rows = rhs.len();
    let mut a: Vec<Vec<BigRat>> = (0..rows)
        .map(|i| {
            let mut r: Vec<BigRat> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        piv.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRat::zero(); n];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = a[i][n].clone();
    }
    Some(x)
}

impl PartialEq for CycNum {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = self.lifted(o);
        a.coeffs == b.coeffs
    }
}

impl Ring for CycNum {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn from_rat(q: &BigRat) -> Self {
        Self::from_rat_at(1, q)
    }
    fn radd(&self, o: &Self) -> Self {
        let (a, b) = self.lifted(o);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycNum { m: a.m, coeffs }
    }
    fn rmul(&self, o: &Self) -> Self {
        let (a, b) = self.lifted(o);
        let mut p = vec![BigRat::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    p[i + j] += x * y;
                }
            }
        }
        CycNum { m: a.m, coeffs: reduce(a.m, p) }
    }
    fn rneg(&self) -> Self {
        CycNum { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.to_rat() {
            return Some(Self::from_rat_at(self.m, &q.recip()));
        }
        let mut one = vec![BigRat::zero(); self.coeffs.len()];
        one[0] = BigRat::one();
        let x = solve(&self.mult_matrix(), &one)?;
        Some(CycNum { m: self.m, coeffs: x })
    }
    fn scale(&self, q: &BigRat) -> Self {
        CycNum { m: self.m, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }
}

/// Kronecker symbol `(d / n)` for `n >= 1`.
pub fn kronecker(d: i64, n: u64) -> i64 {
    let mut res = 1i64;
    let mut n = n;
    let a = d;
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        if matches!(a.rem_euclid(8), 3 | 5) {
            res = -res;
        }
    }
    // Jacobi symbol (a / n) for odd n.
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                res = -res;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            res = -res;
        }
        a %= n;
    }
    if n == 1 {
        res
    } else {
        0
    }
}

/// `sqrt(d)` for a fundamental discriminant `d`, realised as the quadratic
/// Gauss sum in `Q(zeta_|d|)`. For `d < 0` this is `i*sqrt(|d|)` under
/// `zeta -> exp(2 pi i/|d|)`.
pub fn sqrt_disc(d: i64) -> CycNum {
    let m = d.unsigned_abs();
    let mut acc = CycNum::from_rat_at(m, &BigRat::zero());
    for a in 1..m {
        let k = kronecker(d, a);
        if k != 0 {
            acc = acc.radd(&CycNum::zeta(m, a as i64).scale(&rat(k)));
        }
    }
    acc
}

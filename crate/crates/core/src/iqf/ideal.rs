use super::field::{narrow, QInt, QuadField};
use crate::arith::rat::factor;
use crate::error::{Error, Result};
use num_integer::Integer;
use serde_json::{json, Value};

/// Nonzero integral ideal with Z-basis `{a, b + c*theta}`, `c | a`, `c | b`,
/// `0 <= b < a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    pub disc: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Hermite normal form `(a, b, c)` of the lattice spanned by `vs` in the
/// basis `{1, theta}`; `None` when the span has rank < 2.
fn lattice_hnf(vs: &[(i128, i128)]) -> Option<(i128, i128, i128)> {
    let mut rows: Vec<(i128, i128)> = vs.iter().copied().filter(|&(x, y)| x != 0 || y != 0).collect();
    let mut pivot: Option<(i128, i128)> = None;
    loop {
        let Some(k) = (0..rows.len()).filter(|&i| rows[i].1 != 0).min_by_key(|&i| rows[i].1.abs()) else {
            break;
        };
        let p = rows.swap_remove(k);
        for r in rows.iter_mut() {
            let q = r.1.div_euclid(p.1);
            r.0 -= q * p.0;
            r.1 -= q * p.1;
        }
        if rows.iter().all(|r| r.1 == 0) {
            pivot = Some(p);
            break;
        }
        rows.push(p);
    }
    let (mut b, mut c) = pivot?;
    if c < 0 {
        b = -b;
        c = -c;
    }
    let a = rows.iter().fold(0i128, |g, r| g.gcd(&r.0));
    if a == 0 {
        return None;
    }
    Some((a, b.rem_euclid(a), c))
}

impl Ideal {
    pub fn field(&self) -> QuadField {
        QuadField { disc: self.disc }
    }

    fn from_lattice(k: &QuadField, vs: &[QInt]) -> Result<Self> {
        let vs: Vec<(i128, i128)> = vs.iter().map(|v| (v.x as i128, v.y as i128)).collect();
        let (a, b, c) = lattice_hnf(&vs).ok_or_else(|| Error::InvalidInput("zero ideal".into()))?;
        Ok(Ideal { disc: k.disc, a: narrow(a), b: narrow(b), c: narrow(c) })
    }

    /// The ideal generated by `gens` as an `O_K`-module.
    pub fn generated(k: &QuadField, gens: &[QInt]) -> Result<Self> {
        let th = k.theta();
        let vs: Vec<QInt> = gens.iter().flat_map(|&g| [g, k.mul(g, th)]).collect();
        Self::from_lattice(k, &vs)
    }

    pub fn principal(k: &QuadField, g: QInt) -> Result<Self> {
        Self::generated(k, &[g])
    }

    pub fn unit(k: &QuadField) -> Self {
        Ideal { disc: k.disc, a: 1, b: 0, c: 1 }
    }

    pub fn from_int(k: &QuadField, n: i64) -> Result<Self> {
        Self::principal(k, QInt::int(n))
    }

    /// Validates an HNF triple, including closure under multiplication by
    /// `theta`.
    pub fn from_hnf(k: &QuadField, a: i64, b: i64, c: i64) -> Result<Self> {
        let id = Ideal { disc: k.disc, a, b, c };
        let ok = a > 0 && c > 0 && (0..a).contains(&b) && a % c == 0 && b % c == 0;
        let closed = ok && id.basis().iter().all(|&v| id.contains(k.mul(v, k.theta())));
        if closed {
            Ok(id)
        } else {
            Err(Error::InvalidInput(format!("[{a}, {b}; 0, {c}] is not an ideal of O_K")))
        }
    }

    pub fn basis(&self) -> [QInt; 2] {
        [QInt::int(self.a), QInt::new(self.b, self.c)]
    }

    pub fn norm(&self) -> u64 {
        (self.a * self.c) as u64
    }

    pub fn contains(&self, v: QInt) -> bool {
        if v.y % self.c != 0 {
            return false;
        }
        let q = (v.y / self.c) as i128;
        (v.x as i128 - q * self.b as i128) % self.a as i128 == 0
    }

    /// `self ⊆ o`, i.e. `o` divides `self`.
    pub fn is_subset(&self, o: &Ideal) -> bool {
        self.basis().iter().all(|&v| o.contains(v))
    }

    pub fn divides(&self, o: &Ideal) -> bool {
        o.is_subset(self)
    }

    pub fn mul(&self, o: &Ideal) -> Ideal {
        let k = self.field();
        let vs: Vec<QInt> =
            self.basis().iter().flat_map(|&u| o.basis().into_iter().map(move |v| k.mul(u, v))).collect();
        Self::from_lattice(&k, &vs).expect("product of nonzero ideals")
    }

    pub fn pow(&self, e: u32) -> Ideal {
        (0..e).fold(Ideal::unit(&self.field()), |acc, _| acc.mul(self))
    }

    pub fn sum(&self, o: &Ideal) -> Ideal {
        let mut vs = self.basis().to_vec();
        vs.extend(o.basis());
        Self::from_lattice(&self.field(), &vs).expect("sum of nonzero ideals")
    }

    pub fn is_unit(&self) -> bool {
        self.a == 1
    }

    pub fn coprime(&self, o: &Ideal) -> bool {
        self.sum(o).is_unit()
    }

    pub fn conj(&self) -> Ideal {
        let k = self.field();
        let vs: Vec<QInt> = self.basis().iter().map(|&v| k.conj(v)).collect();
        Self::from_lattice(&k, &vs).expect("conjugate of a nonzero ideal")
    }

    /// Canonical representative of `v` modulo the ideal, with
    /// `0 <= x < a`, `0 <= y < c`.
    pub fn reduce(&self, v: QInt) -> QInt {
        let q = v.y.div_euclid(self.c);
        let y = v.y - q * self.c;
        let x = (v.x as i128 - q as i128 * self.b as i128).rem_euclid(self.a as i128);
        QInt::new(narrow(x), y)
    }

    /// Residues `x + y theta`, `0 <= x < a`, `0 <= y < c`.
    pub fn residues(&self) -> impl Iterator<Item = QInt> + '_ {
        (0..self.c).flat_map(move |y| (0..self.a).map(move |x| QInt::new(x, y)))
    }

    /// A generator when the ideal is principal: the least element of the
    /// right norm (in the `(x, y)` order) generating it.
    pub fn principal_generator(&self) -> Option<QInt> {
        let k = self.field();
        k.elements_of_norm(self.norm())
            .into_iter()
            .find(|&g| self.contains(g) && Ideal::principal(&k, g).map(|p| &p == self).unwrap_or(false))
    }

    /// Prime ideal factorization, primes sorted by norm then HNF.
    pub fn factor(&self) -> Vec<(Ideal, u32)> {
        let k = self.field();
        let mut out = Vec::new();
        for (l, _) in factor(self.norm()) {
            for p in k.primes_above(l) {
                let mut v = 0;
                let mut pk = p.clone();
                while self.is_subset(&pk) {
                    v += 1;
                    pk = pk.mul(&p);
                }
                if v > 0 {
                    out.push((p, v));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({ "hnf": [[self.a, self.b], [0, self.c]], "norm": self.norm() })
    }
}

/// Decomposition of a rational prime in `O_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    /// `(l) = l * lbar`; the first ideal is `(l, theta - r)` for the larger
    /// root `r` of the minimal polynomial of `theta` mod `l`.
    Split(Ideal, Ideal),
    Inert(Ideal),
    Ramified(Ideal),
}

impl Splitting {
    pub fn primes(&self) -> Vec<Ideal> {
        match self {
            Splitting::Split(p, q) => vec![p.clone(), q.clone()],
            Splitting::Inert(p) | Splitting::Ramified(p) => vec![p.clone()],
        }
    }
}

impl QuadField {
    pub fn split_prime(&self, l: u64) -> Splitting {
        let li = l as i128;
        let d = self.disc as i128;
        let c0 = self.c0() as i128;
        let roots: Vec<i64> =
            (0..li).filter(|&t| (t * t - d * t + c0).rem_euclid(li) == 0).map(|t| t as i64).collect();
        let prime = |r: i64| {
            Ideal::generated(self, &[QInt::int(l as i64), QInt::new(-r, 1)]).expect("nonzero prime ideal")
        };
        match roots.as_slice() {
            [] => Splitting::Inert(Ideal::from_int(self, l as i64).expect("nonzero")),
            [r] => Splitting::Ramified(prime(*r)),
            [r1, r2] => Splitting::Split(prime(*r2), prime(*r1)),
            _ => unreachable!("quadratic has at most two roots mod a prime"),
        }
    }

    pub fn primes_above(&self, l: u64) -> Vec<Ideal> {
        self.split_prime(l).primes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(a: i64, b: i64) -> QInt {
        QuadField::gaussian_int(a, b)
    }

    #[test]
    fn unit_ideal_is_neutral() {
        let k = QuadField::gaussian();
        let a = Ideal::principal(&k, gi(3, 7)).unwrap();
        assert_eq!(a.mul(&Ideal::unit(&k)), a);
        assert_eq!(a.norm(), 58);
    }

    #[test]
    fn gaussian_splitting() {
        let k = QuadField::gaussian();
        let Splitting::Split(l, lb) = k.split_prime(5) else { panic!("5 splits in Q(i)") };
        assert_eq!(l, Ideal::principal(&k, gi(2, 1)).unwrap());
        assert_eq!(l.norm(), 5);
        assert_eq!(lb, l.conj());
        assert_eq!(l.mul(&lb), Ideal::from_int(&k, 5).unwrap());
        assert_eq!(l.mul(&lb).norm(), 25);
        assert!(matches!(k.split_prime(3), Splitting::Inert(_)));
        let Splitting::Ramified(p) = k.split_prime(2) else { panic!("2 ramifies in Q(i)") };
        assert_eq!(p, Ideal::principal(&k, gi(1, 1)).unwrap());
        assert_eq!(p.pow(2), Ideal::from_int(&k, 2).unwrap());
    }

    #[test]
    fn hnf_validation() {
        let k = QuadField::gaussian();
        assert!(Ideal::from_hnf(&k, 5, 4, 1).is_ok());
        assert!(Ideal::from_hnf(&k, 5, 2, 1).is_err());
        assert!(Ideal::from_hnf(&k, 6, 3, 2).is_err());
    }

    #[test]
    fn factorization_recovers_product() {
        let k = QuadField::new(-23).unwrap();
        let a = Ideal::principal(&k, QInt::new(7, 3)).unwrap();
        let f = a.factor();
        let prod = f.iter().fold(Ideal::unit(&k), |acc, (p, e)| acc.mul(&p.pow(*e)));
        assert_eq!(prod, a);
        assert!(f.iter().all(|(p, _)| factor(p.norm()).len() == 1));
    }

    #[test]
    fn non_principal_ideal_has_no_generator() {
        let k = QuadField::new(-23).unwrap();
        let p2 = &k.primes_above(2)[0];
        assert_eq!(p2.norm(), 2);
        assert!(p2.principal_generator().is_none());
        assert!(p2.pow(3).principal_generator().is_some());
    }
}

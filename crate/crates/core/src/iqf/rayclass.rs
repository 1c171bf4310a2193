use super::classgroup::{class_group, ClassGroup};
use super::field::{QInt, QuadField};
use super::ideal::Ideal;
use crate::arith::rat::is_prime;
use crate::arith::snf::{GeneratedGroup, Presentation};
use crate::arith::FinAbGroup;
use crate::error::{Error, Result};
use serde_json::{json, Value};

/// Largest modulus norm whose residue ring is enumerated.
pub const MAX_MODULUS_NORM: u64 = 1_000_000;

/// `H_n = I^n / P_{n,1}`, presented on the `(O_K/n)^x` factors followed by
/// one prime ideal per class-group factor.
pub struct RayClassGroup {
    pub field: QuadField,
    pub modulus: Ideal,
    prime_divisors: Vec<Ideal>,
    residues: GeneratedGroup<QInt>,
    class: ClassGroup,
    class_reps: Vec<Ideal>,
    pres: Presentation,
    unit_image: u64,
}

impl RayClassGroup {
    pub fn new(k: &QuadField, modulus: &Ideal) -> Result<Self> {
        if modulus.norm() > MAX_MODULUS_NORM {
            return Err(Error::InvalidInput(format!("modulus norm {} above {MAX_MODULUS_NORM}", modulus.norm())));
        }
        let prime_divisors: Vec<Ideal> = modulus.factor().into_iter().map(|(p, _)| p).collect();
        let is_unit = |v: QInt| prime_divisors.iter().all(|p| !p.contains(v));
        let units: Vec<QInt> = modulus.residues().filter(|&v| is_unit(v)).collect();
        let one = modulus.reduce(QInt::int(1));
        let residues = GeneratedGroup::build(one, &units, |a, b| modulus.reduce(k.mul(*a, *b)), "r");

        let class = class_group(k)?;
        let norm = modulus.norm();
        let class_reps: Vec<Ideal> = (0..class.group().orders.len())
            .map(|j| {
                let mut target = class.group().identity();
                target[j] = 1;
                prime_with_class(&class, &target, norm)
            })
            .collect();

        let res_group = residues.presentation.group.clone();
        let r = res_group.orders.len();
        let s = class_reps.len();
        let mut rows: Vec<Vec<i128>> = Vec::new();
        for (i, &n) in res_group.orders.iter().enumerate() {
            let mut row = vec![0i128; r + s];
            row[i] = n as i128;
            rows.push(row);
        }
        let u = k.unit_generator();
        let mut row = vec![0i128; r + s];
        for (i, x) in res_coords(&residues, modulus, u).into_iter().enumerate() {
            row[i] = x as i128;
        }
        rows.push(row);
        for (j, q) in class_reps.iter().enumerate() {
            let m = class.group().orders[j];
            let beta = q.pow(m as u32).principal_generator().expect("order kills the class");
            let mut row = vec![0i128; r + s];
            for (i, x) in res_coords(&residues, modulus, beta).into_iter().enumerate() {
                row[i] = -(x as i128);
            }
            row[r + j] = m as i128;
            rows.push(row);
        }
        let pres = Presentation::new(r + s, &rows, "h").expect("ray class groups are finite");

        let mut unit_image = 1u64;
        let mut p = modulus.reduce(u);
        while p != one {
            p = modulus.reduce(k.mul(p, u));
            unit_image += 1;
        }
        Ok(RayClassGroup { field: *k, modulus: modulus.clone(), prime_divisors, residues, class, class_reps, pres, unit_image })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.pres.group
    }

    pub fn order(&self) -> u64 {
        self.group().order()
    }

    pub fn residue_order(&self) -> u64 {
        self.residues.order() as u64
    }

    pub fn unit_image_order(&self) -> u64 {
        self.unit_image
    }

    pub fn class_number(&self) -> u64 {
        self.class.order()
    }

    pub fn is_unit_mod(&self, v: QInt) -> bool {
        self.prime_divisors.iter().all(|p| !p.contains(v))
    }

    fn word(&self, a: &Ideal) -> Result<Vec<i128>> {
        if !a.coprime(&self.modulus) {
            return Err(Error::NotCoprime);
        }
        let c = self.class.dlog(a);
        let mut prod = a.clone();
        let mut shift = Vec::new();
        for (j, q) in self.class_reps.iter().enumerate() {
            let m = self.class.group().orders[j] as i64;
            let e = (m - c[j]).rem_euclid(m);
            prod = prod.mul(&q.pow(e as u32));
            shift.push(e);
        }
        let beta = prod.principal_generator().expect("trivial class");
        let mut w: Vec<i128> = res_coords(&self.residues, &self.modulus, beta).into_iter().map(|x| x as i128).collect();
        w.extend(shift.iter().map(|&e| -(e as i128)));
        Ok(w)
    }

    pub fn dlog(&self, a: &Ideal) -> Result<Vec<i64>> {
        Ok(self.pres.dlog(&self.word(a)?))
    }

    /// Class of the principal ideal `(alpha)`.
    pub fn dlog_elt(&self, alpha: QInt) -> Result<Vec<i64>> {
        self.dlog(&Ideal::principal(&self.field, alpha)?)
    }

    /// Degree-one primes of norm below `limit` realising each invariant
    /// factor generator, when found.
    pub fn generator_ideals(&self, limit: u64) -> Vec<Option<Ideal>> {
        let g = self.group();
        let mut found: Vec<Option<Ideal>> = vec![None; g.orders.len()];
        for l in (2..limit).filter(|&l| is_prime(l) && self.modulus.norm() % l != 0) {
            for p in self.field.split_prime(l).primes() {
                let Ok(d) = self.dlog(&p) else { continue };
                if let Some(i) = (0..d.len()).find(|&i| d[i] == 1 && d.iter().enumerate().all(|(j, &x)| j == i || x == 0)) {
                    if found[i].is_none() {
                        found[i] = Some(p);
                    }
                }
            }
            if found.iter().all(Option::is_some) {
                break;
            }
        }
        found
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .generator_ideals(2000)
            .into_iter()
            .map(|p| p.map(|p| p.to_json()).unwrap_or(Value::Null))
            .collect();
        json!({
            "field": self.field.to_json(),
            "modulus": self.modulus.to_json(),
            "factors": self.group().orders,
            "order": self.order(),
            "generators": gens,
            "residue_units": self.residue_order(),
            "unit_image": self.unit_image,
            "class_number": self.class_number(),
        })
    }
}

fn res_coords(res: &GeneratedGroup<QInt>, modulus: &Ideal, v: QInt) -> Vec<i64> {
    res.dlog(&modulus.reduce(v)).expect("element is a unit modulo n")
}

fn prime_with_class(cl: &ClassGroup, target: &[i64], avoid: u64) -> Ideal {
    (2u64..)
        .filter(|&l| is_prime(l) && avoid % l != 0)
        .flat_map(|l| cl.field.split_prime(l).primes())
        .find(|p| p.norm() == p.a as u64 && cl.dlog(p) == target)
        .expect("every class contains primes of degree one")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gaussian(n: &[(i64, i64)]) -> (QuadField, Ideal) {
        let k = QuadField::gaussian();
        let g = n.iter().fold(QInt::int(1), |acc, &(a, b)| k.mul(acc, QuadField::gaussian_int(a, b)));
        (k, Ideal::principal(&k, g).unwrap())
    }

    #[test]
    fn gaussian_small_moduli() {
        let (k, one) = gaussian(&[]);
        assert_eq!(RayClassGroup::new(&k, &one).unwrap().order(), 1);
        let (k, three) = gaussian(&[(3, 0)]);
        let h = RayClassGroup::new(&k, &three).unwrap();
        assert_eq!(h.residue_order(), 8);
        assert_eq!(h.unit_image_order(), 4);
        assert_eq!(h.group().orders, vec![2]);
    }

    #[test]
    fn order_formula() {
        for d in [-4, -3, -15, -23] {
            let k = QuadField::new(d).unwrap();
            for (x, y) in [(3, 0), (2, 1), (5, 1), (4, 0), (7, 2)] {
                let n = Ideal::principal(&k, QInt::new(x, y)).unwrap();
                let h = RayClassGroup::new(&k, &n).unwrap();
                assert_eq!(h.order() * h.unit_image_order(), h.class_number() * h.residue_order(), "d={d} n={n:?}");
            }
        }
    }

    #[test]
    fn congruent_to_one_is_trivial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in [-4, -23] {
            let k = QuadField::new(d).unwrap();
            let n = Ideal::principal(&k, QInt::new(6, 1)).unwrap();
            let h = RayClassGroup::new(&k, &n).unwrap();
            let [e1, e2] = n.basis();
            for _ in 0..20 {
                let t = QInt::new(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
                let s = QInt::new(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
                let alpha = k.add(QInt::int(1), k.add(k.mul(t, e1), k.mul(s, e2)));
                if alpha == QInt::int(0) {
                    continue;
                }
                assert_eq!(h.dlog_elt(alpha).unwrap(), h.group().identity());
            }
        }
    }

    #[test]
    fn dlog_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let k = QuadField::new(-23).unwrap();
        let n = Ideal::principal(&k, QInt::int(5)).unwrap();
        let h = RayClassGroup::new(&k, &n).unwrap();
        let primes: Vec<Ideal> =
            [2u64, 3, 7, 11, 13, 29, 31].iter().flat_map(|&l| k.primes_above(l)).collect();
        for _ in 0..30 {
            let a = &primes[rng.gen_range(0..primes.len())];
            let b = &primes[rng.gen_range(0..primes.len())];
            let lhs = h.dlog(&a.mul(b)).unwrap();
            let rhs = h.group().add(&h.dlog(a).unwrap(), &h.dlog(b).unwrap());
            assert_eq!(lhs, rhs);
        }
        assert_eq!(h.dlog(&k.primes_above(5)[0]), Err(Error::NotCoprime));
    }
}

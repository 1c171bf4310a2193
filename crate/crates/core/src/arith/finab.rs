use super::cyclo::CycNum;
use super::ring::Ring;
use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// `Z/n_1 x ... x Z/n_k` with every `n_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinAbGroup {
    pub orders: Vec<u64>,
    pub labels: Vec<String>,
}

/// Character sending the `i`-th generator to `zeta_{n_i}^{exps[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub exps: Vec<i64>,
}

/// Reduction map from a group onto its `p`-primary quotient.
#[derive(Clone, Debug)]
pub struct Projection {
    /// For each source generator, the target generator it maps to.
    pub targets: Vec<Option<usize>>,
    pub target: FinAbGroup,
}

impl Projection {
    pub fn apply(&self, g: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.target.orders.len()];
        for (i, t) in self.targets.iter().enumerate() {
            if let Some(j) = t {
                out[*j] = g[i];
            }
        }
        self.target.reduce(&out)
    }
}

impl FinAbGroup {
    pub fn new(orders: Vec<u64>) -> Self {
        let orders: Vec<u64> = orders.into_iter().filter(|&n| n > 1).collect();
        let labels = (0..orders.len()).map(|i| format!("g{i}")).collect();
        FinAbGroup { orders, labels }
    }

    pub fn trivial() -> Self {
        Self::new(vec![])
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, b| a.lcm(b))
    }

    pub fn identity(&self) -> Vec<i64> {
        vec![0; self.orders.len()]
    }

    pub fn reduce(&self, g: &[i64]) -> Vec<i64> {
        g.iter().zip(&self.orders).map(|(x, n)| x.rem_euclid(*n as i64)).collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &n in &self.orders {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (0..n as i64).map(move |k| {
                        let mut q = p.clone();
                        q.push(k);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn characters(&self) -> Vec<Character> {
        self.elements().into_iter().map(|exps| Character { exps }).collect()
    }

    /// The `p`-primary quotient with its reduction map.
    pub fn quotient_p(&self, p: u64) -> Projection {
        let mut orders = Vec::new();
        let mut labels = Vec::new();
        let mut targets = Vec::new();
        for (i, &n) in self.orders.iter().enumerate() {
            let mut q = 1;
            let mut r = n;
            while r % p == 0 {
                r /= p;
                q *= p;
            }
            if q > 1 {
                targets.push(Some(orders.len()));
                orders.push(q);
                labels.push(self.labels[i].clone());
            } else {
                targets.push(None);
            }
        }
        Projection { targets, target: FinAbGroup { orders, labels } }
    }
}

impl Character {
    pub fn trivial(g: &FinAbGroup) -> Self {
        Character { exps: vec![0; g.orders.len()] }
    }

    /// Build a character from its values on the generators, rejecting values
    /// that are not roots of unity of the generator's order.
    pub fn from_values(g: &FinAbGroup, values: &[CycNum]) -> Result<Self> {
        if values.len() != g.orders.len() {
            return Err(Error::InvalidCharacter);
        }
        let mut exps = Vec::new();
        for (v, &n) in values.iter().zip(&g.orders) {
            if v.pow(n as i64) != CycNum::one() {
                return Err(Error::InvalidCharacter);
            }
            let k = (0..n as i64).find(|&k| CycNum::zeta(n, k) == *v).ok_or(Error::InvalidCharacter)?;
            exps.push(k);
        }
        Ok(Character { exps })
    }

    /// Exponent `e` with `chi(x) = zeta_M^e`, `M` the group exponent.
    pub fn log_value(&self, g: &FinAbGroup, x: &[i64]) -> i64 {
        let m = g.exponent() as i64;
        let s: i64 = self
            .exps
            .iter()
            .zip(x)
            .zip(&g.orders)
            .map(|((k, xi), n)| k * xi * (m / *n as i64))
            .sum();
        s.rem_euclid(m)
    }

    pub fn value(&self, g: &FinAbGroup, x: &[i64]) -> CycNum {
        CycNum::zeta(g.exponent(), self.log_value(g, x))
    }

    pub fn mul(&self, o: &Self, g: &FinAbGroup) -> Self {
        Character { exps: g.add(&self.exps, &o.exps) }
    }

    /// Pull back along a projection onto a quotient.
    pub fn pullback(&self, proj: &Projection, source: &FinAbGroup) -> Self {
        let exps: Vec<i64> = proj
            .targets
            .iter()
            .enumerate()
            .map(|(i, t)| match t {
                Some(j) => {
                    let n = source.orders[i] as i64;
                    let q = proj.target.orders[*j] as i64;
                    self.exps[*j] * (n / q)
                }
                None => 0,
            })
            .collect();
        Character { exps: source.reduce(&exps) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characters_are_homomorphisms() {
        let g = FinAbGroup::new(vec![2, 6]);
        for chi in g.characters() {
            for a in g.elements() {
                for b in g.elements() {
                    let lhs = chi.value(&g, &g.add(&a, &b));
                    let rhs = chi.value(&g, &a).rmul(&chi.value(&g, &b));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn p_quotient() {
        let g = FinAbGroup::new(vec![2, 12]);
        let q = g.quotient_p(2);
        assert_eq!(q.target.orders, vec![2, 4]);
        assert_eq!(q.apply(&[1, 7]), vec![1, 3]);
        let q3 = g.quotient_p(3);
        assert_eq!(q3.target.orders, vec![3]);
        // pulled back characters factor through the projection
        for chi in q3.target.characters() {
            let pb = chi.pullback(&q3, &g);
            for x in g.elements() {
                assert_eq!(pb.value(&g, &x), chi.value(&q3.target, &q3.apply(&x)));
            }
        }
    }

    #[test]
    fn from_values_rejects_wrong_order() {
        let g = FinAbGroup::new(vec![4]);
        assert!(Character::from_values(&g, &[CycNum::zeta(4, 1)]).is_ok());
        assert_eq!(Character::from_values(&g, &[CycNum::zeta(3, 1)]), Err(Error::InvalidCharacter));
    }
}

use super::cosets::decompose_double_coset;
use crate::arith::rat::{rat, BigRat};
use crate::arith::ToJson;
use crate::error::Result;
use crate::padic::{cartan_label, coset_key, CartanLabel};
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Gl2,
    Gsp4,
}

/// Finite combination of double-coset characteristic functions.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeOp {
    pub group: Group,
    pub prime: u64,
    pub terms: BTreeMap<CartanLabel, BigRat>,
}

impl HeckeOp {
    pub fn single(label: CartanLabel, prime: u64) -> Self {
        let group = if label.size() == 2 { Group::Gl2 } else { Group::Gsp4 };
        let mut terms = BTreeMap::new();
        terms.insert(label, rat(1));
        HeckeOp { group, prime, terms }
    }

    pub fn identity(group: Group, prime: u64) -> Self {
        match group {
            Group::Gl2 => Self::single(CartanLabel::Gl2 { e1: 0, e2: 0 }, prime),
            Group::Gsp4 => Self::single(CartanLabel::Gsp4 { a: 0, b: 0, c: 0 }, prime),
        }
    }

    /// `K diag(l, l, 1, 1) K`.
    pub fn t_op(prime: u64) -> Self {
        Self::single(CartanLabel::Gsp4 { a: 1, b: 1, c: 1 }, prime)
    }

    /// `K diag(l^2, l, l, 1) K`.
    pub fn r_op(prime: u64) -> Self {
        Self::single(CartanLabel::Gsp4 { a: 2, b: 1, c: 2 }, prime)
    }

    /// `K l K` (central).
    pub fn s_op(prime: u64) -> Self {
        Self::single(CartanLabel::Gsp4 { a: 1, b: 1, c: 2 }, prime)
    }

    pub fn gl2_t(prime: u64) -> Self {
        Self::single(CartanLabel::Gl2 { e1: 1, e2: 0 }, prime)
    }

    pub fn gl2_s(prime: u64) -> Self {
        Self::single(CartanLabel::Gl2 { e1: 1, e2: 1 }, prime)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &o.terms {
            let e = out.terms.entry(*l).or_insert_with(BigRat::zero);
            *e += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Convolution with `vol(K) = 1`: the coefficient of `K c K` in
    /// `ch(K a K) * ch(K b K)` is the number of pairs `(i, j)` of left-coset
    /// representatives with `a_i b_j K = c K`.
    pub fn convolve(&self, o: &Self) -> Result<Self> {
        assert_eq!(self.group, o.group);
        assert_eq!(self.prime, o.prime);
        let p = self.prime;
        let mut terms: BTreeMap<CartanLabel, BigRat> = BTreeMap::new();
        let mut targets: HashMap<CartanLabel, crate::padic::MatQ> = HashMap::new();
        for (la, ca) in &self.terms {
            let ra = decompose_double_coset(*la, p)?;
            for (lb, cb) in &o.terms {
                let rb = decompose_double_coset(*lb, p)?;
                let mut hits: BTreeMap<CartanLabel, i64> = BTreeMap::new();
                for a in &ra {
                    for b in &rb {
                        let g = a.mul(b);
                        let lab = cartan_label(&g)?;
                        let target = targets.entry(lab).or_insert_with(|| coset_key(&lab.representative(p)));
                        let h = hits.entry(lab).or_insert(0);
                        if coset_key(&g) == *target {
                            *h += 1;
                        }
                    }
                }
                for (lab, h) in hits {
                    *terms.entry(lab).or_insert_with(BigRat::zero) += ca * cb * rat(h);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HeckeOp { group: self.group, prime: p, terms })
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(l, c)| json!({ "label": l.to_json(), "coeff": c.to_json() })).collect();
        json!({ "group": format!("{:?}", self.group), "prime": self.prime, "terms": terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let t = HeckeOp::t_op(2);
        assert_eq!(t.convolve(&HeckeOp::identity(Group::Gsp4, 2)).unwrap(), t);
        assert_eq!(HeckeOp::identity(Group::Gsp4, 2).convolve(&t).unwrap(), t);
    }

    #[test]
    fn central_shift() {
        let st = HeckeOp::s_op(2).convolve(&HeckeOp::t_op(2)).unwrap();
        assert_eq!(st, HeckeOp::single(CartanLabel::Gsp4 { a: 2, b: 2, c: 3 }, 2));
    }

    #[test]
    fn gl2_t_squared() {
        // oracle: coset-list product regrouped by label, l = 3
        let t = HeckeOp::gl2_t(3);
        let t2 = t.convolve(&t).unwrap();
        let expect = HeckeOp::single(CartanLabel::Gl2 { e1: 2, e2: 0 }, 3).add(&HeckeOp::gl2_s(3).scale(&rat(4)));
        assert_eq!(t2, expect);
    }
}

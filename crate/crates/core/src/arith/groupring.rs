use super::cyclo::CycNum;
use super::finab::{Character, FinAbGroup, Projection};
use super::ring::Ring;
use std::collections::BTreeMap;

/// Element of the group ring `L[G]` with `L` cyclotomic.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElt {
    pub group: FinAbGroup,
    pub terms: BTreeMap<Vec<i64>, CycNum>,
}

impl GroupRingElt {
    pub fn zero(group: &FinAbGroup) -> Self {
        GroupRingElt { group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(group: &FinAbGroup, g: &[i64], c: CycNum) -> Self {
        let mut out = Self::zero(group);
        out.push(group.reduce(g), c);
        out
    }

    pub fn scalar(group: &FinAbGroup, c: CycNum) -> Self {
        Self::monomial(group, &group.identity(), c)
    }

    fn push(&mut self, g: Vec<i64>, c: CycNum) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(g.clone()).or_insert_with(CycNum::zero);
        *e = e.radd(&c);
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &o.terms {
            out.push(g.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&CycNum::from_int(-1)))
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let mut out = Self::zero(&self.group);
        for (g, x) in &self.terms {
            out.push(g.clone(), x.rmul(c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.group);
        for (g, a) in &self.terms {
            for (h, b) in &o.terms {
                out.push(self.group.add(g, h), a.rmul(b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::scalar(&self.group, CycNum::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of `c * [g]`; `None` for anything but a unit multiple of a
    /// group element.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (g, c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(&self.group, &self.group.neg(g), c.inv()?))
    }

    pub fn apply_char(&self, chi: &Character) -> CycNum {
        self.terms
            .iter()
            .fold(CycNum::zero(), |acc, (g, c)| acc.radd(&c.rmul(&chi.value(&self.group, g))))
    }

    pub fn pushforward(&self, proj: &Projection) -> Self {
        let mut out = Self::zero(&proj.target);
        for (g, c) in &self.terms {
            out.push(proj.apply(g), c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characters_are_ring_maps() {
        let g = FinAbGroup::new(vec![4]);
        let a = GroupRingElt::monomial(&g, &[1], CycNum::from_int(2)).add(&GroupRingElt::scalar(&g, CycNum::one()));
        let b = GroupRingElt::monomial(&g, &[3], CycNum::zeta(3, 1));
        for chi in g.characters() {
            assert_eq!(a.mul(&b).apply_char(&chi), a.apply_char(&chi).rmul(&b.apply_char(&chi)));
        }
        let inv = b.monomial_inverse().unwrap();
        assert_eq!(b.mul(&inv), GroupRingElt::scalar(&g, CycNum::one()));
        assert!(a.monomial_inverse().is_none());
    }
}

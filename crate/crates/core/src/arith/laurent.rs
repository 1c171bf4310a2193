use super::ring::Ring;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Largest absolute exponent a product may carry.
pub const MAX_EXPONENT: i64 = 64;

/// Sparse monomial: variable name to non-zero exponent.
pub type Monomial = BTreeMap<String, i64>;

/// Multivariate Laurent polynomial with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiLaurent<C: Ring> {
    pub terms: BTreeMap<Monomial, C>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    let mut out = a.clone();
    for (v, e) in b {
        let s = out.get(v).copied().unwrap_or(0) + e;
        if s.abs() > MAX_EXPONENT {
            return Err(Error::ExponentOverflow(s));
        }
        if s == 0 {
            out.remove(v);
        } else {
            out.insert(v.clone(), s);
        }
    }
    Ok(out)
}

impl<C: Ring> MultiLaurent<C> {
    pub fn zero() -> Self {
        MultiLaurent { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::new(), c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiLaurent { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::var_pow(name, 1)
    }

    pub fn var_pow(name: &str, e: i64) -> Self {
        let mut m = Monomial::new();
        if e != 0 {
            m.insert(name.to_string(), e);
        }
        Self::term(m, C::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.radd(&c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.push(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.rneg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.push(m.clone(), x.rmul(c));
        }
        out
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.push(mono_mul(m1, m2)?, c1.rmul(c2));
            }
        }
        Ok(out)
    }

    /// Panics on exponent overflow; use [`Self::try_mul`] to handle it.
    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("Laurent exponent overflow")
    }

    pub fn try_pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        self.try_pow(e).expect("Laurent exponent overflow")
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MultiLaurent<D> {
        let mut out = MultiLaurent::zero();
        for (m, c) in &self.terms {
            out.push(m.clone(), f(c));
        }
        out
    }

    /// Coefficients of the powers of `var`, keyed by exponent.
    pub fn collect_in(&self, var: &str) -> BTreeMap<i64, Self> {
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.remove(var).unwrap_or(0);
            out.entry(e).or_insert_with(Self::zero).push(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Coefficient of `var^e` with `var` removed.
    pub fn coeff_of(&self, var: &str, e: i64) -> Self {
        self.collect_in(var).remove(&e).unwrap_or_else(Self::zero)
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&Monomial::new()).cloned().unwrap_or_else(C::zero)
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.terms.keys().flat_map(|m| m.keys().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Replace `var` by `value`. Negative powers need a single-term value.
    pub fn subst(&self, var: &str, value: &Self) -> Result<Self> {
        let inverse = if value.terms.len() == 1 {
            let (m, c) = value.terms.iter().next().unwrap();
            let inv_m: Monomial = m.iter().map(|(k, e)| (k.clone(), -e)).collect();
            c.inv().map(|ci| Self::term(inv_m, ci))
        } else {
            None
        };
        let mut out = Self::zero();
        for (e, coeff) in self.collect_in(var) {
            let p = if e >= 0 {
                value.try_pow(e as u32)?
            } else {
                inverse
                    .as_ref()
                    .ok_or_else(|| Error::NonMonomialInverse(var.to_string()))?
                    .try_pow((-e) as u32)?
            };
            out = out.add(&coeff.try_mul(&p)?);
        }
        Ok(out)
    }

    /// Evaluate every variable outside `keep` at the assigned ring value.
    pub fn laurent_eval(&self, assign: &BTreeMap<String, C>, keep: &[&str]) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = Monomial::new();
            for (v, e) in m {
                if keep.contains(&v.as_str()) {
                    kept.insert(v.clone(), *e);
                    continue;
                }
                let x = assign.get(v).ok_or_else(|| Error::MissingVariable(v.clone()))?;
                if *e < 0 && x.inv().is_none() {
                    return Err(Error::NotInvertible);
                }
                coeff = coeff.rmul(&x.pow(*e));
            }
            out.push(kept, coeff);
        }
        Ok(out)
    }

    /// Full evaluation to a ring element.
    pub fn eval(&self, assign: &BTreeMap<String, C>) -> Result<C> {
        Ok(self.laurent_eval(assign, &[])?.constant_term())
    }

    /// Human-readable rendering for reports.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .iter()
                    .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                    .collect();
                if mono.is_empty() {
                    format!("({c:?})")
                } else {
                    format!("({c:?})*{}", mono.join("*"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{rat, BigRat};

    type P = MultiLaurent<BigRat>;

    #[test]
    fn arithmetic_and_collect() {
        let x = P::var("x");
        let y = P::var("y");
        let p = x.add(&y).pow(3);
        assert_eq!(p.terms.len(), 4);
        let c = p.collect_in("x");
        assert_eq!(c[&2], y.scale(&rat(3)));
        let inv = P::var_pow("x", -1);
        assert_eq!(x.mul(&inv), P::one());
    }

    #[test]
    fn substitution() {
        let x = P::var("x");
        let p = x.pow(2).add(&P::var_pow("x", -1));
        let two = P::constant(rat(2));
        let r = p.subst("x", &two).unwrap();
        assert_eq!(r.constant_term(), rat(4) + BigRat::new(1.into(), 2.into()));
        let sum = P::var("a").add(&P::var("b"));
        assert!(matches!(p.subst("x", &sum), Err(Error::NonMonomialInverse(_))));
    }

    #[test]
    fn overflow_is_reported() {
        let x = P::var_pow("x", 40);
        assert!(matches!(x.try_mul(&x), Err(Error::ExponentOverflow(80))));
    }

    #[test]
    fn eval_missing_variable() {
        let p = P::var("x").add(&P::var("y"));
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), rat(1));
        assert!(matches!(p.eval(&a), Err(Error::MissingVariable(v)) if v == "y"));
        let part = p.laurent_eval(&a, &["y"]).unwrap();
        assert_eq!(part, P::one().add(&P::var("y")));
    }
}

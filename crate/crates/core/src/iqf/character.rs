use super::classgroup::class_group;
use super::field::{QInt, QuadField};
use super::ideal::Ideal;
use super::rayclass::RayClassGroup;
use crate::arith::rat::rat;
use crate::arith::snf::GeneratedGroup;
use crate::arith::{Character, CycNum, FinAbGroup, Ring, ToJson};
use crate::error::{Error, Result};
use num_integer::Integer;
use serde_json::{json, Value};
use std::sync::Arc;

/// Groessencharacter of infinity type `(-1, 0)`, `psi((alpha)) =
/// alpha * omega~(alpha)`, optionally twisted by a character of a ray class
/// group whose modulus is divisible by the conductor.
#[derive(Clone)]
pub struct HeckeChar {
    pub field: QuadField,
    pub conductor: Ideal,
    residues: Arc<GeneratedGroup<QInt>>,
    omega_tilde: Character,
    twist: Option<(Arc<RayClassGroup>, Character)>,
}

impl HeckeChar {
    /// The first character of `(O_K/f)^x` (in the element order of its
    /// dual) that restricts to `u -> u^{-1}` on `O_K^x`.
    pub fn construct(k: &QuadField, f: &Ideal) -> Result<Self> {
        let h = class_group(k)?.order();
        if h > 1 {
            return Err(Error::RootNotInValueField(h));
        }
        let primes: Vec<Ideal> = f.factor().into_iter().map(|(p, _)| p).collect();
        let units: Vec<QInt> = f.residues().filter(|&v| primes.iter().all(|p| !p.contains(v))).collect();
        let one = f.reduce(QInt::int(1));
        let residues = GeneratedGroup::build(one, &units, |a, b| f.reduce(k.mul(*a, *b)), "w");
        let g = &residues.presentation.group;
        let u = k.unit_generator();
        let target = k.embed(u).inv().expect("unit");
        let du = residues.dlog(&f.reduce(u)).expect("units are units");
        let omega_tilde = g
            .characters()
            .into_iter()
            .find(|chi| chi.value(g, &du) == target)
            .ok_or(Error::UnitObstruction)?;
        Ok(HeckeChar { field: *k, conductor: f.clone(), residues: Arc::new(residues), omega_tilde, twist: None })
    }

    /// Modulus whose coprime ideals the character is defined on.
    pub fn modulus(&self) -> &Ideal {
        match &self.twist {
            Some((ray, _)) => &ray.modulus,
            None => &self.conductor,
        }
    }

    pub fn residue_group(&self) -> &FinAbGroup {
        &self.residues.presentation.group
    }

    /// `omega~(alpha)` for `alpha` prime to the conductor.
    pub fn omega_tilde(&self, alpha: QInt) -> Result<CycNum> {
        let d = self.residues.dlog(&self.conductor.reduce(alpha)).ok_or(Error::NotCoprime)?;
        Ok(self.omega_tilde.value(self.residue_group(), &d))
    }

    /// Untwisted value on a principal ideal.
    pub fn eval_principal(&self, alpha: QInt) -> Result<CycNum> {
        Ok(self.field.embed(alpha).rmul(&self.omega_tilde(alpha)?))
    }

    pub fn eval(&self, a: &Ideal) -> Result<CycNum> {
        if !a.coprime(self.modulus()) {
            return Err(Error::NotCoprime);
        }
        let g = a.principal_generator().expect("class number one");
        let base = self.eval_principal(g)?;
        match &self.twist {
            Some((ray, chi)) => Ok(base.rmul(&chi.value(ray.group(), &ray.dlog(a)?))),
            None => Ok(base),
        }
    }

    /// `(psi chi)(a) = psi(a) chi([a])`.
    pub fn twist(&self, ray: &Arc<RayClassGroup>, chi: &Character) -> Result<Self> {
        if self.twist.is_some() || !ray.modulus.is_subset(&self.conductor) {
            return Err(Error::ModulusMismatch);
        }
        Ok(HeckeChar { twist: Some((ray.clone(), chi.clone())), ..self.clone() })
    }

    pub fn is_twisted(&self) -> bool {
        self.twist.is_some()
    }

    /// `psi((n)) / n`, the nebentypus-side Dirichlet character; for a twist
    /// this includes `chi` restricted to `Z`.
    pub fn omega(&self, n: i64) -> Result<CycNum> {
        let i = Ideal::from_int(&self.field, n)?;
        let v = self.eval(&i)?;
        Ok(v.scale(&rat(n).recip()))
    }

    /// `omega(n)` for `0 < n < N(f)` prime to `N(f)`.
    pub fn omega_table(&self) -> Result<Vec<(u64, CycNum)>> {
        let m = self.modulus().norm();
        (1..m.max(2)).filter(|n| n.gcd(&m) == 1).map(|n| Ok((n, self.omega(n as i64)?))).collect()
    }

    pub fn to_json(&self) -> Value {
        let table: Vec<Value> = self
            .omega_table()
            .unwrap_or_default()
            .into_iter()
            .map(|(n, v)| json!([n, v.to_json()]))
            .collect();
        let twist = self.twist.as_ref().map(|(ray, chi)| {
            json!({ "modulus": ray.modulus.to_json(), "group": ray.group().orders, "chi": chi.exps })
        });
        json!({
            "field": self.field.to_json(),
            "modulus": self.conductor.to_json(),
            "infinity_type": [-1, 0],
            "residue_group": self.residue_group().orders,
            "omega_tilde": self.omega_tilde.exps,
            "omega": table,
            "class_extension": [],
            "twist": twist,
        })
    }
}

//! Exact computations around the Euler factor of `GSp4 x GL2` at a split
//! prime: the local Hecke algebras, the Satake-side eigenvalue polynomials,
//! the explicit coset decomposition of the `U'_l` operator, imaginary
//! quadratic ray class groups with their Hecke characters, CM newforms, and
//! the group-ring identities that assemble into a norm relation.

pub mod arith;
pub mod cm;
pub mod error;
pub mod gejima;

pub use error::{Error, Result};
pub mod hecke;
pub mod iqf;
pub mod padic;
pub mod report;
pub mod suite;

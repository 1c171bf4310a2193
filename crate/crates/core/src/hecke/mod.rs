//! Spherical Hecke algebras of `GL_2` and `GSp_4`, their Satake transforms,
//! the spin and Novodvorsky polynomials, and the local identities behind the
//! norm relations.

pub mod algebra;
pub mod cosets;
pub mod degeneracy;
pub mod integrality;
pub mod lfactor;
pub mod mellin;
pub mod satake;

pub use algebra::{Group, HeckeOp};
pub use cosets::{decompose_double_coset, enumerate_cosets};

//! CM newforms attached to Hecke characters and the group-ring identities
//! over ray class groups.

pub mod normrel;
pub mod phi;
pub mod qexp;
pub mod spin;
pub mod weights;

pub use normrel::{check_norm_relation, split_prime_data, PrSymbols, SplitPrime};
pub use phi::{bracket, check_phi_specialization, phi_defining_property, phi_n, PhiImage};
pub use qexp::{coefficient, ideals_of_norm, q_expansion, verify_eigenform, QExpansion};
pub use spin::{purity_check, q_l_twist_consistency, q_poly, spin_frobenius_poly, SpinFrobData};
pub use weights::{weight_exponents, weight_report, WeightExponents};

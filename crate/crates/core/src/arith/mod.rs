//! Exact arithmetic: rationals, cyclotomic numbers, the formal square root of a
//! prime, multivariate Laurent polynomials, finite abelian groups and their
//! group rings.

pub mod cyclo;
pub mod finab;
pub mod groupring;
pub mod json;
pub mod laurent;
pub mod rat;
pub mod ring;
pub mod snf;
pub mod sqrt_ext;

pub use cyclo::CycNum;
pub use finab::{Character, FinAbGroup};
pub use groupring::GroupRingElt;
pub use json::ToJson;
pub use laurent::{Monomial, MultiLaurent};
pub use rat::BigRat;
pub use ring::Ring;
pub use sqrt_ext::{sqrt_pow, SqrtExt, SqrtPrimeExt};

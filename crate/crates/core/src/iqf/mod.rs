//! Imaginary quadratic fields: integers, ideals in Hermite normal form,
//! class and ray class groups, and Groessencharacters of infinity type
//! `(-1, 0)`.

mod character;
mod classgroup;
mod field;
mod ideal;
mod parse;
mod rayclass;

pub use character::HeckeChar;
pub use classgroup::{class_group, form_of_ideal, ideal_of_form, reduced_forms, ClassGroup, Form, MAX_CLASS_DISC};
pub use field::{is_fundamental, QInt, QuadField};
pub use ideal::{Ideal, Splitting};
pub use parse::{parse_element, parse_ideal};
pub use rayclass::{RayClassGroup, MAX_MODULUS_NORM};

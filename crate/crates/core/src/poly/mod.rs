//! Exact polynomial arithmetic: integer Laurent polynomials, rational
//! polynomials, cyclotomic trial division and resultants.

mod cyclotomic;
mod laurent;
mod rational;
mod resultant;

pub use cyclotomic::{cyclotomic, cyclotomic_int, cyclotomic_root_profile, CyclotomicProfile};
pub use laurent::LaurentPoly;
pub use rational::QPoly;
pub use resultant::{nu, resultant};

//! Knot notations (braid words, PD codes) and Wirtinger presentations.

mod braid;
mod fixtures;
mod pd;
mod wirtinger;

pub use braid::{parse_braid, BraidWord};
pub use fixtures::{fixture, fixtures, parse_fixture_table, Fixture};
pub use pd::{parse_pd, parse_pd_code, PdCode};
pub use wirtinger::{exponent_sum, invert_word, Letter, Passage, WirtingerPresentation, Word};

use crate::error::Result;

/// Wirtinger presentation of the closure of a braid.
pub fn braid_to_wirtinger(b: &BraidWord) -> Result<WirtingerPresentation> {
    b.to_wirtinger()
}

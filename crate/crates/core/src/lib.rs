//! Exact computation of irreducible metabelian `SL(n, C)` and `GL(n, C)`
//! representations of knot groups.
//!
//! Pipeline: a knot ([`knot`]) gives a Wirtinger presentation, Fox calculus
//! ([`fox`]) turns it into a presentation of the Alexander module `H`, Smith
//! normal forms ([`snf`]) compute the homology of the branched covers
//! `H/(t^n - 1)` ([`homology`]), characters of those groups are enumerated and
//! counted ([`characters`]), and each `t`-orbit of order-`n` characters gives
//! an explicit monomial representation ([`reps`]).

pub mod arith;
pub mod bigjson;
pub mod characters;
pub mod error;
pub mod fox;
pub mod homology;
pub mod knot;
pub mod poly;
pub mod reps;
pub mod snf;

pub use characters::{
    character_order, count_direct, count_mobius_tower, count_report, enumerate_characters, existence_report,
    orbit_representative, t_act, Character, CountReport, ExistenceReport, Verdict,
};
pub use error::{Error, Result};
pub use fox::{
    alexander_module, alexander_module_deleting, alexander_polynomial, fox_derivative, invariant_factors_q,
    AlexanderModulePresentation,
};
pub use homology::{homology_ln, verify_order_formula, CoverHomology, Tower};
pub use knot::{braid_to_wirtinger, fixture, parse_braid, parse_pd, BraidWord, PdCode, WirtingerPresentation};
pub use poly::{LaurentPoly, QPoly};
pub use reps::{
    build_faithful_reducible, build_gl_rep, build_sl_rep, conjugacy_class_id, trace_fingerprint, verify_rep,
    MetabelianRep, MonomialMatrix, NumericRep, VerificationReport,
};
pub use snf::{smith_normal_form, IntMatrix, SmithDecomposition};

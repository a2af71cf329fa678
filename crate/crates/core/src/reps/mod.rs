//! Explicit representations: exact monomial metabelian representations,
//! trace fingerprints, and floating-point constructions.

pub mod faithful;
pub mod fingerprint;
pub mod metabelian;
pub mod monomial;

pub use faithful::{build_faithful_reducible, build_numeric_sample, golden_x, NumericRep, DEFAULT_TOLERANCE};
pub use fingerprint::{trace, trace_fingerprint, CyclotomicInteger, TraceFingerprint, DEFAULT_WORD_LENGTH};
pub use metabelian::{
    build_gl_rep, build_sl_rep, conjugacy_class_id, verify_rep, MetabelianRep, RepKind, VerificationReport,
};
pub use monomial::MonomialMatrix;

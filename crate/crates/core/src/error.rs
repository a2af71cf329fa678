use thiserror::Error;

/// Errors raised by the knot-representation pipeline.
///
/// Input problems (`Syntax`, `NotAKnot`, `InconsistentDiagram`) are the
/// caller's fault; everything else signals a broken internal invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("not a knot: {0}")]
    NotAKnot(String),

    #[error("inconsistent diagram: {0}")]
    InconsistentDiagram(String),

    #[error("presentation matrix has zero determinant")]
    ZeroDeterminant,

    #[error("character has order {actual}, expected {expected}")]
    OrderMismatch { expected: u32, actual: u32 },

    #[error("relator {index} does not evaluate to the identity")]
    RelationFailure { index: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{count} characters of order {n} is not divisible by {n}")]
    DivisibilityViolation { n: u32, count: u64 },

    #[error("H_1 of the {0}-fold branched cover is infinite")]
    InfiniteHomology(u32),

    #[error("numeric tolerance exceeded: residual {residual:e} >= {tolerance:e}")]
    ToleranceExceeded { residual: f64, tolerance: f64 },

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}

impl Error {
    /// True for errors caused by malformed or unsupported input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax(_)
                | Error::NotAKnot(_)
                | Error::InconsistentDiagram(_)
                | Error::UnknownFixture(_)
                | Error::TooLarge(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

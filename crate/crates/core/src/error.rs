//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation was called on a polynomial of the wrong degree.
    #[error("expected a degree-{expected} polynomial, got degree {actual}")]
    DegreeMismatch { expected: usize, actual: usize },

    /// Coefficient text could not be parsed.
    #[error("cannot parse polynomial coefficients: {0}")]
    Parse(String),

    /// A coefficient exceeds the supported magnitude.
    #[error("coefficient {value} exceeds the supported magnitude {limit}")]
    CoefficientRange { value: i64, limit: i64 },

    /// A parameter violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Every construction family requires a nonzero subleading coefficient.
    #[error("a must be nonzero")]
    InvalidFamily,

    /// The polynomial's root structure matches no supported construction family.
    #[error("root structure matches no supported construction family")]
    UnsupportedStructure,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("dimension {0} is unsupported (maximum is 4)")]
    UnsupportedDimension(usize),

    /// The requested quantity is undefined for this input.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid sweep spec: {0}")]
    InvalidSpec(String),

    #[error("numeric overflow: {0}")]
    NumericOverflow(String),

    /// An internal cross-check failed; this indicates a bug, not bad input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

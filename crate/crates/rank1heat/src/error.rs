use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The cotangent density case, for which no closed-form coefficients exist.
    #[error("cotangent case not covered by closed forms: {0}")]
    NotCovered(String),

    /// Addition of pi-scaled values with different pi exponents.
    #[error("pi-exponent mismatch in addition: {lhs} vs {rhs}")]
    PiExponentMismatch { lhs: i64, rhs: i64 },

    /// Numerical extraction ran out of working precision.
    #[error("working precision exhausted while extracting coefficient k = {k}")]
    PrecisionExhausted { k: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

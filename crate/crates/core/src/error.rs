use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent in affine mode")]
    NegativeExponentInAffine,
    #[error("variable index {index} out of range 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("mode mismatch between operands")]
    ModeMismatch,
    #[error("zero coordinate raised to a negative exponent")]
    ZeroToNegativePower,
    #[error("singular point of V")]
    SingularPoint,
    #[error("point lies off the torus (zero coordinate)")]
    OffTorus,
    #[error("empty support: {0}")]
    EmptySupport(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("asserted comparison failed: {0}")]
    ComparisonFailed(String),
    #[error("point {index}: {source}")]
    AtPoint { index: usize, source: Box<Error> },
    #[error("instance generation failed: {0}")]
    Generation(String),
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for errors caused by malformed files rather than by the mathematics.
    pub fn is_format(&self) -> bool {
        matches!(self, Error::Format(_))
    }
}

use thiserror::Error;

/// Errors raised by the exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid operand: {0}")]
    InvalidOperand(String),
    #[error("p-adic valuation of zero is undefined")]
    UndefinedValuation,
    #[error("power series with zero constant term is not invertible")]
    NonInvertibleSeries,
    #[error("partition degree {got} does not match dimension {expected}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid variety: {0}")]
    InvalidVariety(String),
    #[error("inconsistent point index: {0}")]
    InconsistentPointIndex(String),
    /// A computed quantity contradicts a proven identity. Always a bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// True for errors that indicate a defect in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalInconsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

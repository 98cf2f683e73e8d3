use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("strict mode violation: {0}")]
    StrictModeViolation(String),
    #[error("integrality failure: {0}")]
    IntegralityFailure(String),
    #[error("inputs not pairwise distinct: {0}")]
    NotDistinct(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("class cap exceeded: {0}")]
    CapExceeded(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("unbound generator index {0}")]
    UnboundGenerator(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

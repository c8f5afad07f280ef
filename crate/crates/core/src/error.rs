use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid exponent p = {0} (need p >= 1)")]
    InvalidExponent(f64),

    #[error("invalid Orlicz function: {0}")]
    InvalidOrlicz(String),

    #[error("norm bracket did not converge ({0})")]
    NonConvergentBracket(String),

    #[error("vector must be nonzero")]
    ZeroVector,

    #[error("norming check failed: {0}")]
    VerificationFailed(String),

    #[error("functionals are linearly dependent")]
    DependentFunctionals,

    #[error("invalid projection: {0}")]
    InvalidProjection(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("overlapping blocks at index {0}")]
    OverlappingBlocks(usize),

    #[error("search budget exhausted without a witness")]
    BudgetExhausted,
}

pub type Result<T> = std::result::Result<T, Error>;

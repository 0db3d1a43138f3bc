use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    /// Exact division left a remainder. Over the integers this means the input
    /// is not in the image of the ghost map (or an internal bug).
    #[error("non-integral division: {coefficient} is not divisible by {divisor}")]
    NonIntegralDivision { coefficient: String, divisor: BigInt },

    #[error("{op} is not supported over {ring}")]
    Unsupported { op: &'static str, ring: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("not division-closed: {0}")]
    NotDivisionClosed(String),

    #[error("truncation set mismatch: {0}")]
    SetMismatch(String),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("budget exceeded: {needed} elements needed, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

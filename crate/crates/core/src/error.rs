use thiserror::Error;

/// Errors raised by ring, module and decomposition computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("malformed ideal: {0}")]
    MalformedIdeal(String),
    #[error("malformed element: {0}")]
    MalformedElement(String),
    #[error("ambient module mismatch")]
    AmbientMismatch,
    #[error("ideal list is empty")]
    EmptyIdealList,
    #[error("at least {required} ideals are required, got {got}")]
    TooFewIdeals { required: usize, got: usize },
    #[error("ideals {0} and {1} are not comaximal")]
    NotComaximal(usize, usize),
    #[error("exponent must be at least 1")]
    InvalidExponent,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("chain l_M(X^k) did not stabilize within {0} steps")]
    NoStabilization(u64),
    #[error("condition not established for generator {generator}: {reason}")]
    ConditionNotEstablished { generator: usize, reason: String },
    #[error("module is not torsion")]
    NotTorsion,
    #[error("generator {0} has zero annihilator")]
    ZeroAnnihilator(usize),
    #[error("the ideal is the whole ring")]
    UnitIdeal,
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

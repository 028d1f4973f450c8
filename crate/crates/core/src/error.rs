use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("precision exhausted at {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("discriminant of the derivative cubic is positive")]
    DeltaPositive,
    #[error("not a q-Weil polynomial")]
    NotWeil,
    #[error("candidate budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

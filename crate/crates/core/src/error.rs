use thiserror::Error;

/// Errors produced by the enumeration, bound and construction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid equation: {0}")]
    InvalidEquation(String),

    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An exponential computation was refused or aborted by its [`Budget`](crate::Budget).
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("infeasible construction: {0}")]
    Infeasible(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    /// True for the errors that mean "too expensive" or "cannot be built",
    /// as opposed to malformed input.
    pub fn is_resource_or_infeasible(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::Infeasible(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

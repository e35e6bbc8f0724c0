use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("search budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("{what} is not certified (checked through dimension {bound})")]
    Uncertified { what: String, bound: usize },

    #[error("{what} needs simplices through dimension {needed}, only known through {known}")]
    Truncated { what: String, needed: usize, known: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Inconclusive outcomes, as opposed to definite failures.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::Uncertified { .. } | Error::Truncated { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

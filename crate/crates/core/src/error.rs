use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("infeasible: n < m ({robots} robots for {regions} regions)")]
    Infeasible { robots: u64, regions: usize },
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("oracle budget exceeded: {work} work units > {limit}")]
    BudgetExceeded { work: u128, limit: u128 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

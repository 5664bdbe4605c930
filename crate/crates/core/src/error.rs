use thiserror::Error;

/// Errors raised by parint operations.
///
/// Contract violations (empty inputs, `n = 0` for an index draw) panic instead;
/// these variants cover inputs that are well-formed but outside an operation's
/// domain.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid exponent {0}: must be a number >= 1 or `inf`")]
    InvalidExponent(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("budget n = {n} is not below N1*N2 = {cells}; exact computation is cheaper")]
    ExactCheaper { n: usize, cells: usize },

    #[error("inadmissible instance: {0}")]
    Inadmissible(String),

    #[error("malformed matrix: {0}")]
    Parse(String),

    #[error("budget violation: {algo} used {calls} oracle calls, bound is {bound}")]
    BudgetViolation { algo: &'static str, calls: u64, bound: u64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

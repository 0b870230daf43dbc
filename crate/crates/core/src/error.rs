use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A denominator factor of a series vanishes.
    #[error("pole: {0}")]
    Pole(String),
    /// A value overflowed or became non-finite.
    #[error("range error: {0}")]
    Range(String),
    /// A series did not reach its tolerance within the term budget.
    #[error(
        "truncation error: {what} not converged after {terms} terms (last term {last_term:e})"
    )]
    Truncation {
        what: String,
        terms: usize,
        last_term: f64,
    },
    /// Internal consistency check failed.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn pole(msg: impl Into<String>) -> Self {
        Error::Pole(msg.into())
    }

    pub fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    /// True for errors caused by the caller's parameters rather than by
    /// numerical failure.
    pub fn is_domain_like(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Pole(_))
    }
}

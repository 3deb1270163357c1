use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("element is not invertible in the etale algebra (zero divisor)")]
    NotInvertible,

    #[error("surface is singular: {0}")]
    Singular(String),

    #[error("table lookup failed: {0}")]
    Lookup(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Evaluation of a Brauer class refused at a point.
    #[error("refused: {0}")]
    Refused(String),

    /// An internal consistency check failed; indicates a bug or an input outside the theory.
    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }
}

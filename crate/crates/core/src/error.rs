use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    ZeroDivision,

    /// An exact division left a remainder. Seeing this always means an
    /// arithmetic bug upstream, never bad user input.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: String, found: String },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("linear system not uniquely solvable: {0}")]
    NotUniquelySolvable(String),

    #[error("not an idempotent: {0}")]
    NotIdempotent(String),

    #[error("not found: {0}")]
    NotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arity(expected: impl ToString, found: impl ToString) -> Self {
        Error::ArityMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

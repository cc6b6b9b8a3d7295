//! Error type shared across the library.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed symbol text or unparseable input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Structurally well-formed signature that is not in the accepted
    /// spherical vocabulary.
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    /// Numeric argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Mesh invariant violation (open edge, inconsistent orientation,
    /// degenerate triangle, ...).
    #[error("mesh error: {0}")]
    Mesh(String),
    /// Iterative eigensolver exhausted its budget before reaching the
    /// requested residual tolerance.
    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),
    /// A series evaluation would need more terms than the configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// An internal consistency check failed; indicates a bug or an invalid
    /// value that slipped past validation.
    #[error("inconsistency: {0}")]
    Inconsistent(String),
    /// A verification run completed and the property does not hold.
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by the library.
///
/// The CLI maps [`Error::CapExceeded`] to exit code 3 and everything else to
/// exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An exhaustive search would exceed its configured budget.
    #[error("{what}: estimated cost {estimate} exceeds cap {cap}")]
    CapExceeded { what: String, estimate: u128, cap: u128 },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// An internal consistency check failed. Always a bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

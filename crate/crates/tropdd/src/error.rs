use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Parse` covers malformed input text (problem files, hypergraph fixtures,
/// scalar tokens); everything else reports a violated precondition or an
/// internal invariant caught at runtime.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the all-[-oo] vector is not a valid generator")]
    ZeroVector,

    #[error("vector is not a member of the cone (row {row} violated)")]
    NotAMember { row: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("enumeration guard tripped: 2^{support} patterns exceeds 2^{limit}")]
    EnumerationGuard { support: usize, limit: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

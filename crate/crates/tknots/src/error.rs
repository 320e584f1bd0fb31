use thiserror::Error;

/// Errors surfaced by table validation, structure construction and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Structurally malformed input: ragged tables, out-of-range entries,
    /// bad moduli, unknown identifiers.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// A validated-structure axiom failed during construction.
    #[error("axiom violation: {0}")]
    Axioms(String),

    /// An operation was called outside its contract (base mismatch,
    /// missing strong connectivity, degree out of range, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

use thiserror::Error;

/// Errors surfaced by every structure in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("position {index} out of range for length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("invalid range [{l}, {r}] for length {len}")]
    InvalidRange { l: usize, r: usize, len: usize },

    /// Internal bookkeeping disagreed with itself. Always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid state: {0}")]
    State(String),

    #[error("cursor invalidated by a mutation of its set")]
    StaleCursor,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("audit failed: {0}")]
    Audit(String),

    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

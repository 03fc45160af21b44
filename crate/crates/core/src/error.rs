use thiserror::Error;

/// Errors produced by the library.
///
/// The variants are grouped so that callers (the CLI in particular) can map
/// them onto distinct exit codes: malformed input and domain violations are
/// data errors, configuration problems are usage errors, and consistency
/// failures indicate a bug.
#[derive(Debug, Error)]
pub enum Error {
    /// Arrays or edge lists are inconsistent with each other.
    #[error("structural error: {0}")]
    Structural(String),

    /// A graph file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested computation is too large for the chosen mode.
    #[error("size error: {0}")]
    Size(String),

    /// A precondition on the input graph does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Invalid or unusable configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// A sampled sphere net is too sparse to satisfy the parent-distance bound.
    #[error("net quality error: {0}")]
    NetQuality(String),

    /// An internal consistency check failed. Never expected on valid input.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

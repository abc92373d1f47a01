use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("orbit enumeration incomplete: {0}")]
    Incomplete(String),
    #[error("crossing parity violated: {0}")]
    Parity(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("insufficient depth: {0}")]
    Depth(String),
}

pub type Result<T> = std::result::Result<T, Error>;

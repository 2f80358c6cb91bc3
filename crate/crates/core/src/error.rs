use thiserror::Error;

/// Errors surfaced by the exact layers.
///
/// Anything that would silently change a count is an error here instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },

    #[error("polynomial is not primitive (content {content})")]
    NotPrimitive { content: String },

    #[error("polynomial has no real roots")]
    NoRealRoots,

    #[error("membership undecided after {rounds} refinement rounds for {poly}")]
    Undecided { poly: String, rounds: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cache format error: {0}")]
    CacheFormat(String),

    #[error("cache version mismatch: expected {expected}, found {found}")]
    CacheVersion { expected: u32, found: String },

    #[error("cache sample validation failed: {0}")]
    CacheValidation(String),

    #[error("empty family: {0}")]
    EmptyFamily(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

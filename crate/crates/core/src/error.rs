use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("cannot parse composition {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("degree {n} exceeds the brute-force bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("singular system of dimension {0}")]
    Singular(usize),

    #[error("rational solution where an integral one was expected")]
    NonIntegral,

    #[error("partition {0} is not a partition of {1}")]
    ForeignPartition(String, usize),

    #[error("i/o: {0}")]
    Io(String),

    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

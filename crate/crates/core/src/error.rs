use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field degree mismatch: {0} vs {1}")]
    DegreeMismatch(u8, u8),

    #[error("unsupported field degree {0} (expected 1..=16)")]
    UnsupportedDegree(u8),

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is rank deficient (rank {rank}, expected {expected})")]
    RankDeficient { rank: usize, expected: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("{what} of size {size} exceeds the configured bound {bound}")]
    TooLarge { what: &'static str, size: u128, bound: u128 },

    #[error("vector weight {weight} exceeds the allowed maximum {max}")]
    WeightExceeded { weight: usize, max: usize },

    #[error("error budget {requested} exceeds the code's correctable capacity ({detail})")]
    Capacity { requested: usize, detail: String },

    #[error("decoding failure: syndrome has no stored error pattern")]
    DecodingFailure,

    #[error("invalid ciphertext: {0}")]
    InvalidCiphertext(String),

    #[error("generation did not converge: {0}")]
    Retry(String),

    #[error("group error: {0}")]
    Group(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("evaluation point {0:#x} is a root of the Goppa polynomial")]
    InvalidPoint(u16),

    #[error("evaluation point {0:#x} appears more than once")]
    DuplicatePoint(u16),

    #[error("parse error: {0}")]
    Parse(String),
}

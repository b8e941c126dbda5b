use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range for genus {genus}")]
    IndexOutOfRange { index: usize, genus: usize },
    #[error("genus {0} not supported (need g >= 4)")]
    UnsupportedGenus(usize),
    #[error("presentation fails the small-cancellation check: max piece {max_piece}")]
    PieceCondition { max_piece: usize },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("malformed automorphism: {0}")]
    MalformedAutomorphism(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("{0}")]
    Unsupported(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use num_bigint::BigInt;
use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("index {index} outside the presented range {lo}..={hi}")]
    OutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("dimension k = {0} is not supported (need k >= 2)")]
    Dimension(usize),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid tiling: {0}")]
    InvalidTiling(String),
    #[error("invalid frieze: {0}")]
    InvalidFrieze(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the exact kernels, family constructors and certificates.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial is not a valid input")]
    ZeroPolynomial,
    #[error("constant polynomial is not a valid input")]
    ConstantPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not reciprocal")]
    NotReciprocal,
    #[error("polynomial has odd degree {0}")]
    OddDegree(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix has a negative entry at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("entries length {len} does not match {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
    #[error("intersection grid has an all-zero {0}")]
    DisjointComponent(String),
    #[error("empty interval: lower end must be below upper end")]
    EmptyInterval,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid family parameters: {0}")]
    Validation(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not irreducible over the rationals")]
    Reducible,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("zero is not allowed here")]
    ZeroInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not dominant: {0}")]
    DominanceViolation(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("insufficient samples: need at least {needed} orbit points, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("isolation failed: {0}")]
    Isolation(String),
    #[error("coefficient field mismatch")]
    FieldMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

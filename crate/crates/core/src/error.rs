use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A zero term inside a generalized factorial. The matrix is a zero
    /// generalized Pascal matrix and must be evaluated through the digit mask.
    #[error("b_{index} = 0 inside a generalized factorial (zero matrix; use the digit mask path)")]
    ZeroFactor { index: usize },

    #[error("entry ({row}, {col}) is zero; the matrix has no Hadamard inverse")]
    ZeroEntry { row: usize, col: usize },

    #[error("phi = 0: the series c(phi, q, x) is not defined")]
    ZeroPhi,

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("series is not fractal in base {q}: coefficient {index} differs from its digit product")]
    NotFractal { q: u64, index: usize },

    #[error("index {index} outside the explicit sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

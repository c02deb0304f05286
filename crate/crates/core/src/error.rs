use thiserror::Error;

use crate::poly::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid rational `{0}`")]
    Rational(String),
    #[error("invalid variable `{0}`")]
    Variable(String),
    #[error("variable `{var}` outside ring with m={m}, n={n}")]
    VariableOutOfRange { var: String, m: usize, n: usize },
    #[error("invalid term `{0}`")]
    Term(String),
    #[error("invalid tensor: {0}")]
    Tensor(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSize { size: usize, rows: usize, cols: usize },
    #[error("tensor has m={tm}, n={tn} but the ring expects m={m}, n={n}")]
    DimensionMismatch { m: usize, n: usize, tm: usize, tn: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree {got} does not match target degree {expected}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("matrix is singular")]
    Singular,
    #[error("compression parameter s={s} invalid for n={n} (need 0 <= s < n)")]
    InvalidCompression { s: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

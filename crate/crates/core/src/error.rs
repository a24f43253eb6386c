use thiserror::Error;

/// Errors raised by the entanglement toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} amplitudes, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("invalid site selection: {0}")]
    InvalidSites(String),
    #[error("operator on site {site} is not unitary (residual {residual:.3e})")]
    NotUnitary { site: usize, residual: f64 },
    #[error("operator on site {site} is singular")]
    Singular { site: usize },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("optimizer did not converge (best residual {best_residual:.3e})")]
    NonConvergence { best_residual: f64 },
    #[error("indeterminate cross ratio: points coincide")]
    Indeterminate,
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("code error: {0}")]
    Code(String),
    #[error("uncorrectable error: syndrome {syndrome:?} matches no weight-1 error")]
    Uncorrectable { syndrome: Vec<u8> },
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

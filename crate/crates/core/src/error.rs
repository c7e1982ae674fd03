use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid dimensions p={p}, q={q}")]
    BadDims { p: usize, q: usize },

    #[error("vertex ({i},{j}) is outside dims ({p},{q})")]
    OutOfRange { i: usize, j: usize, p: usize, q: usize },

    #[error("edge set contains only loops")]
    OnlyLoops,

    #[error("edge set is empty")]
    EmptyEdgeSet,

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("dimension mismatch: expected order {expected}, got {actual}")]
    DimMismatch { expected: usize, actual: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("trace is {0}, not 1")]
    NotDensity(String),

    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("edge is not entangled")]
    NotEntangledEdge,

    #[error("pe-matching certificate needs p = 2, got p = {0}")]
    WrongDims(usize),

    #[error("trial count must be at least 1")]
    BadTrialCount,

    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: vertex out of range")]
    OutOfRangeAt { line: usize },

    #[error("missing `dims P Q` header")]
    MissingDims,
}

pub type Result<T> = std::result::Result<T, Error>;

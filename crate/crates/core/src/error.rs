use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("index {index} out of range (expected < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("{0} is not an element of the spectrum")]
    NotInSpectrum(String),

    #[error("multi-index recursion disagrees with the sorted spectrum at slot {slot}: {detail}")]
    RecursionMismatch { slot: usize, detail: String },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("matrix is singular")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate case: {0}")]
    Degenerate(String),

    #[error("WDVV reconstruction: zero pivot for {0}")]
    ZeroPivot(String),

    #[error("WDVV reconstruction: {0}")]
    Reconstruction(String),

    #[error("WDVV equation {equation:?} fails at {beta:?}: lhs {lhs}, rhs {rhs}")]
    Inconsistent {
        equation: [usize; 4],
        beta: Vec<u32>,
        lhs: String,
        rhs: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("polynomial is not homogeneous: found terms of degree {first} and {other}")]
    Inhomogeneous { first: u32, other: u32 },

    #[error("variable z{index} out of range for {n_vars} variables")]
    VariableOutOfRange { index: usize, n_vars: usize },

    #[error("the zero polynomial does not define a hypersurface")]
    ZeroPolynomial,

    #[error("need at least 2 variables, got {0}")]
    TooFewVariables(usize),

    #[error("invalid rational number {0:?}")]
    InvalidNumber(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("vector field is not semisimple")]
    NotSemisimple,

    #[error("vector field is not nilpotent")]
    NotNilpotent,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degree {d} outside the Fano window 1 < d < n+1 = {}", n + 1)]
    OutsideFanoWindow { n: usize, d: u32 },

    #[error("weight vector must have trace zero (trace is {0})")]
    NotTraceZero(String),

    #[error("weight vector must have integer entries")]
    NonIntegerWeights,

    #[error("nilpotent part acts nontrivially on f; the family would involve logarithms of s")]
    NilpotentActsNontrivially,

    #[error("enumeration box too large: {candidates} candidate vectors exceeds the limit of {limit}")]
    BoxTooLarge { candidates: u128, limit: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

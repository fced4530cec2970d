use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series pole: lower parameter {param} gives a vanishing denominator at term {term}")]
    SeriesPole { param: String, term: usize },

    #[error("unbalanced parameters: abc != def q^(k-1)")]
    UnbalancedParameters,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("not in P_x: polynomial is not invariant under every involution")]
    NotInPx,

    #[error("inexact division")]
    InexactDivision,

    #[error("zero component at coordinate {0}")]
    ZeroComponent(usize),

    #[error("pole hit for shift {shift:?}")]
    Pole { shift: Vec<i32> },

    #[error("needs square base: {0} is not a square in Q")]
    NeedsSquareBase(String),

    #[error("degenerate normalization")]
    DegenerateNormalization,

    #[error("parameter constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("boundary violation: shift {shift:?} at n = {n:?} leaves the lattice with coefficient {coefficient}")]
    BoundaryViolation {
        shift: Vec<i32>,
        n: Vec<i64>,
        coefficient: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown check name: {0}")]
    UnknownCheck(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

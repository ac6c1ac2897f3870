use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cost matrix for n={n}, m={m} needs {expected} entries, got {got}")]
    Shape {
        n: usize,
        m: usize,
        expected: usize,
        got: usize,
    },

    #[error(
        "invalid cost {value} at row {row}, column {col}: costs must be finite and non-negative"
    )]
    InvalidCost {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("the epsilon-to-epsilon cost must be 0, found {0}")]
    NonZeroCorner(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("assignment is not a complete epsilon-assignment: {0}")]
    Incomplete(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("invalid assignment matrix: {0}")]
    InvalidMatrix(String),

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("forbidden pairing: row {row} is mapped to column {col}")]
    ForbiddenPair { row: usize, col: usize },

    #[error("cost matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("n + m = {size} exceeds the enumeration limit {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("invalid value range [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

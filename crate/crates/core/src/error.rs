use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("sparsity {s} is invalid for dimension {dim}")]
    InvalidSparsity { s: usize, dim: usize },
    #[error("index ({i}, {j}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },
    #[error("entry ({i}, {j}) stored more than once")]
    DuplicateEntry { i: usize, j: usize },
    #[error("matrix is not Hermitian: entry pair ({i},{j})/({j},{i}) is inconsistent")]
    NonHermitian { i: usize, j: usize },
    #[error("entry ({i}, {j}) has magnitude {magnitude} > 1")]
    EntryMagnitude { i: usize, j: usize, magnitude: f64 },
    #[error("row {row} has {count} nonzeros, exceeding the declared sparsity {s}")]
    RowSparsity { row: usize, count: usize, s: usize },
    #[error("diagonal entry ({i}, {i}) = {value} is negative; the walk isometry cannot encode it")]
    NegativeDiagonal { i: usize, value: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("state has zero norm")]
    ZeroState,
    #[error("register mask is inconsistent with the state layout: {0}")]
    InvalidMask(String),
    #[error("post-selection succeeds with probability zero")]
    ZeroSuccessProbability,
    #[error("orthonormal completion failed for column {0}")]
    Orthonormalization(usize),
    #[error("invalid shot budget: {0}")]
    InvalidShots(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Numerical failures, as opposed to malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ZeroSuccessProbability | Error::Orthonormalization(_) | Error::ZeroState
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("generator matrix is not of full row rank (rank {rank} < {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("coordinate {0} out of range for length {1}")]
    CoordinateOutOfRange(usize, usize),

    #[error("minimum distance of a zero-dimensional code is undefined")]
    ZeroDimension,

    #[error("distance search exceeded its budget: minimum distance is at least {at_least}")]
    DistanceBudget { at_least: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exhausted: {0}")]
    SearchExhausted(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),

    #[error("field error: {0}")]
    Field(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

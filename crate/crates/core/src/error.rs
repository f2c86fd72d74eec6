use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-invertible series")]
    NonInvertibleSeries,

    #[error("series precondition violated: {0}")]
    SeriesPrecondition(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("oracle bound exceeded: {0}")]
    OracleBoundExceeded(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("variance mismatch: {0}")]
    Variance(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no consistent convention: {0}")]
    NoConsistentConvention(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

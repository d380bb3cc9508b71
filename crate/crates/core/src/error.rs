use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed interval [{lo}, {hi}]")]
    MalformedInterval { lo: String, hi: String },

    #[error("enlargement radius must be positive, got {0}")]
    NonPositiveRadius(String),

    #[error("open interval needs a < b, got ({a}, {b})")]
    EmptyOpenInterval { a: String, b: String },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("time {time} outside [0, {horizon}]")]
    TimeOutOfRange { time: String, horizon: String },

    #[error("requested {requested} jumps but the time lattice only has {available} slots")]
    LatticeExhausted { requested: u64, available: u64 },

    #[error("size distribution: {0}")]
    SizeDistribution(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Resolution and rejection certificates need exact arithmetic and a known Lipschitz bound.
    #[error("no guarantee: {0}")]
    NoGuarantee(String),

    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// True for errors that the CLI maps to exit status 2.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::Config { .. } | Error::Parse(_) | Error::Json(_) | Error::MalformedInterval { .. }
        )
    }
}

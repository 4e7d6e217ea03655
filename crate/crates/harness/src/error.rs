use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    /// `pointer` is an RFC 6901 JSON pointer into the offending document.
    #[error("invalid config at {pointer:?}: {message}")]
    Config { pointer: String, message: String },

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] conflat_core::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

impl HarnessError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }
}

use thiserror::Error;

/// Errors surfaced by the simulator library.
#[derive(Debug, Error)]
pub enum FlocError {
    /// Invalid configuration or scenario content.
    #[error("config error: {0}")]
    Config(String),
    /// Scenario file syntax problem.
    #[error("scenario parse error at line {line}: {message}")]
    ScenarioParse { line: usize, message: String },
    /// A numeric precondition was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// Decision-engine failure.
    #[error(transparent)]
    Hflts(#[from] hflts::HfltsError),
    /// File I/O failure.
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl FlocError {
    pub fn config(message: impl Into<String>) -> Self {
        FlocError::Config(message.into())
    }

    pub fn domain(message: impl Into<String>) -> Self {
        FlocError::Domain(message.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        FlocError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, FlocError>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse x grid {input:?}: {reason}")]
    Grid { input: String, reason: String },

    #[error(transparent)]
    Core(#[from] divl1_core::Error),

    #[error(transparent)]
    Symbolic(#[from] divl1_symbolic::SymbolicError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, ExperimentError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(ExperimentError::InvalidArgument(msg.into()))
}

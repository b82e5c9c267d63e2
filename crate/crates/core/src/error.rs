use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Variants map onto process exit codes: structural and domain problems are
/// input errors, `LimitExceeded` is a refusal to start an enumeration that
/// would exceed the configured budget.
#[derive(Debug, Error)]
pub enum WspError {
    /// Malformed graph, instance, allocation or model.
    #[error("structural error: {0}")]
    Structural(String),

    /// A numeric argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Instance generation could not produce a valid instance.
    #[error("generation error: {0}")]
    Generation(String),

    /// An exhaustive search refused to run.
    #[error("search space estimate {estimate:.3e} exceeds limit {limit}")]
    LimitExceeded { estimate: f64, limit: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl WspError {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        WspError::Structural(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        WspError::Domain(msg.into())
    }
}

pub type Result<T, E = WspError> = std::result::Result<T, E>;

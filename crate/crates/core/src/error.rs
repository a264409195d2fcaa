use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("integration failed on [{lo}, {hi}]: estimated error {estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    Integration {
        lo: f64,
        hi: f64,
        estimate: f64,
        tolerance: f64,
    },

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("conditioning event has zero probability (P = {0:.3e})")]
    ZeroProbability(f64),

    #[error("score ratio is singular at x = 0 for {0}")]
    Singular(String),

    #[error("observed information is not positive definite")]
    SingularInformation,

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

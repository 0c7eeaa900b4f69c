//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by graph construction, estimation, calibration, and I/O.
#[derive(Error, Debug)]
pub enum Error {
    /// Invalid input values (out-of-domain arguments, malformed records).
    #[error("input error: {0}")]
    Input(String),

    /// Dimension or registry mismatch between containers.
    #[error("size error: {0}")]
    Size(String),

    /// Invalid configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Numerical failure (NaN, singular system, probability outside [0,1]).
    #[error("numeric error: {0}")]
    Numeric(String),

    /// An iterative procedure failed to converge.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// Least-squares fit failure beyond recoverable collinearity.
    #[error("fit error: {0}")]
    Fit(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: input/data 2, config 3, numeric 4, convergence 5.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Size(_) | Error::Io(_) | Error::Csv(_) => 2,
            Error::Config(_) | Error::Json(_) => 3,
            Error::Numeric(_) | Error::Fit(_) => 4,
            Error::Convergence(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by estimators, oracles and the sweep harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sample is empty")]
    EmptySample,

    #[error("sample contains a non-finite value {value} at position {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("probability level must lie in the open interval (0, 1), got {0}")]
    InvalidProbability(f64),

    #[error("no tail observations at level p = {p} with n = {n}")]
    EmptyTail { n: usize, p: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("Pareto shape must exceed 1 for a finite mean, got {0}")]
    InvalidShape(f64),

    #[error("order statistic mean E[X_({i}:{n})] does not exist for shape {alpha}")]
    MomentUndefined { i: usize, n: usize, alpha: f64 },

    #[error("kernel bandwidth must be positive, got {0}")]
    InvalidBandwidth(f64),

    #[error("density estimate {density:e} at {at} is below the density floor {floor:e}: {reason}")]
    DensityFloor {
        density: f64,
        at: f64,
        floor: f64,
        reason: &'static str,
    },

    #[error("figure {0} needs a loss dataset; use the dataset analysis instead")]
    NeedsDataset(String),

    #[error("unknown figure id `{0}`")]
    UnknownFigure(String),

    #[error("{path}: {message}")]
    Data { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors caused by caller input rather than by the library.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Json(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised by the fractional sequence toolkit.
#[derive(Debug, Error)]
pub enum FracError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Two sequences living in different weighted spaces were combined.
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: f64, right: f64 },

    /// A window of `len` indices cannot be recovered from `samples` circle samples.
    #[error("aliasing: window of length {len} needs at least {len} samples, got {samples}")]
    Aliasing { len: usize, samples: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, FracError>;

impl FracError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        FracError::Domain(msg.into())
    }

    /// True for errors caused by mathematically invalid arguments, as opposed
    /// to malformed input files.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            FracError::Domain(_)
                | FracError::DimensionMismatch { .. }
                | FracError::WeightMismatch { .. }
                | FracError::Aliasing { .. }
        )
    }
}

use thiserror::Error;

/// Errors raised by the entropic primitives, bound solvers and applications.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probability vector is empty")]
    Empty,

    #[error("negative probability {value} at index {index}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probability {value} at index {index} is not finite")]
    NonFinite { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1 within 1e-9")]
    NotNormalized { sum: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("dimension {0} is too small for this operation")]
    DimensionTooSmall(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("relative entropy is infinite: {0}")]
    InfiniteDivergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Reject `value` outside `[lo, hi]` by more than `tol`, clamp it otherwise.
pub(crate) fn clamp_within(name: &'static str, value: f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !value.is_finite() || value < lo - tol || value > hi + tol {
        return Err(Error::OutOfRange { name, value, lo, hi });
    }
    Ok(value.clamp(lo, hi))
}

use thiserror::Error;

/// Errors raised by the numerical layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("beam splitter violates r^2 + t^2 = 1 (r = {r}, t = {t}, residual = {residual:e})")]
    Unitarity { r: f64, t: f64, residual: f64 },

    #[error("closed forms require a balanced splitter (r = t = 1/sqrt 2), got r = {r}, t = {t}")]
    UnbalancedSplitter { r: f64, t: f64 },

    #[error("input coefficients for mode {mode} are not normalized (sum |c|^2 = {norm})")]
    Normalization { mode: char, norm: f64 },

    #[error("photon-number blocks exceed truncation {truncation}: {offending:?}")]
    Truncation {
        truncation: usize,
        offending: Vec<(usize, usize)>,
    },

    #[error("coincidence amplitude is defined for n + m <= 2 only; input has blocks {offending:?}")]
    UnsupportedInput { offending: Vec<(usize, usize)> },

    #[error(
        "quadrature did not reach tolerance {tolerance:e} within {subdivisions} panels \
         (best estimate {estimate}, error estimate {error:e})"
    )]
    Convergence {
        estimate: f64,
        error: f64,
        tolerance: f64,
        subdivisions: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite and > 0, got {value}")))
    }
}

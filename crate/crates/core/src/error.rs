use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra dimension mismatch ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite integrand value at node {index} (point {point:?})")]
    NonFinite { index: usize, point: Vec<f64> },

    #[error("schedule too coarse: {0}")]
    ScheduleTooCoarse(String),

    #[error("cap too small: tail bound {tail:e} exceeds tolerance {tolerance:e}")]
    CapTooSmall { tail: f64, tolerance: f64 },

    #[error("field not monogenic: Dirac residual {residual:e} at {point:?}")]
    NotMonogenic { residual: f64, point: Vec<f64> },

    #[error("margin violation: point {point:?} is closer than h = {h} to the boundary")]
    MarginViolation { h: f64, point: Vec<f64> },

    #[error("unknown catalog field `{id}` (available: {available})")]
    UnknownCatalog { id: String, available: String },

    #[error("inadmissible input: {0}")]
    Inadmissible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum HullError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("disc components share a zero at ζ = {at} inside the closed unit disc")]
    CommonZero { at: num_complex::Complex64 },

    #[error("divisor point at ζ = {at} lies within {delta} of the unit circle")]
    BoundaryContact { at: num_complex::Complex64, delta: f64 },

    #[error("disc is contained in the hyperplane (pairing is identically zero)")]
    DiscInHyperplane,

    #[error("disc center lies on the hyperplane: J is infinite")]
    CenterOnHyperplane,

    #[error("pole cancellation left a residual of {residual:.3e} (tolerance {tol:.3e})")]
    CancellationResidual { residual: f64, tol: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, HullError>;

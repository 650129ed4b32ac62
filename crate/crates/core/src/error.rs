use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("tabulated permittivity queried at p = {p} beyond last sample p = {last} with extrapolation disabled")]
    Extrapolation { p: f64, last: f64 },

    #[error("singular {0}")]
    Singular(&'static str),

    #[error("two-ports evaluated on different frequency axes")]
    AxisMismatch,

    #[error("degenerate composition: |1 - r_bar_a r_b| = {0:e}")]
    DegenerateComposition(f64),

    #[error("unstable cavity: |r1 r2| = {product} > 1 at p = {p}")]
    UnstableCavity { p: f64, product: f64 },

    #[error("divergent resonance at omega = {0}")]
    DivergentResonance(f64),

    #[error("quadrature did not reach tolerance: best estimate {estimate:e}, error estimate {error:e}")]
    Accuracy { estimate: f64, error: f64 },
}

pub type Result<T, E = CasimirError> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> CasimirError {
    CasimirError::Domain(msg.into())
}

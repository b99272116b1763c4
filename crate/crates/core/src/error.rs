use thiserror::Error;

/// Errors produced by evaluation, simulation and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    /// The series converged but the partial sums cancelled so badly that the
    /// result cannot be trusted. The value is still carried for inspection.
    #[error("cancellation in alternating series (max |term| / |sum| = {ratio:.3e}, value = {value:.6e})")]
    Cancellation { value: f64, ratio: f64 },

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("numerical instability: {0}")]
    NumericalInstability(String),

    #[error("root finding failed: {0}")]
    RootFindingFailure(String),

    #[error("grid too coarse: {0}")]
    StepTooCoarse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by the caller's input rather than by numerics.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidParam(_))
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParam(msg.into())
}

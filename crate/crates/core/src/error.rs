//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum PhaseError {
    /// Oscillator constants must be strictly positive and finite.
    #[error("invalid oscillator parameters: {0}")]
    InvalidParams(String),

    /// A state component failed its structural invariants.
    #[error("invalid state component: {0}")]
    InvalidComponent(String),

    /// Grid values contain NaN or infinities; the density cannot be integrated.
    #[error("non-integrable grid density: {0}")]
    NonIntegrable(String),

    /// States combined in a mixture must share the same oscillator constants.
    #[error("oscillator parameter mismatch between mixed states")]
    ParamMismatch,

    /// The adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature failed to converge: requested {requested:.3e}, achieved {achieved:.3e} after {panels} panels")]
    QuadratureFailure {
        requested: f64,
        achieved: f64,
        panels: usize,
    },

    /// A truncated spectral series left more residual than allowed.
    #[error("series truncation residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    TruncationExceeded { residual: f64, tolerance: f64 },

    /// Laguerre recurrence accuracy is only vouched for up to degree 200.
    #[error("level index {0} exceeds the supported Laguerre degree (200)")]
    DegreeTooLarge(usize),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    DomainError(String),

    /// Operation is undefined for the selected spectral model.
    #[error("unsupported for model `{model}`: {reason}")]
    UnsupportedModel {
        model: &'static str,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, PhaseError>;

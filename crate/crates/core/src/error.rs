use thiserror::Error;

/// Errors produced by parameter validation, closed-form evaluation and the solver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    Validation { field: &'static str, reason: String },

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("singular time: tau + C3 = {0} must be positive")]
    SingularTime(f64),

    #[error("singular constant: denominator {0:e} is numerically zero")]
    SingularConstant(f64),

    #[error("derivative engines disagree by {gap:e} (relative) at (tau, eta) = ({tau}, {eta})")]
    UnreliableDerivatives { gap: f64, tau: f64, eta: f64 },

    #[error("solver diverged at step {step} (tau = {tau})")]
    Divergence { step: usize, tau: f64 },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Validation {
            field,
            reason: format!("must be positive and finite, got {value}"),
        })
    }
}

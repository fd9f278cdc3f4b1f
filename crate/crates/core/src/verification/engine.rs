//! Derivatives of closed-form fields by nested dual numbers, with fourth-order
//! central differences as an independent cross-check.

use crate::autodiff::{Dual, Scalar};
use crate::error::{Error, Result};
use crate::temperature::TemperatureField;

/// Residual tolerance when derivatives come from dual numbers.
pub const DUAL_TOLERANCE: f64 = 1e-9;
/// Residual tolerance when derivatives come from central differences.
pub const DIFFERENCE_TOLERANCE: f64 = 1e-5;
/// Largest accepted gap between the two modes, relative to
/// `1 + max(|Θ|, |Θ_τ|, |Θ_η|, |Θ_ηη|)`, before derivatives are considered
/// unreliable.
pub const ENGINE_AGREEMENT: f64 = 1e-5;

/// A scalar function of one variable, evaluable on dual numbers.
pub trait ScalarFunction {
    fn eval<S: Scalar>(&self, x: S) -> S;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeMode {
    Dual,
    CentralDifference,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivativeEngine {
    pub mode: DerivativeMode,
    /// Relative step for the difference mode, scaled by `max(|x|, 1)`.
    pub fd_step: f64,
}

impl Default for DerivativeEngine {
    fn default() -> Self {
        Self::dual()
    }
}

/// Value and the derivatives the reduced equations need.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldDerivs {
    pub value: f64,
    pub d_tau: f64,
    pub d_eta: f64,
    pub d_eta_eta: f64,
}

impl FieldDerivs {
    fn scale(&self) -> f64 {
        1.0 + [self.value, self.d_tau, self.d_eta, self.d_eta_eta]
            .iter()
            .fold(0.0_f64, |m, d| m.max(d.abs()))
    }

    fn relative_gap(&self, other: &Self) -> f64 {
        [
            self.d_tau - other.d_tau,
            self.d_eta - other.d_eta,
            self.d_eta_eta - other.d_eta_eta,
        ]
        .iter()
        .fold(0.0_f64, |m, d| m.max(d.abs()))
            / self.scale()
    }
}

fn step(fd_step: f64, x: f64) -> f64 {
    fd_step * x.abs().max(1.0)
}

fn central1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

fn central2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}

impl DerivativeEngine {
    pub fn dual() -> Self {
        Self {
            mode: DerivativeMode::Dual,
            fd_step: 1e-4,
        }
    }

    pub fn central_difference(fd_step: f64) -> Self {
        Self {
            mode: DerivativeMode::CentralDifference,
            fd_step,
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self.mode {
            DerivativeMode::Dual => DUAL_TOLERANCE,
            DerivativeMode::CentralDifference => DIFFERENCE_TOLERANCE,
        }
    }

    fn counterpart(&self) -> Self {
        match self.mode {
            DerivativeMode::Dual => Self::central_difference(self.fd_step),
            DerivativeMode::CentralDifference => Self::dual(),
        }
    }

    pub fn derivs<F: TemperatureField>(&self, field: &F, tau: f64, eta: f64) -> FieldDerivs {
        match self.mode {
            DerivativeMode::Dual => {
                let by_tau = field.eval(Dual::var(tau), Dual::constant(eta));
                let seed = Dual::new(Dual::var(eta), Dual::constant(1.0));
                let by_eta = field.eval(Dual::constant(Dual::constant(tau)), seed);
                FieldDerivs {
                    value: by_tau.re,
                    d_tau: by_tau.eps,
                    d_eta: by_eta.re.eps,
                    d_eta_eta: by_eta.eps.eps,
                }
            }
            DerivativeMode::CentralDifference => {
                let ht = step(self.fd_step, tau);
                // The second derivative loses two orders of the step to rounding;
                // a wider stencil keeps that loss below the truncation error.
                let he = step(self.fd_step, eta);
                let he2 = step(10.0 * self.fd_step, eta);
                FieldDerivs {
                    value: field.value(tau, eta),
                    d_tau: central1(|t| field.value(t, eta), tau, ht),
                    d_eta: central1(|e| field.value(tau, e), eta, he),
                    d_eta_eta: central2(|e| field.value(tau, e), eta, he2),
                }
            }
        }
    }

    /// Derivatives from this engine after confirming the other mode agrees to
    /// within [`ENGINE_AGREEMENT`].
    pub fn derivs_checked<F: TemperatureField>(
        &self,
        field: &F,
        tau: f64,
        eta: f64,
    ) -> Result<FieldDerivs> {
        let primary = self.derivs(field, tau, eta);
        let other = self.counterpart().derivs(field, tau, eta);
        let gap = primary.relative_gap(&other);
        if gap.is_nan() || gap > ENGINE_AGREEMENT {
            return Err(Error::UnreliableDerivatives { gap, tau, eta });
        }
        Ok(primary)
    }

    /// Value, first and second derivative of a one-variable function.
    pub fn derivs_1d<F: ScalarFunction>(&self, f: &F, x: f64) -> (f64, f64, f64) {
        match self.mode {
            DerivativeMode::Dual => crate::autodiff::diff2(|v| f.eval(v), x),
            DerivativeMode::CentralDifference => {
                let g = |v: f64| f.eval(v);
                (
                    g(x),
                    central1(g, x, step(self.fd_step, x)),
                    central2(g, x, step(10.0 * self.fd_step, x)),
                )
            }
        }
    }
}

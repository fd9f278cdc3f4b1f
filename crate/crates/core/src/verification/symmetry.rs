//! The infinitesimal generator `X = ξ¹ ∂_τ + ξ² ∂_η + η¹ ∂_Θ` of the symmetry
//! group of the reduced temperature equation, and its action on invariants.

use crate::autodiff::{Dual, Scalar};
use crate::params::ReducedParams;
use crate::temperature::TemperatureField;

use super::VerificationGrid;

/// Generator coefficients for constants `C1..C4` and inhomogeneous part `b2`.
#[derive(Clone, Copy, Debug)]
pub struct OperatorCoeffs<F> {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub b2: F,
    pub params: ReducedParams,
}

impl<F: TemperatureField> OperatorCoeffs<F> {
    /// `ξ¹ = C1 τ²/2 + C2 τ + C3`.
    pub fn xi1(&self, tau: f64) -> f64 {
        0.5 * self.c1 * tau * tau + self.c2 * tau + self.c3
    }

    /// `ξ² = C1 τ (4τ + η + 1) + C2 (η + 1) - 8 C3`.
    pub fn xi2(&self, tau: f64, eta: f64) -> f64 {
        self.c1 * tau * (4.0 * tau + eta + 1.0) + self.c2 * (eta + 1.0) - 8.0 * self.c3
    }

    /// `η¹ = (C4 - C1 (τ + (A/B) η) / 2) Θ + b2(τ, η)`.
    pub fn eta1(&self, tau: f64, eta: f64, theta: f64) -> f64 {
        let ratio = self.params.a_group / self.params.b_group;
        (self.c4 - 0.5 * self.c1 * (tau + ratio * eta)) * theta + self.b2.value(tau, eta)
    }
}

/// A function of `(τ, η, Θ)`, with `Θ` treated as an independent coordinate.
pub trait Invariant {
    fn eval<S: Scalar>(&self, tau: S, eta: S, theta: S) -> S;
}

/// `I1 = 8τ + η + 1`, invariant under the translation generator.
#[derive(Clone, Copy, Debug, Default)]
pub struct InvariantI1;

impl Invariant for InvariantI1 {
    fn eval<S: Scalar>(&self, tau: S, eta: S, _theta: S) -> S {
        tau * 8.0 + eta + 1.0
    }
}

/// `I2 = Θ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct InvariantI2;

impl Invariant for InvariantI2 {
    fn eval<S: Scalar>(&self, _tau: S, _eta: S, theta: S) -> S {
        theta
    }
}

/// `J1 = (1 + η - 8 C3) / (τ + C3)`.
#[derive(Clone, Copy, Debug)]
pub struct InvariantJ1 {
    pub c3: f64,
}

impl Invariant for InvariantJ1 {
    fn eval<S: Scalar>(&self, tau: S, eta: S, _theta: S) -> S {
        (eta + (1.0 - 8.0 * self.c3)) / (tau + self.c3)
    }
}

/// `J2 = (τ + C3)((τ + C3) Θ - τ C5/2) - τ C3 C5/2
///       + 16 τ (τ + C3)(1 + ε²) / ((8τ + η + 1)(8A + B))`.
#[derive(Clone, Copy, Debug)]
pub struct InvariantJ2 {
    pub params: ReducedParams,
    pub c3: f64,
    pub c5: f64,
}

impl Invariant for InvariantJ2 {
    fn eval<S: Scalar>(&self, tau: S, eta: S, theta: S) -> S {
        let q = tau + self.c3;
        let s = tau * 8.0 + eta + 1.0;
        let c = self.params.source_strength() / self.params.b_plus_8a();
        q * (q * theta - tau * (0.5 * self.c5)) - tau * (0.5 * self.c3 * self.c5)
            + tau * q * c / s
    }
}

/// Outcome of applying the generator to an invariant over a sample set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnihilationReport {
    /// `max |X(J)|` over all points and `Θ` samples.
    pub max_abs: f64,
    /// Largest per-point variance of `X(J)` across the `Θ` samples.
    pub theta_variance: f64,
    pub worst_point: (f64, f64, f64),
}

fn gradient<J: Invariant>(inv: &J, tau: f64, eta: f64, theta: f64) -> [f64; 3] {
    let c = Dual::constant;
    [
        inv.eval(Dual::var(tau), c(eta), c(theta)).eps,
        inv.eval(c(tau), Dual::var(eta), c(theta)).eps,
        inv.eval(c(tau), c(eta), Dual::var(theta)).eps,
    ]
}

/// `X(J) = ξ¹ J_τ + ξ² J_η + η¹ J_Θ`, evaluated at every grid point for each
/// `Θ` sample.
pub fn invariant_annihilation<F: TemperatureField, J: Invariant>(
    op: &OperatorCoeffs<F>,
    invariant: &J,
    grid: &VerificationGrid,
    theta_samples: &[f64],
) -> AnnihilationReport {
    let mut max_abs: f64 = 0.0;
    let mut theta_variance: f64 = 0.0;
    let mut worst_point = (f64::NAN, f64::NAN, f64::NAN);
    let mut first = true;
    for (tau, eta) in grid.points() {
        let values: Vec<f64> = theta_samples
            .iter()
            .map(|&theta| {
                let [jt, je, jth] = gradient(invariant, tau, eta, theta);
                op.xi1(tau) * jt + op.xi2(tau, eta) * je + op.eta1(tau, eta, theta) * jth
            })
            .collect();
        for (&theta, &v) in theta_samples.iter().zip(&values) {
            if first || v.abs() > max_abs {
                max_abs = v.abs();
                worst_point = (tau, eta, theta);
                first = false;
            }
        }
        if !values.is_empty() {
            let n = values.len() as f64;
            let mean = values.iter().sum::<f64>() / n;
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
            theta_variance = theta_variance.max(var);
        }
    }
    AnnihilationReport {
        max_abs,
        theta_variance,
        worst_point,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::PaperCase;
    use crate::temperature::{ConstantField, ThetaSimple};

    const C5: f64 = 5.0 / 3.0;
    const THETAS: [f64; 4] = [-1.0, 0.0, 0.7, 3.5];

    fn scaling_op() -> OperatorCoeffs<ThetaSimple> {
        let params = PaperCase::reduced();
        OperatorCoeffs {
            c1: 0.0,
            c2: 1.0,
            c3: PaperCase::C3,
            c4: -2.0,
            b2: ThetaSimple { params, level: C5 },
            params,
        }
    }

    #[test]
    fn translation_annihilates_i1_and_i2() {
        let op = OperatorCoeffs {
            c1: 0.0,
            c2: 0.0,
            c3: 0.37,
            c4: 0.0,
            b2: ConstantField(0.0),
            params: PaperCase::reduced(),
        };
        let g = VerificationGrid::standard(1.0);
        assert_eq!(invariant_annihilation(&op, &InvariantI1, &g, &THETAS).max_abs, 0.0);
        assert_eq!(invariant_annihilation(&op, &InvariantI2, &g, &THETAS).max_abs, 0.0);
    }

    #[test]
    fn scaling_annihilates_j1_and_j2() {
        let op = scaling_op();
        let g = VerificationGrid::standard(1.0);
        let j1 = invariant_annihilation(&op, &InvariantJ1 { c3: op.c3 }, &g, &THETAS);
        assert!(j1.max_abs < 1e-9, "{j1:?}");
        assert!(j1.theta_variance < 1e-14);
        let j2 = InvariantJ2 {
            params: op.params,
            c3: op.c3,
            c5: C5,
        };
        let r = invariant_annihilation(&op, &j2, &g, &THETAS);
        assert!(r.max_abs < 1e-8, "{r:?}");
    }

    #[test]
    fn j2_is_not_invariant_under_translation() {
        let mut op = scaling_op();
        op.c2 = 0.0;
        op.c4 = 0.0;
        op.b2 = ThetaSimple {
            params: op.params,
            level: 0.0,
        };
        let j2 = InvariantJ2 {
            params: op.params,
            c3: op.c3,
            c5: C5,
        };
        let g = VerificationGrid::standard(1.0);
        assert!(invariant_annihilation(&op, &j2, &g, &THETAS).max_abs > 1e-3);
    }
}

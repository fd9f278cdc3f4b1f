//! Boundary fluxes of the worked case: the printed Neumann data against the
//! `eta`-derivative of the worked-case solution.

use crate::error::Result;
use crate::temperature::PaperCaseSolution;

use super::engine::DerivativeEngine;

/// Printed flux at `eta = 0`: `5 (1 + 16 tau) / (6 (8 tau + 1)^3)`.
pub fn paper_flux_inner(tau: f64) -> f64 {
    let q = 8.0 * tau + 1.0;
    5.0 * (1.0 + 16.0 * tau) / (6.0 * q.powi(3))
}

/// Printed flux at `eta = a = 1`:
/// `5 / (3 (8 tau + 2)^2) + 5 / (6 (8 tau + 2)^3) · (1 - (8 tau + 1)(8 tau + 3)) / (8 tau + 1)^2`.
///
/// Lacks the factor `exp(-1 / (8 tau + 1))` present in the derivative of the
/// worked-case solution.
pub fn paper_flux_outer(tau: f64) -> f64 {
    let q = 8.0 * tau + 1.0;
    let s = 8.0 * tau + 2.0;
    5.0 / (3.0 * s * s) + 5.0 / (6.0 * s.powi(3)) * ((1.0 - q * (8.0 * tau + 3.0)) / (q * q))
}

/// Closed-form `dTheta/deta` of the worked-case solution.
pub fn derived_flux(tau: f64, eta: f64) -> f64 {
    let q = 8.0 * tau + 1.0;
    let s = q + eta;
    let decay = (-eta / q).exp();
    -5.0 / 6.0 * (-2.0 / (s * s) + decay * (2.0 * eta / q.powi(4) - (eta * eta - q * q) / q.powi(5)))
}

/// Printed and derived fluxes at both edges for one `tau`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct FluxComparison {
    pub tau: f64,
    pub paper_flux_0: f64,
    pub derived_flux_0: f64,
    pub paper_flux_a: f64,
    pub derived_flux_a: f64,
    /// Largest gap between the closed-form derivative and the engine's.
    pub engine_gap: f64,
}

impl FluxComparison {
    pub fn gap_0(&self) -> f64 {
        self.paper_flux_0 - self.derived_flux_0
    }

    pub fn gap_a(&self) -> f64 {
        self.paper_flux_a - self.derived_flux_a
    }
}

/// Compares the printed Neumann data with the derivative of the worked-case
/// solution at each `tau`.
pub fn bc29_discrepancy(taus: &[f64], c5: f64) -> Result<Vec<FluxComparison>> {
    let engine = DerivativeEngine::dual();
    let field = PaperCaseSolution { c5 };
    taus.iter()
        .map(|&tau| {
            let d0 = derived_flux(tau, 0.0);
            let da = derived_flux(tau, 1.0);
            let e0 = engine.derivs_checked(&field, tau, 0.0)?.d_eta;
            let ea = engine.derivs_checked(&field, tau, 1.0)?.d_eta;
            Ok(FluxComparison {
                tau,
                paper_flux_0: paper_flux_inner(tau),
                derived_flux_0: d0,
                paper_flux_a: paper_flux_outer(tau),
                derived_flux_a: da,
                engine_gap: (d0 - e0).abs().max((da - ea).abs()),
            })
        })
        .collect()
}

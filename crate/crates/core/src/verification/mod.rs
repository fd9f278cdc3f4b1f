//! Residual checks that substitute each closed form back into its governing
//! equation, the symmetry machinery, and the boundary-flux comparison.

mod engine;
mod flux;
mod residual;
mod symmetry;

use serde::Serialize;

pub use engine::{
    DerivativeEngine, DerivativeMode, FieldDerivs, ScalarFunction, DIFFERENCE_TOLERANCE,
    DUAL_TOLERANCE, ENGINE_AGREEMENT,
};
pub use flux::{
    bc29_discrepancy, derived_flux, paper_flux_inner, paper_flux_outer, FluxComparison,
};
pub use residual::{
    determining_eq_residual, flow_residuals, pde_residual_eq18, pde_residual_eq28,
    reduced_ode_residual, InvariantProfile,
};
pub use symmetry::{
    invariant_annihilation, AnnihilationReport, Invariant, InvariantI1, InvariantI2,
    InvariantJ1, InvariantJ2, OperatorCoeffs,
};

/// Sample points for residual evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationGrid {
    pub taus: Vec<f64>,
    pub etas: Vec<f64>,
}

impl VerificationGrid {
    /// `tau` in `{0, 0.05, ..., 1} ∪ {2, 5, 10}`, 21 uniform `eta` points on `[0, a]`.
    pub fn standard(a: f64) -> Self {
        let mut taus: Vec<f64> = (0..=20).map(|i| i as f64 * 0.05).collect();
        taus.extend([2.0, 5.0, 10.0]);
        Self {
            taus,
            etas: linspace(0.0, a, 21),
        }
    }

    pub fn uniform(tau_max: f64, n_tau: usize, a: f64, n_eta: usize) -> Self {
        Self {
            taus: linspace(0.0, tau_max, n_tau),
            etas: linspace(0.0, a, n_eta),
        }
    }

    /// Points in lexicographic `(tau, eta)` order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.taus
            .iter()
            .flat_map(move |&t| self.etas.iter().map(move |&e| (t, e)))
    }

    pub fn len(&self) -> usize {
        self.taus.len() * self.etas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Worst-case and RMS residual of one check over a sample set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub name: String,
    pub max_abs: f64,
    /// Root-mean-square residual over the samples.
    pub l2: f64,
    /// Location of the worst residual; first in sample order on ties. One-
    /// dimensional checks put their coordinate first and `0` second.
    pub worst_point: (f64, f64),
    pub n_samples: usize,
    pub tolerance: f64,
    pub pass: bool,
}

/// Accumulates residual samples into a [`ResidualReport`].
#[derive(Clone, Debug)]
pub struct ReportBuilder {
    name: String,
    tolerance: f64,
    max_abs: f64,
    sum_sq: f64,
    worst_point: (f64, f64),
    n: usize,
    non_finite: bool,
}

impl ReportBuilder {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            tolerance,
            max_abs: 0.0,
            sum_sq: 0.0,
            worst_point: (f64::NAN, f64::NAN),
            n: 0,
            non_finite: false,
        }
    }

    pub fn push(&mut self, point: (f64, f64), residual: f64) {
        if !residual.is_finite() {
            self.non_finite = true;
        }
        let a = residual.abs();
        if self.n == 0 || a > self.max_abs {
            self.max_abs = a;
            self.worst_point = point;
        }
        self.sum_sq += residual * residual;
        self.n += 1;
    }

    pub fn finish(self) -> ResidualReport {
        let max_abs = if self.non_finite { f64::INFINITY } else { self.max_abs };
        ResidualReport {
            name: self.name,
            max_abs,
            l2: if self.n == 0 {
                0.0
            } else {
                (self.sum_sq / self.n as f64).sqrt()
            },
            worst_point: self.worst_point,
            n_samples: self.n,
            tolerance: self.tolerance,
            pass: max_abs < self.tolerance,
        }
    }
}

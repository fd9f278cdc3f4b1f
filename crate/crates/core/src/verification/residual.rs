use crate::autodiff::{Dual, Scalar};
use crate::error::Result;
use crate::flow::{FlowState, PSI};
use crate::params::ReducedParams;
use crate::quadrature;
use crate::temperature::TemperatureField;

use super::engine::{DerivativeEngine, ScalarFunction};
use super::{ReportBuilder, ResidualReport, VerificationGrid};

/// Residual of `A Θ_τ = B ∂_η(s Θ_η) + 16 (1 + ε²) / s²` with `s = 8τ + η + 1`.
pub fn pde_residual_eq18<F: TemperatureField>(
    field: &F,
    grid: &VerificationGrid,
    params: &ReducedParams,
    engine: &DerivativeEngine,
) -> Result<ResidualReport> {
    let mut report = ReportBuilder::new("temperature equation (A, B form)", engine.tolerance());
    let src = params.source_strength();
    for (tau, eta) in grid.points() {
        let d = engine.derivs_checked(field, tau, eta)?;
        let s = 8.0 * tau + eta + 1.0;
        let r = params.a_group * d.d_tau
            - params.b_group * (d.d_eta + s * d.d_eta_eta)
            - src / (s * s);
        report.push((tau, eta), r);
    }
    Ok(report.finish())
}

/// Residual of the worked-case equation
/// `Θ_τ - ∂_η(8 s Θ_η) - 80 / (3 s²) = 0`.
pub fn pde_residual_eq28<F: TemperatureField>(
    field: &F,
    grid: &VerificationGrid,
    engine: &DerivativeEngine,
) -> Result<ResidualReport> {
    let mut report = ReportBuilder::new("worked-case temperature equation", engine.tolerance());
    for (tau, eta) in grid.points() {
        let d = engine.derivs_checked(field, tau, eta)?;
        let s = 8.0 * tau + eta + 1.0;
        let r = d.d_tau - 8.0 * (d.d_eta + s * d.d_eta_eta) - 80.0 / (3.0 * s * s);
        report.push((tau, eta), r);
    }
    Ok(report.finish())
}

struct Omega(FlowState);

impl TemperatureField for Omega {
    fn eval<S: Scalar>(&self, tau: S, eta: S) -> S {
        self.0.omega(tau, eta)
    }
}

/// Residuals of the reduced flow system on the exact branch `Psi = 4`,
/// `xi = 8 tau + 1`, `omega = 4 eps / (xi + eta)`:
///
/// * azimuthal momentum `ω_τ + 2Ψω/(ξ+η) - 4(ξ+η)ω_ηη - 8ω_η`,
/// * stress-free boundaries `ω_η + εΨ/(ξ+η)²` at `η ∈ {0, a}`,
/// * flux evolution `dΨ/dτ - RHS`, split into the `aΨ(Ψ-4)` term and the
///   integral term,
/// * `dξ/dτ - 2Ψ` and `ξ(0) - 1`.
pub fn flow_residuals(
    eps: f64,
    a: f64,
    grid: &VerificationGrid,
    engine: &DerivativeEngine,
) -> Result<Vec<ResidualReport>> {
    let flow = FlowState::new(eps);
    let omega = Omega(flow);
    let psi = flow.psi();
    let tol = engine.tolerance();

    let mut momentum = ReportBuilder::new("flow: azimuthal momentum", tol.min(1e-10));
    for (tau, eta) in grid.points() {
        let d = engine.derivs_checked(&omega, tau, eta)?;
        let s: f64 = flow.xi(tau) + eta;
        let r = d.d_tau + 2.0 * psi * d.value / s - 4.0 * s * d.d_eta_eta - 8.0 * d.d_eta;
        momentum.push((tau, eta), r);
    }

    let mut boundary = ReportBuilder::new("flow: stress-free boundaries", tol.min(1e-12));
    let mut flux_term = ReportBuilder::new("flow: flux evolution, Psi(Psi-4) term", tol.min(1e-10));
    let mut flux_integral = ReportBuilder::new("flow: flux evolution, integral term", tol.min(1e-10));
    let mut area = ReportBuilder::new("flow: inner-radius evolution", tol);
    for &tau in &grid.taus {
        let xi: f64 = flow.xi(tau);
        for edge in [0.0, a] {
            let d = engine.derivs(&omega, tau, edge);
            let s = xi + edge;
            boundary.push((tau, edge), d.d_eta + eps * psi / (s * s));
        }

        let log_ratio = (1.0 + a / xi).ln();
        flux_term.push(
            (tau, 0.0),
            a * psi * (psi - 4.0) / (xi * (xi + a) * log_ratio),
        );
        let integrand = |eta: f64| {
            let w = flow.omega(Dual::constant(tau), Dual::var(eta));
            w.re * w.re + 4.0 * eps * w.eps
        };
        let integral = quadrature::integrate(integrand, 0.0, a, 1e-12).value;
        // dΨ/dτ = 0 on this branch.
        flux_integral.push((tau, 0.0), -integral / log_ratio);

        let xi_dual = flow.xi(Dual::var(tau));
        area.push((tau, 0.0), xi_dual.eps - 2.0 * PSI);
    }
    area.push((0.0, 0.0), flow.xi(0.0) - 1.0);

    Ok(vec![
        momentum.finish(),
        boundary.finish(),
        flux_term.finish(),
        flux_integral.finish(),
        area.finish(),
    ])
}

/// Residual of the determining equation for the `b2` coefficient of the
/// symmetry generator:
/// `A b2_τ - B (b2_η + s b2_ηη) - 16(1+ε²)/s² · (-(C2 + C4) - (C1/2)(τ - (A/B) η))`.
pub fn determining_eq_residual<F: TemperatureField>(
    b2: &F,
    c1: f64,
    c2: f64,
    c4: f64,
    grid: &VerificationGrid,
    params: &ReducedParams,
    engine: &DerivativeEngine,
) -> Result<ResidualReport> {
    let mut report = ReportBuilder::new("symmetry: determining equation for b2", engine.tolerance());
    let (a_g, b_g) = (params.a_group, params.b_group);
    for (tau, eta) in grid.points() {
        let d = engine.derivs_checked(b2, tau, eta)?;
        let s = 8.0 * tau + eta + 1.0;
        let factor = -(c2 + c4) - 0.5 * c1 * (tau - a_g / b_g * eta);
        let source = params.source_strength() / (s * s) * factor;
        let r = a_g * d.d_tau - b_g * (d.d_eta + s * d.d_eta_eta) - source;
        report.push((tau, eta), r);
    }
    Ok(report.finish())
}

/// The invariant-reduced profile `phi(I1) = level - 16(1+ε²) / ((8A + B) I1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantProfile {
    pub params: ReducedParams,
    pub level: f64,
}

impl ScalarFunction for InvariantProfile {
    fn eval<S: Scalar>(&self, x: S) -> S {
        let c = self.params.source_strength() / self.params.b_plus_8a();
        S::cst(self.level) - S::cst(c) / x
    }
}

/// Residual of `B I φ'' + (B - 8A) φ' + 16(1+ε²)/I² = 0` at the given samples.
pub fn reduced_ode_residual<F: ScalarFunction>(
    phi: &F,
    params: &ReducedParams,
    samples: &[f64],
    engine: &DerivativeEngine,
) -> ResidualReport {
    let mut report = ReportBuilder::new("symmetry: reduced ODE", engine.tolerance().min(1e-10));
    let (a_g, b_g) = (params.a_group, params.b_group);
    for &x in samples {
        let (_, d1, d2) = engine.derivs_1d(phi, x);
        let r = b_g * x * d2 + (b_g - 8.0 * a_g) * d1 + params.source_strength() / (x * x);
        report.push((x, 0.0), r);
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::PaperCase;
    use crate::temperature::{
        paper_case_field, ConstantField, PaperCaseSolution, ThetaGeneral, ThetaSimple,
    };

    const C5: f64 = 5.0 / 3.0;

    fn grid() -> VerificationGrid {
        VerificationGrid::standard(1.0)
    }

    struct PlusEtaSquared<F>(F);
    impl<F: TemperatureField> TemperatureField for PlusEtaSquared<F> {
        fn eval<S: Scalar>(&self, tau: S, eta: S) -> S {
            self.0.eval(tau, eta) + eta * eta
        }
    }

    #[test]
    fn closed_forms_solve_reduced_equation() {
        let p = PaperCase::reduced();
        let e = DerivativeEngine::dual();
        let simple = ThetaSimple { params: p, level: C5 };
        assert!(pde_residual_eq18(&simple, &grid(), &p, &e).unwrap().max_abs < 1e-9);
        let general = paper_case_field(C5);
        assert!(pde_residual_eq18(&general, &grid(), &p, &e).unwrap().max_abs < 1e-9);
    }

    #[test]
    fn general_family_solves_for_arbitrary_groups() {
        let p = ReducedParams::new(0.37, 2.9, -1.3, 1.8).unwrap();
        let c = crate::params::SolutionConstants::new(0.2, 0.4, 0.013).unwrap();
        let field = ThetaGeneral::new(p, c);
        let g = VerificationGrid::standard(p.a);
        let r = pde_residual_eq18(&field, &g, &p, &DerivativeEngine::dual()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn perturbation_leaves_hand_computed_residual() {
        // The perturbation adds -B d/deta(s * 2 eta) = -B (2 eta + 2 s): -2B at the origin.
        let p = PaperCase::reduced();
        let field = PlusEtaSquared(paper_case_field(C5));
        let g = VerificationGrid {
            taus: vec![0.0],
            etas: vec![0.0],
        };
        let r = pde_residual_eq18(&field, &g, &p, &DerivativeEngine::dual()).unwrap();
        assert!((r.max_abs - 2.0 * p.b_group).abs() < 1e-12);
        assert!(!r.pass);
    }

    #[test]
    fn worked_case_equation() {
        let e = DerivativeEngine::dual();
        let g = VerificationGrid::uniform(1.0, 10, 1.0, 10);
        let r = pde_residual_eq28(&PaperCaseSolution { c5: C5 }, &g, &e).unwrap();
        assert!(r.max_abs < 1e-9);

        let origin = VerificationGrid {
            taus: vec![0.0],
            etas: vec![0.0],
        };
        let r = pde_residual_eq28(&ConstantField(C5 / 2.0), &origin, &e).unwrap();
        assert!((r.max_abs - 80.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn worked_case_coefficients_follow_from_groups() {
        let p = PaperCase::reduced();
        assert_eq!(p.b_group / p.a_group, 8.0);
        assert!((p.source_strength() / p.a_group - 80.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn flow_branch_residuals() {
        for eps in [0.5, 0.0, -2.0] {
            let reports = flow_residuals(eps, 1.0, &grid(), &DerivativeEngine::dual()).unwrap();
            assert_eq!(reports.len(), 5);
            for r in &reports {
                assert!(r.pass, "{r:?}");
            }
            assert_eq!(reports[2].max_abs, 0.0);
        }
    }

    #[test]
    fn determining_equation_examples() {
        let p = PaperCase::reduced();
        let e = DerivativeEngine::dual();
        let b2 = ThetaSimple { params: p, level: C5 };
        let r = determining_eq_residual(&b2, 0.0, 1.0, -2.0, &grid(), &p, &e).unwrap();
        assert!(r.max_abs < 1e-9);

        let zero = ConstantField(0.0);
        let r = determining_eq_residual(&zero, 0.0, 1.0, -1.0, &grid(), &p, &e).unwrap();
        assert_eq!(r.max_abs, 0.0);

        let origin = VerificationGrid {
            taus: vec![0.0],
            etas: vec![0.0],
        };
        let r = determining_eq_residual(&zero, 0.0, 1.0, 0.0, &origin, &p, &e).unwrap();
        assert!((r.max_abs - 20.0).abs() < 1e-12);
    }

    struct Constant(f64);
    impl ScalarFunction for Constant {
        fn eval<S: Scalar>(&self, _x: S) -> S {
            S::cst(self.0)
        }
    }

    struct Identity;
    impl ScalarFunction for Identity {
        fn eval<S: Scalar>(&self, x: S) -> S {
            x
        }
    }

    #[test]
    fn reduced_ode_examples() {
        let p = PaperCase::reduced();
        let e = DerivativeEngine::dual();
        let samples: Vec<f64> = (0..50).map(|i| 1.0 + i as f64 * 0.7).collect();
        let phi = InvariantProfile { params: p, level: C5 };
        assert!(reduced_ode_residual(&phi, &p, &samples, &e).max_abs < 1e-10);
        let r = reduced_ode_residual(&Constant(3.0), &p, &[1.0], &e);
        assert!((r.max_abs - 20.0).abs() < 1e-12);
        let r = reduced_ode_residual(&Identity, &p, &[1.0], &e);
        assert!((r.max_abs - 20.0).abs() < 1e-12);
    }

    #[test]
    fn difference_mode_passes_looser_tolerance() {
        let p = PaperCase::reduced();
        let e = DerivativeEngine::central_difference(1e-4);
        let r = pde_residual_eq18(&paper_case_field(C5), &grid(), &p, &e).unwrap();
        assert_eq!(r.tolerance, 1e-5);
        assert!(r.pass, "{r:?}");
    }
}

//! The `verify` check suite.

use serde::Serialize;

use crate::flow::{angular_momentum, angular_momentum_quadrature, radii, stress_components, RingGeometry};
use crate::params::{from_reduced, paper_case_k, PaperCase, ReducedParams, SolutionConstants};
use crate::temperature::{
    boundary_difference_c, boundary_traces, boundary_traces_by_restriction,
    c5_nonnegativity_bound, dimensional_t, dimensional_t_via_reduced, theta_general,
    theta_paper_case, ConstantField, PaperCaseSolution, ScanGrid, TemperatureField, ThetaGeneral,
    ThetaSimple,
};
use crate::verification::{
    bc29_discrepancy, determining_eq_residual, flow_residuals, invariant_annihilation,
    pde_residual_eq18, pde_residual_eq28, reduced_ode_residual, DerivativeEngine,
    FluxComparison, InvariantI1, InvariantI2, InvariantJ1, InvariantJ2, InvariantProfile,
    OperatorCoeffs, ResidualReport, VerificationGrid,
};

use super::config::RunConfig;
use super::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    /// Decides the exit status.
    Check,
    /// Physical admissibility; reported only.
    Constraint,
    /// A known inconsistency in the printed data; reported only.
    PaperInconsistency,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub category: Category,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, category: Category, max_residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            category,
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
        }
    }

    fn check(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        Self::new(name, Category::Check, max_residual, tolerance)
    }
}

impl From<ResidualReport> for CheckOutcome {
    fn from(r: ResidualReport) -> Self {
        Self {
            name: r.name,
            category: Category::Check,
            max_residual: r.max_abs,
            tolerance: r.tolerance,
            pass: r.pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub reduced: ReducedParams,
    pub constants: SolutionConstants,
    pub checks: Vec<CheckOutcome>,
    /// Printed versus derived boundary fluxes; worked case only.
    pub flux_comparison: Vec<FluxComparison>,
    /// All `check` entries pass.
    pub pass: bool,
}

const THETA_SAMPLES: [f64; 4] = [-1.0, 0.0, 0.7, 3.5];
const TRACE_TAUS: [f64; 5] = [0.0, 0.1, 1.0, 10.0, 100.0];
const FLUX_TAUS: [f64; 4] = [0.0, 0.25, 1.0, 10.0];

fn max_over<I: IntoIterator<Item = Result<f64, crate::Error>>>(items: I) -> Result<f64, CliError> {
    items.into_iter().try_fold(0.0_f64, |m, v| {
        let v = v.map_err(CliError::from)?;
        Ok(if m.is_nan() || v.is_nan() { f64::NAN } else { m.max(v) })
    })
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// Runs every check applicable to `config`.
pub fn run_checks(config: &RunConfig) -> Result<VerifyReport, CliError> {
    let params = config.reduced;
    let consts = config.consts;
    let grid = VerificationGrid::standard(params.a);
    let engine = DerivativeEngine::dual();
    let general = ThetaGeneral::new(params, consts);
    let simple = ThetaSimple {
        params,
        level: consts.c5,
    };
    let mut checks: Vec<CheckOutcome> = Vec::new();
    let push_report = |checks: &mut Vec<CheckOutcome>, r: ResidualReport, name: &str| {
        let mut c = CheckOutcome::from(r);
        c.name = name.to_string();
        checks.push(c);
    };

    let r = pde_residual_eq18(&simple, &grid, &params, &engine)?;
    push_report(&mut checks, r, "temperature equation: translation-invariant solution");
    let r = pde_residual_eq18(&general, &grid, &params, &engine)?;
    push_report(&mut checks, r, "temperature equation: general solution");

    for r in flow_residuals(params.eps, params.a, &grid, &engine)? {
        checks.push(r.into());
    }

    let r = determining_eq_residual(&simple, 0.0, 1.0, -2.0, &grid, &params, &engine)?;
    checks.push(r.into());

    let translation = OperatorCoeffs {
        c1: 0.0,
        c2: 0.0,
        c3: consts.c3,
        c4: 0.0,
        b2: ConstantField(0.0),
        params,
    };
    let scaling = OperatorCoeffs {
        c1: 0.0,
        c2: 1.0,
        c3: consts.c3,
        c4: -2.0,
        b2: simple,
        params,
    };
    let i1 = invariant_annihilation(&translation, &InvariantI1, &grid, &THETA_SAMPLES);
    checks.push(CheckOutcome::check("symmetry: X(I1) = 0", i1.max_abs, 1e-12));
    let i2 = invariant_annihilation(&translation, &InvariantI2, &grid, &THETA_SAMPLES);
    checks.push(CheckOutcome::check("symmetry: X(I2) = 0", i2.max_abs, 1e-12));
    let j1 = invariant_annihilation(&scaling, &InvariantJ1 { c3: consts.c3 }, &grid, &THETA_SAMPLES);
    checks.push(CheckOutcome::check("symmetry: X(J1) = 0", j1.max_abs, 1e-9));
    let j2 = InvariantJ2 {
        params,
        c3: consts.c3,
        c5: consts.c5,
    };
    let j2 = invariant_annihilation(&scaling, &j2, &grid, &THETA_SAMPLES);
    checks.push(CheckOutcome::check("symmetry: X(J2) = 0", j2.max_abs, 1e-8));

    let profile = InvariantProfile {
        params,
        level: consts.c5,
    };
    let upper = 1.0 + 8.0 * 10.0 + params.a;
    let samples: Vec<f64> = (0..=200).map(|i| 1.0 + (upper - 1.0) * i as f64 / 200.0).collect();
    checks.push(reduced_ode_residual(&profile, &params, &samples, &engine).into());

    let trace_gap = max_over(TRACE_TAUS.iter().map(|&tau| {
        let (o1, i1) = boundary_traces(tau, &params, &consts)?;
        let (o2, i2) = boundary_traces_by_restriction(tau, &params, &consts)?;
        Ok(rel_gap(o1, o2).max(rel_gap(i1, i2)))
    }))?;
    checks.push(CheckOutcome::check("boundary traces: closed form vs restriction", trace_gap, 1e-12));

    let c = boundary_difference_c(&params, &consts);
    let (outer0, inner0) = boundary_traces(0.0, &params, &consts)?;
    checks.push(CheckOutcome::check(
        "boundary temperatures equal at tau = 0 (C = 0)",
        c.abs().max((outer0 - inner0).abs()),
        1e-12,
    ));

    let far = 1e9;
    let asymptote = max_over(grid.etas.iter().map(|&eta| {
        Ok((theta_general(far, eta, &params, &consts)? - 0.5 * consts.c5).abs())
    }))?;
    checks.push(CheckOutcome::check("long-time level C5/2", asymptote, 1e-6));

    let scan = c5_nonnegativity_bound(&params, &consts, &ScanGrid::default())?;
    checks.push(CheckOutcome {
        name: "temperature nonnegative on [0, 10] x [0, a]".into(),
        category: Category::Constraint,
        max_residual: (-scan.min_value).max(0.0),
        tolerance: crate::temperature::NONNEGATIVITY_TOL,
        pass: scan.threshold_ok,
    });

    checks.extend(physical_checks(config)?);

    let mut flux_comparison = Vec::new();
    if params.is_paper_case() {
        checks.extend(worked_case_checks(config, &grid, &engine)?);
        flux_comparison = bc29_discrepancy(&FLUX_TAUS, consts.c5)?;
        let inner = flux_comparison.iter().fold(0.0_f64, |m, f| m.max(f.gap_0().abs()));
        let outer = flux_comparison.iter().fold(0.0_f64, |m, f| m.max(f.gap_a().abs()));
        let engine_gap = flux_comparison.iter().fold(0.0_f64, |m, f| m.max(f.engine_gap));
        checks.push(CheckOutcome::check("printed flux at eta = 0 matches derivative", inner, 1e-12));
        checks.push(CheckOutcome::check("closed-form flux matches derivative engine", engine_gap, 1e-12));
        checks.push(CheckOutcome::new(
            "printed flux at eta = a matches derivative",
            Category::PaperInconsistency,
            outer,
            1e-12,
        ));
    }

    let pass = checks
        .iter()
        .filter(|c| c.category == Category::Check)
        .all(|c| c.pass);
    Ok(VerifyReport {
        reduced: params,
        constants: consts,
        checks,
        flux_comparison,
        pass,
    })
}

fn physical_checks(config: &RunConfig) -> Result<Vec<CheckOutcome>, CliError> {
    let phys = config.physical_or_embedding();
    let consts = config.consts;
    let times = [0.0, 0.5, 1.0, 10.0];
    let mut out = Vec::new();

    let geometry = RingGeometry::new(&phys);
    let area0 = geometry.area_invariant(0.0);
    let drift = times
        .iter()
        .map(|&t| rel_gap(geometry.area_invariant(t), area0))
        .fold(0.0_f64, f64::max);
    out.push(CheckOutcome::check("conservation: R1^2 - R2^2", drift, 1e-12));

    let m0 = angular_momentum(0.0, &phys)?;
    let momentum = max_over(times.iter().map(|&t| {
        let m = angular_momentum(t, &phys)?;
        let q = angular_momentum_quadrature(t, &phys)?;
        Ok(rel_gap(m, m0).max(rel_gap(q, m)))
    }))?;
    out.push(CheckOutcome::check("conservation: angular momentum", momentum, 1e-10));

    let stress = max_over(times.iter().map(|&t| {
        let (r1, r2) = radii(t, &phys)?;
        let mut worst: f64 = 0.0;
        for r in [r1, r2] {
            let s = stress_components(r, t, &phys, phys.p_inf)?;
            worst = worst.max(s.t_rr.abs()).max(s.t_r_theta.abs());
        }
        Ok(worst)
    }))?;
    out.push(CheckOutcome::check("free boundaries: T_rr = T_r_theta = 0", stress, 1e-12));

    let (taus, etas) = (
        [0.0, 0.05, 0.3, 1.0, 4.0],
        [0.0, 0.25, 0.5, 0.75, 1.0].map(|f| f * config.reduced.a),
    );
    let mut coord: f64 = 0.0;
    let mut dimensional: f64 = 0.0;
    for &tau in &taus {
        for &eta in &etas {
            let (t, r) = from_reduced(tau, eta, &phys);
            let s = r * r / (phys.r20 * phys.r20);
            coord = coord.max(rel_gap(s, 8.0 * tau + eta + 1.0));
            let direct = dimensional_t(t, r, &phys, &consts)?;
            let via = dimensional_t_via_reduced(t, r, &phys, &consts)?;
            dimensional = dimensional.max(rel_gap(direct, via));
        }
    }
    out.push(CheckOutcome::check("coordinates: r^2 / R20^2 = 8 tau + eta + 1", coord, 1e-12));
    out.push(CheckOutcome::check("dimensional temperature matches reduced form", dimensional, 1e-10));
    Ok(out)
}

fn worked_case_checks(
    config: &RunConfig,
    grid: &VerificationGrid,
    engine: &DerivativeEngine,
) -> Result<Vec<CheckOutcome>, CliError> {
    let consts = config.consts;
    let mut out = Vec::new();

    let k = paper_case_k(PaperCase::C3)?;
    out.push(CheckOutcome::check("worked case: K = -5/18432", rel_gap(k, PaperCase::K), 1e-15));
    out.push(CheckOutcome::check("worked case: K rounds to -0.00027127", (k + 0.00027127).abs(), 5e-9));

    let mut r: CheckOutcome = pde_residual_eq28(&PaperCaseSolution { c5: consts.c5 }, grid, engine)?.into();
    r.name = "worked-case equation: printed solution".into();
    out.push(r);
    let general = ThetaGeneral::new(config.reduced, consts);
    let mut r: CheckOutcome = pde_residual_eq28(&general, grid, engine)?.into();
    r.name = "worked-case equation: general solution".into();
    out.push(r);

    if consts.c3 == PaperCase::C3 && consts.k == PaperCase::K {
        let mut gap: f64 = 0.0;
        for (tau, eta) in grid.points() {
            gap = gap.max(rel_gap(general.value(tau, eta), theta_paper_case(tau, eta, consts.c5)));
        }
        out.push(CheckOutcome::check("worked case: general solution reduces to printed form", gap, 1e-12));
    }
    Ok(out)
}

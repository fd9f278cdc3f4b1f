//! Finite-difference solver for the reduced temperature equation
//!
//! ```text
//! Θ_τ = ∂_η(κ (8τ + η + 1) Θ_η) + q(τ, η),   0 ≤ η ≤ a,
//! ```
//!
//! in conservative form with face-centred coefficients, ghost nodes for Neumann
//! data, and implicit Euler or Crank–Nicolson in time.

mod problems;
mod study;
mod tridiag;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use problems::{solve_general, solve_paper_case, GeneralProblem, PaperCaseProblem};
pub use study::{convergence_study, observed_orders, ConvergenceRow, ConvergenceTable};
pub use tridiag::solve_tridiagonal;

/// Uniform grid `eta_j = j h`, `h = a / n_cells`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    n_cells: usize,
    a: f64,
}

impl Grid1D {
    pub const MIN_CELLS: usize = 8;

    pub fn new(n_cells: usize, a: f64) -> Result<Self> {
        if n_cells < Self::MIN_CELLS {
            return Err(Error::Validation {
                field: "n_cells",
                reason: format!("need at least {} cells, got {n_cells}", Self::MIN_CELLS),
            });
        }
        crate::error::require_positive("a", a)?;
        Ok(Self { n_cells, a })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn h(&self) -> f64 {
        self.a / self.n_cells as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        self.a * j as f64 / self.n_cells as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n_cells).map(|j| self.node(j)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    ImplicitEuler,
    CrankNicolson,
}

/// Which boundary data drive the solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BcMode {
    /// Neumann data from the derivative of the exact solution.
    DerivedNeumann,
    /// Neumann data as printed for the worked case. Diagnostic only.
    PaperNeumann,
    /// Dirichlet data from the exact boundary traces.
    ExactDirichlet,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeStep {
    /// A fixed `dtau`.
    Fixed(f64),
    /// `dtau = ratio * h`.
    PerCell(f64),
}

impl TimeStep {
    pub fn resolve(&self, h: f64) -> f64 {
        match *self {
            TimeStep::Fixed(dt) => dt,
            TimeStep::PerCell(ratio) => ratio * h,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub time_step: TimeStep,
    pub t_end: f64,
    pub scheme: Scheme,
    pub bc_mode: BcMode,
    /// Record a snapshot every this many steps, besides the first and last.
    pub snapshot_every: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            time_step: TimeStep::PerCell(0.125),
            t_end: 0.25,
            scheme: Scheme::CrankNicolson,
            bc_mode: BcMode::DerivedNeumann,
            snapshot_every: None,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self, h: f64) -> Result<()> {
        let dt = self.time_step.resolve(h);
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Validation {
                field: "dt",
                reason: format!("time step must be positive, got {dt}"),
            });
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::Validation {
                field: "t_end",
                reason: format!("final time must be non-negative, got {}", self.t_end),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    Neumann,
    Dirichlet,
}

/// An initial-boundary-value problem for `Θ_τ = ∂_η(κ s Θ_η) + q`.
pub trait Ibvp {
    /// `κ` in the coefficient `D = κ (8τ + η + 1)`.
    fn diffusivity(&self) -> f64;
    fn source(&self, tau: f64, eta: f64) -> f64;
    fn initial(&self, eta: f64) -> f64;
    fn boundary_kind(&self) -> BoundaryKind;
    /// Flux or value at `eta = 0`.
    fn lower(&self, tau: f64) -> f64;
    /// Flux or value at `eta = a`.
    fn upper(&self, tau: f64) -> f64;
    /// Reference solution, when known.
    fn exact(&self, tau: f64, eta: f64) -> Option<f64>;
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Snapshot {
    pub tau: f64,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveResult {
    pub etas: Vec<f64>,
    pub snapshots: Vec<Snapshot>,
    pub dt: f64,
    pub steps: usize,
    /// Max-norm error against the reference at the final time.
    pub error_inf: f64,
    /// Trapezoidal `sqrt(int e^2 deta)` at the final time.
    pub error_l2: f64,
    /// Filled in by refinement studies.
    pub observed_order: Option<f64>,
}

impl SolveResult {
    pub fn final_snapshot(&self) -> &Snapshot {
        self.snapshots.last().expect("a solve always records the initial state")
    }
}

/// Tridiagonal discretisation of `∂_η(D Θ_η)` at one coefficient time.
struct Stencil {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    /// `2 D(-h/2) / h` and `2 D(a + h/2) / h`: weights of the Neumann data.
    flux_lo: f64,
    flux_hi: f64,
}

impl Stencil {
    fn assemble<P: Ibvp + ?Sized>(problem: &P, grid: &Grid1D, tau: f64) -> Self {
        let n = grid.n_cells();
        let h = grid.h();
        let inv_h2 = 1.0 / (h * h);
        let kappa = problem.diffusivity();
        let coeff = |eta: f64| kappa * (8.0 * tau + eta + 1.0);
        let mut lower = vec![0.0; n + 1];
        let mut diag = vec![0.0; n + 1];
        let mut upper = vec![0.0; n + 1];
        for j in 0..=n {
            let eta = grid.node(j);
            let d_minus = coeff(eta - 0.5 * h) * inv_h2;
            let d_plus = coeff(eta + 0.5 * h) * inv_h2;
            diag[j] = -(d_minus + d_plus);
            if j == 0 {
                upper[j] = d_minus + d_plus;
            } else if j == n {
                lower[j] = d_minus + d_plus;
            } else {
                lower[j] = d_minus;
                upper[j] = d_plus;
            }
        }
        Self {
            lower,
            diag,
            upper,
            flux_lo: 2.0 * coeff(-0.5 * h) / h,
            flux_hi: 2.0 * coeff(grid.a() + 0.5 * h) / h,
        }
    }

    fn apply(&self, theta: &[f64]) -> Vec<f64> {
        let n = theta.len() - 1;
        (0..=n)
            .map(|j| {
                let mut v = self.diag[j] * theta[j];
                if j > 0 {
                    v += self.lower[j] * theta[j - 1];
                }
                if j < n {
                    v += self.upper[j] * theta[j + 1];
                }
                v
            })
            .collect()
    }
}

/// `∂_η(κ s Θ_η)` at the nodes, with Neumann fluxes `(g_lo, g_hi)` entering
/// through ghost nodes.
pub fn apply_operator<P: Ibvp + ?Sized>(
    problem: &P,
    grid: &Grid1D,
    tau: f64,
    theta: &[f64],
    g_lo: f64,
    g_hi: f64,
) -> Vec<f64> {
    let st = Stencil::assemble(problem, grid, tau);
    let mut out = st.apply(theta);
    out[0] -= st.flux_lo * g_lo;
    let n = out.len() - 1;
    out[n] += st.flux_hi * g_hi;
    out
}

fn error_norms<P: Ibvp + ?Sized>(problem: &P, grid: &Grid1D, tau: f64, values: &[f64]) -> (f64, f64) {
    let n = grid.n_cells();
    let h = grid.h();
    let mut inf: f64 = 0.0;
    let mut sq = 0.0;
    for (j, &v) in values.iter().enumerate() {
        let Some(exact) = problem.exact(tau, grid.node(j)) else {
            return (f64::NAN, f64::NAN);
        };
        let e = (v - exact).abs();
        inf = inf.max(e);
        let w = if j == 0 || j == n { 0.5 } else { 1.0 };
        sq += w * h * e * e;
    }
    (inf, sq.sqrt())
}

/// Marches `problem` from `tau = 0` to `config.t_end`.
pub fn march<P: Ibvp + ?Sized>(problem: &P, grid: &Grid1D, config: &SolverConfig) -> Result<SolveResult> {
    let h = grid.h();
    config.validate(h)?;
    let n = grid.n_cells();
    let etas = grid.nodes();
    let nominal = config.time_step.resolve(h);
    let steps = if config.t_end == 0.0 {
        0
    } else {
        (config.t_end / nominal - 1e-9).ceil().max(1.0) as usize
    };
    let dt = if steps == 0 { nominal } else { config.t_end / steps as f64 };
    let dirichlet = problem.boundary_kind() == BoundaryKind::Dirichlet;

    let mut theta: Vec<f64> = etas.iter().map(|&e| problem.initial(e)).collect();
    if dirichlet {
        theta[0] = problem.lower(0.0);
        theta[n] = problem.upper(0.0);
    }
    let mut snapshots = vec![Snapshot {
        tau: 0.0,
        values: theta.clone(),
    }];

    let mut diag = vec![0.0; n + 1];
    let mut lower = vec![0.0; n + 1];
    let mut upper = vec![0.0; n + 1];
    let mut rhs = vec![0.0; n + 1];
    for step in 1..=steps {
        let tau_old = (step - 1) as f64 * dt;
        let tau_new = step as f64 * dt;
        let (tau_coeff, implicit_weight) = match config.scheme {
            Scheme::CrankNicolson => (0.5 * (tau_old + tau_new), 0.5 * dt),
            Scheme::ImplicitEuler => (tau_new, dt),
        };
        let st = Stencil::assemble(problem, grid, tau_coeff);
        let explicit = match config.scheme {
            Scheme::CrankNicolson => Some(st.apply(&theta)),
            Scheme::ImplicitEuler => None,
        };
        for j in 0..=n {
            diag[j] = 1.0 - implicit_weight * st.diag[j];
            lower[j] = -implicit_weight * st.lower[j];
            upper[j] = -implicit_weight * st.upper[j];
            let mut r = theta[j] + dt * problem.source(tau_coeff, etas[j]);
            if let Some(ex) = &explicit {
                r += 0.5 * dt * ex[j];
            }
            rhs[j] = r;
        }
        if dirichlet {
            for (j, value) in [(0, problem.lower(tau_new)), (n, problem.upper(tau_new))] {
                diag[j] = 1.0;
                lower[j] = 0.0;
                upper[j] = 0.0;
                rhs[j] = value;
            }
        } else {
            let (lo, hi) = match config.scheme {
                Scheme::CrankNicolson => (
                    0.5 * (problem.lower(tau_old) + problem.lower(tau_new)),
                    0.5 * (problem.upper(tau_old) + problem.upper(tau_new)),
                ),
                Scheme::ImplicitEuler => (problem.lower(tau_new), problem.upper(tau_new)),
            };
            rhs[0] -= dt * st.flux_lo * lo;
            rhs[n] += dt * st.flux_hi * hi;
        }
        theta = solve_tridiagonal(&lower, &diag, &upper, &rhs);
        if theta.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergence { step, tau: tau_new });
        }
        let record = step == steps || config.snapshot_every.is_some_and(|k| k > 0 && step % k == 0);
        if record {
            snapshots.push(Snapshot {
                tau: tau_new,
                values: theta.clone(),
            });
        }
    }

    let t_final = steps as f64 * dt;
    let (error_inf, error_l2) = error_norms(problem, grid, t_final, &theta);
    Ok(SolveResult {
        etas,
        snapshots,
        dt,
        steps,
        error_inf,
        error_l2,
        observed_order: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Zero source, linear data: `Θ = α η + β + κ α τ` is exact.
    struct LinearPatch {
        kappa: f64,
        alpha: f64,
        beta: f64,
    }

    impl Ibvp for LinearPatch {
        fn diffusivity(&self) -> f64 {
            self.kappa
        }
        fn source(&self, _tau: f64, _eta: f64) -> f64 {
            0.0
        }
        fn initial(&self, eta: f64) -> f64 {
            self.alpha * eta + self.beta
        }
        fn boundary_kind(&self) -> BoundaryKind {
            BoundaryKind::Neumann
        }
        fn lower(&self, _tau: f64) -> f64 {
            self.alpha
        }
        fn upper(&self, _tau: f64) -> f64 {
            self.alpha
        }
        fn exact(&self, tau: f64, eta: f64) -> Option<f64> {
            Some(self.alpha * eta + self.beta + self.kappa * self.alpha * tau)
        }
    }

    #[test]
    fn grid_validation() {
        assert!(Grid1D::new(7, 1.0).is_err());
        let g = Grid1D::new(8, 2.0).unwrap();
        assert_eq!(g.h(), 0.25);
        assert_eq!(g.nodes().len(), 9);
        assert_eq!(g.node(8), 2.0);
    }

    #[test]
    fn operator_exact_on_linear_and_quadratic_profiles() {
        let p = LinearPatch {
            kappa: 3.0,
            alpha: 0.7,
            beta: -1.0,
        };
        let grid = Grid1D::new(16, 1.3).unwrap();
        let theta: Vec<f64> = grid.nodes().iter().map(|&e| p.initial(e)).collect();
        let out = apply_operator(&p, &grid, 0.4, &theta, p.alpha, p.alpha);
        for v in out {
            assert!((v - p.kappa * p.alpha).abs() < 1e-11, "{v}");
        }
        // d/deta(kappa s 2 eta) = 2 kappa (s + eta)
        let tau = 0.2;
        let theta: Vec<f64> = grid.nodes().iter().map(|&e| e * e).collect();
        let out = apply_operator(&p, &grid, tau, &theta, 0.0, 2.0 * grid.a());
        for (j, v) in out.iter().enumerate() {
            let e = grid.node(j);
            let expect = 2.0 * p.kappa * (8.0 * tau + 2.0 * e + 1.0);
            assert!((v - expect).abs() < 1e-10, "{j}: {v} vs {expect}");
        }
    }

    #[test]
    fn patch_test_linear_profile() {
        let p = LinearPatch {
            kappa: 8.0,
            alpha: -0.6,
            beta: 2.0,
        };
        let grid = Grid1D::new(20, 1.0).unwrap();
        for scheme in [Scheme::CrankNicolson, Scheme::ImplicitEuler] {
            let config = SolverConfig {
                time_step: TimeStep::Fixed(0.01),
                t_end: 0.5,
                scheme,
                ..SolverConfig::default()
            };
            let r = march(&p, &grid, &config).unwrap();
            assert!(r.error_inf < 1e-12, "{scheme:?}: {}", r.error_inf);
        }
    }

    #[test]
    fn constant_state_is_preserved() {
        let p = LinearPatch {
            kappa: 5.0,
            alpha: 0.0,
            beta: 1.25,
        };
        let grid = Grid1D::new(32, 1.0).unwrap();
        let config = SolverConfig {
            time_step: TimeStep::Fixed(0.003),
            t_end: 1.0,
            ..SolverConfig::default()
        };
        let r = march(&p, &grid, &config).unwrap();
        for v in &r.final_snapshot().values {
            assert!((v - 1.25).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_end_time_returns_initial_state() {
        let p = LinearPatch {
            kappa: 1.0,
            alpha: 1.0,
            beta: 0.0,
        };
        let grid = Grid1D::new(8, 1.0).unwrap();
        let config = SolverConfig {
            t_end: 0.0,
            ..SolverConfig::default()
        };
        let r = march(&p, &grid, &config).unwrap();
        assert_eq!(r.steps, 0);
        assert_eq!(r.snapshots.len(), 1);
        assert_eq!(r.error_inf, 0.0);
    }

    #[test]
    fn bad_config_rejected() {
        let p = LinearPatch {
            kappa: 1.0,
            alpha: 1.0,
            beta: 0.0,
        };
        let grid = Grid1D::new(8, 1.0).unwrap();
        let config = SolverConfig {
            time_step: TimeStep::Fixed(-1.0),
            ..SolverConfig::default()
        };
        assert!(matches!(march(&p, &grid, &config), Err(Error::Validation { field: "dt", .. })));
    }

    struct Blowup;
    impl Ibvp for Blowup {
        fn diffusivity(&self) -> f64 {
            1.0
        }
        fn source(&self, tau: f64, _eta: f64) -> f64 {
            if tau > 0.06 {
                f64::INFINITY
            } else {
                0.0
            }
        }
        fn initial(&self, _eta: f64) -> f64 {
            0.0
        }
        fn boundary_kind(&self) -> BoundaryKind {
            BoundaryKind::Neumann
        }
        fn lower(&self, _tau: f64) -> f64 {
            0.0
        }
        fn upper(&self, _tau: f64) -> f64 {
            0.0
        }
        fn exact(&self, _tau: f64, _eta: f64) -> Option<f64> {
            None
        }
    }

    #[test]
    fn divergence_names_step() {
        let grid = Grid1D::new(8, 1.0).unwrap();
        let config = SolverConfig {
            time_step: TimeStep::Fixed(0.02),
            t_end: 0.2,
            ..SolverConfig::default()
        };
        match march(&Blowup, &grid, &config) {
            Err(Error::Divergence { step, .. }) => assert_eq!(step, 4),
            other => panic!("unexpected {other:?}"),
        }
    }
}

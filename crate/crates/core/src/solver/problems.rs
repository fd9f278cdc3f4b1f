use crate::autodiff::Dual;
use crate::error::{Error, Result};
use crate::params::{ReducedParams, SolutionConstants};
use crate::temperature::{
    boundary_traces, initial_profile, theta_paper_case, TemperatureField, ThetaGeneral,
};
use crate::verification::{derived_flux, paper_flux_inner, paper_flux_outer};

use super::{march, BcMode, BoundaryKind, Grid1D, Ibvp, SolveResult, SolverConfig};

/// The worked case: `Θ_τ = ∂_η(8 s Θ_η) + 80 / (3 s²)` on `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PaperCaseProblem {
    pub c5: f64,
    pub bc_mode: BcMode,
}

impl Ibvp for PaperCaseProblem {
    fn diffusivity(&self) -> f64 {
        8.0
    }

    fn source(&self, tau: f64, eta: f64) -> f64 {
        let s = 8.0 * tau + eta + 1.0;
        80.0 / (3.0 * s * s)
    }

    fn initial(&self, eta: f64) -> f64 {
        initial_profile(eta, self.c5)
    }

    fn boundary_kind(&self) -> BoundaryKind {
        match self.bc_mode {
            BcMode::ExactDirichlet => BoundaryKind::Dirichlet,
            _ => BoundaryKind::Neumann,
        }
    }

    fn lower(&self, tau: f64) -> f64 {
        match self.bc_mode {
            BcMode::DerivedNeumann => derived_flux(tau, 0.0),
            BcMode::PaperNeumann => paper_flux_inner(tau),
            BcMode::ExactDirichlet => theta_paper_case(tau, 0.0, self.c5),
        }
    }

    fn upper(&self, tau: f64) -> f64 {
        match self.bc_mode {
            BcMode::DerivedNeumann => derived_flux(tau, 1.0),
            BcMode::PaperNeumann => paper_flux_outer(tau),
            BcMode::ExactDirichlet => theta_paper_case(tau, 1.0, self.c5),
        }
    }

    fn exact(&self, tau: f64, eta: f64) -> Option<f64> {
        Some(theta_paper_case(tau, eta, self.c5))
    }
}

/// Solves the worked-case problem and measures the error against its closed form.
pub fn solve_paper_case(grid: &Grid1D, config: &SolverConfig, c5: f64) -> Result<SolveResult> {
    if grid.a() != 1.0 {
        return Err(Error::Validation {
            field: "a",
            reason: format!("the worked case lives on [0, 1], got a = {}", grid.a()),
        });
    }
    let problem = PaperCaseProblem {
        c5,
        bc_mode: config.bc_mode,
    };
    march(&problem, grid, config)
}

/// `A Θ_τ = B ∂_η(s Θ_η) + 16(1+ε²)/s²`, divided through by `A`, with data
/// from the general invariant solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralProblem {
    field: ThetaGeneral,
    bc_mode: BcMode,
}

impl GeneralProblem {
    pub fn new(params: ReducedParams, consts: SolutionConstants, bc_mode: BcMode) -> Result<Self> {
        params.validate()?;
        consts.validate()?;
        if bc_mode == BcMode::PaperNeumann {
            return Err(Error::Config(
                "printed Neumann data exist only for the worked case".into(),
            ));
        }
        Ok(Self {
            field: ThetaGeneral::new(params, consts),
            bc_mode,
        })
    }

    fn flux(&self, tau: f64, eta: f64) -> f64 {
        self.field.eval(Dual::constant(tau), Dual::var(eta)).eps
    }

    fn params(&self) -> &ReducedParams {
        &self.field.params
    }
}

impl Ibvp for GeneralProblem {
    fn diffusivity(&self) -> f64 {
        self.params().b_group / self.params().a_group
    }

    fn source(&self, tau: f64, eta: f64) -> f64 {
        let s = 8.0 * tau + eta + 1.0;
        self.params().source_strength() / (self.params().a_group * s * s)
    }

    fn initial(&self, eta: f64) -> f64 {
        self.field.value(0.0, eta)
    }

    fn boundary_kind(&self) -> BoundaryKind {
        match self.bc_mode {
            BcMode::ExactDirichlet => BoundaryKind::Dirichlet,
            _ => BoundaryKind::Neumann,
        }
    }

    fn lower(&self, tau: f64) -> f64 {
        match self.bc_mode {
            BcMode::ExactDirichlet => boundary_traces(tau, &self.field.params, &self.field.consts)
                .map(|(_, inner)| inner)
                .unwrap_or(f64::NAN),
            _ => self.flux(tau, 0.0),
        }
    }

    fn upper(&self, tau: f64) -> f64 {
        match self.bc_mode {
            BcMode::ExactDirichlet => boundary_traces(tau, &self.field.params, &self.field.consts)
                .map(|(outer, _)| outer)
                .unwrap_or(f64::NAN),
            _ => self.flux(tau, self.params().a),
        }
    }

    fn exact(&self, tau: f64, eta: f64) -> Option<f64> {
        Some(self.field.value(tau, eta))
    }
}

/// Solves the general problem; the grid must span `[0, a]`.
pub fn solve_general(
    params: &ReducedParams,
    consts: &SolutionConstants,
    grid: &Grid1D,
    config: &SolverConfig,
) -> Result<SolveResult> {
    if (grid.a() - params.a).abs() > 1e-14 * params.a {
        return Err(Error::Validation {
            field: "a",
            reason: format!("grid spans [0, {}] but the ring has a = {}", grid.a(), params.a),
        });
    }
    let problem = GeneralProblem::new(*params, *consts, config.bc_mode)?;
    march(&problem, grid, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::PaperCase;
    use crate::solver::{Scheme, TimeStep};

    #[test]
    fn zero_time_reproduces_initial_data() {
        let grid = Grid1D::new(64, 1.0).unwrap();
        let config = SolverConfig {
            t_end: 0.0,
            ..SolverConfig::default()
        };
        let r = solve_paper_case(&grid, &config, 5.0 / 3.0).unwrap();
        assert_eq!(r.error_inf, 0.0);
    }

    #[test]
    fn second_order_with_derived_fluxes() {
        let config = SolverConfig::default();
        let e64 = solve_paper_case(&Grid1D::new(64, 1.0).unwrap(), &config, 5.0 / 3.0).unwrap();
        let e128 = solve_paper_case(&Grid1D::new(128, 1.0).unwrap(), &config, 5.0 / 3.0).unwrap();
        let ratio = e64.error_inf / e128.error_inf;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn wrong_domain_rejected() {
        let grid = Grid1D::new(16, 2.0).unwrap();
        assert!(solve_paper_case(&grid, &SolverConfig::default(), 1.0).is_err());
        let p = PaperCase::reduced();
        let c = PaperCase::constants(5.0 / 3.0);
        assert!(solve_general(&p, &c, &grid, &SolverConfig::default()).is_err());
    }

    #[test]
    fn general_rejects_printed_fluxes() {
        let config = SolverConfig {
            bc_mode: BcMode::PaperNeumann,
            ..SolverConfig::default()
        };
        let grid = Grid1D::new(16, 1.0).unwrap();
        let r = solve_general(&PaperCase::reduced(), &PaperCase::constants(1.0), &grid, &config);
        assert!(matches!(r, Err(Error::Config(_))));
    }

    #[test]
    fn general_with_derived_fluxes_matches_worked_case() {
        let grid = Grid1D::new(64, 1.0).unwrap();
        let config = SolverConfig::default();
        let c5 = 5.0 / 3.0;
        let a = solve_general(&PaperCase::reduced(), &PaperCase::constants(c5), &grid, &config).unwrap();
        let b = solve_paper_case(&grid, &config, c5).unwrap();
        let diff = a
            .final_snapshot()
            .values
            .iter()
            .zip(&b.final_snapshot().values)
            .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
        assert!(diff < 1e-10, "{diff}");
    }

    #[test]
    fn implicit_euler_first_order_in_time() {
        let grid = Grid1D::new(256, 1.0).unwrap();
        let run = |dt: f64| {
            let config = SolverConfig {
                time_step: TimeStep::Fixed(dt),
                scheme: Scheme::ImplicitEuler,
                ..SolverConfig::default()
            };
            solve_paper_case(&grid, &config, 5.0 / 3.0).unwrap().error_inf
        };
        let ratio = run(0.01) / run(0.005);
        assert!((1.8..=2.2).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn deterministic_snapshots() {
        let grid = Grid1D::new(32, 1.0).unwrap();
        let config = SolverConfig {
            snapshot_every: Some(4),
            ..SolverConfig::default()
        };
        let a = solve_paper_case(&grid, &config, 2.0).unwrap();
        let b = solve_paper_case(&grid, &config, 2.0).unwrap();
        assert_eq!(a, b);
        assert!(a.snapshots.len() > 2);
    }
}

use proptest::prelude::*;

use ringheat::solver::{solve_general, BcMode, Grid1D, SolverConfig};
use ringheat::temperature::{
    boundary_difference_c, boundary_traces, boundary_traces_by_restriction, k_for_zero_difference,
    ThetaGeneral,
};
use ringheat::verification::{pde_residual_eq18, DerivativeEngine, VerificationGrid};
use ringheat::{ReducedParams, SolutionConstants};

fn groups() -> impl Strategy<Value = ReducedParams> {
    (0.2..3.0_f64, 1.0..10.0_f64, -1.5..1.5_f64, 0.2..2.0_f64)
        .prop_map(|(a_g, b_g, eps, a)| ReducedParams::new(a_g, b_g, eps, a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn general_solution_satisfies_equation(
        params in groups(),
        c3 in 0.05..1.0_f64,
        c5 in 0.0..5.0_f64,
        k in -0.01..0.01_f64,
    ) {
        let field = ThetaGeneral::new(params, SolutionConstants::new(c3, c5, k).unwrap());
        let grid = VerificationGrid::uniform(2.0, 9, params.a, 9);
        let engine = DerivativeEngine::dual();
        let r = pde_residual_eq18(&field, &grid, &params, &engine).unwrap();
        // Measured against the largest term of the equation.
        let scale = grid
            .points()
            .map(|(tau, eta)| {
                let d = engine.derivs(&field, tau, eta);
                let s = 8.0 * tau + eta + 1.0;
                (params.a_group * d.d_tau).abs()
                    + params.b_group * (d.d_eta.abs() + s * d.d_eta_eta.abs())
                    + params.source_strength() / (s * s)
            })
            .fold(1.0_f64, f64::max);
        prop_assert!(r.max_abs < 1e-12 * scale, "{:e} vs scale {:e}", r.max_abs, scale);
    }

    #[test]
    fn default_amplitude_equalises_boundaries(params in groups(), c3 in 0.05..1.0_f64) {
        let k = k_for_zero_difference(&params, c3).unwrap();
        let consts = SolutionConstants::new(c3, 5.0 / 3.0, k).unwrap();
        let (outer, inner) = boundary_traces(0.0, &params, &consts).unwrap();
        prop_assert!((outer - inner).abs() < 1e-9 * (1.0 + outer.abs()));
        prop_assert!(boundary_difference_c(&params, &consts).abs() < 1e-9);
    }

    #[test]
    fn trace_routes_agree(params in groups(), c3 in 0.05..1.0_f64, tau in 0.0..20.0_f64) {
        let consts = SolutionConstants::new(c3, 1.0, 1e-3).unwrap();
        let (o1, i1) = boundary_traces(tau, &params, &consts).unwrap();
        let (o2, i2) = boundary_traces_by_restriction(tau, &params, &consts).unwrap();
        prop_assert!((o1 - o2).abs() <= 1e-12 * (1.0 + o1.abs()));
        prop_assert!((i1 - i2).abs() <= 1e-12 * (1.0 + i1.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn dirichlet_solve_tracks_closed_form(params in groups(), c3 in 0.1..0.5_f64) {
        let k = k_for_zero_difference(&params, c3).unwrap();
        let consts = SolutionConstants::new(c3, 2.0, k).unwrap();
        let config = SolverConfig { bc_mode: BcMode::ExactDirichlet, ..SolverConfig::default() };
        let coarse = solve_general(&params, &consts, &Grid1D::new(32, params.a).unwrap(), &config).unwrap();
        let fine = solve_general(&params, &consts, &Grid1D::new(64, params.a).unwrap(), &config).unwrap();
        prop_assert!(fine.error_inf < coarse.error_inf || fine.error_inf < 1e-12);
    }
}

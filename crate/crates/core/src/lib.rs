//! Exact temperature fields in a rotating ring of viscous liquid bounded by two
//! free surfaces, together with the machinery that checks them.
//!
//! * [`params`]: physical inputs, dimensionless groups and the `(t, r) <-> (tau, eta)` map.
//! * [`flow`]: the exact expanding-ring flow, stresses and conservation laws.
//! * [`temperature`]: the invariant temperature solutions and derived quantities.
//! * [`verification`]: residuals, symmetry-generator checks, boundary-flux comparison.
//! * [`solver`]: an independent finite-difference solver for manufactured-solution tests.
//! * [`cli`]: configuration and subcommands behind the `ringheat` binary.

pub mod autodiff;
pub mod cli;
pub mod error;
pub mod flow;
pub mod params;
pub mod quadrature;
pub mod solver;
pub mod temperature;
pub mod verification;

pub use error::{Error, Result};
pub use params::{
    from_reduced, k_from_k1k2, paper_case_k, reduce_params, to_reduced, PaperCase,
    PhysicalParams, ReducedParams, SolutionConstants,
};
pub use temperature::TemperatureField;

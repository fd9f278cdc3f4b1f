use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

use super::{march, Grid1D, Ibvp, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n_cells: usize,
    pub h: f64,
    pub dt: f64,
    pub error_inf: f64,
    pub error_l2: f64,
    /// Order against the previous (coarser) level.
    pub observed_order: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// `log(e_i / e_{i+1}) / log(h_i / h_{i+1})` for consecutive levels.
    pub orders: Vec<f64>,
}

impl ConvergenceTable {
    pub fn orders_within(&self, lo: f64, hi: f64) -> bool {
        !self.orders.is_empty() && self.orders.iter().all(|o| (lo..=hi).contains(o))
    }
}

/// Observed orders between consecutive `(h, error)` pairs.
pub fn observed_orders(pairs: &[(f64, f64)]) -> Vec<f64> {
    pairs
        .windows(2)
        .map(|w| (w[0].1 / w[1].1).ln() / (w[0].0 / w[1].0).ln())
        .collect()
}

/// Solves `problem` on each level in `levels` (independently, in parallel) and
/// reports errors and observed orders. With a per-cell time step, `dtau` is
/// refined together with `h`.
pub fn convergence_study<P: Ibvp + Sync>(
    problem: &P,
    a: f64,
    levels: &[usize],
    base: &SolverConfig,
) -> Result<ConvergenceTable> {
    let results: Vec<_> = levels
        .par_iter()
        .map(|&n| {
            let grid = Grid1D::new(n, a)?;
            let r = march(problem, &grid, base)?;
            Ok((grid.h(), r))
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(f64, f64)> = results.iter().map(|(h, r)| (*h, r.error_inf)).collect();
    let orders = observed_orders(&pairs);
    let rows = results
        .iter()
        .zip(levels)
        .enumerate()
        .map(|(i, ((h, r), &n))| ConvergenceRow {
            n_cells: n,
            h: *h,
            dt: r.dt,
            error_inf: r.error_inf,
            error_l2: r.error_l2,
            observed_order: i.checked_sub(1).map(|k| orders[k]),
        })
        .collect();
    Ok(ConvergenceTable { rows, orders })
}

//! CSV and JSON writers. Floats are written as `{:.16e}`, lines end in `\n`.

use std::io::{self, Write};

use serde::Serialize;

use crate::solver::{ConvergenceTable, SolveResult};

use super::verify::{Category, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub tau: f64,
    pub eta: f64,
    pub theta: f64,
    /// `(t, r, T)` when physical parameters are known.
    pub dimensional: Option<(f64, f64, f64)>,
}

fn row(w: &mut dyn Write, values: &[f64]) -> io::Result<()> {
    let cells: Vec<String> = values.iter().map(|v| format!("{v:.16e}")).collect();
    writeln!(w, "{}", cells.join(","))
}

pub fn write_solution_csv(
    w: &mut dyn Write,
    result: &SolveResult,
    exact: impl Fn(f64, f64) -> f64,
) -> io::Result<()> {
    writeln!(w, "tau,eta,theta_numeric,theta_exact,abs_err")?;
    for snap in &result.snapshots {
        for (&eta, &num) in result.etas.iter().zip(&snap.values) {
            let ex = exact(snap.tau, eta);
            row(w, &[snap.tau, eta, num, ex, (num - ex).abs()])?;
        }
    }
    Ok(())
}

pub fn write_solution_json(w: &mut dyn Write, result: &SolveResult) -> io::Result<()> {
    write_json(w, result)
}

pub fn write_profile_csv(w: &mut dyn Write, rows: &[ProfileRow]) -> io::Result<()> {
    let physical = rows.first().is_some_and(|r| r.dimensional.is_some());
    if physical {
        writeln!(w, "tau,eta,theta,t,r,T")?;
    } else {
        writeln!(w, "tau,eta,theta")?;
    }
    for r in rows {
        match r.dimensional {
            Some((t, rad, temp)) => row(w, &[r.tau, r.eta, r.theta, t, rad, temp])?,
            None => row(w, &[r.tau, r.eta, r.theta])?,
        }
    }
    Ok(())
}

pub fn write_convergence_csv(w: &mut dyn Write, table: &ConvergenceTable) -> io::Result<()> {
    writeln!(w, "n_cells,h,dt,error_inf,error_l2,observed_order")?;
    for r in &table.rows {
        let order = r.observed_order.map_or(String::new(), |o| format!("{o:.16e}"));
        writeln!(
            w,
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.n_cells, r.h, r.dt, r.error_inf, r.error_l2, order
        )?;
    }
    Ok(())
}

pub fn write_json<T: Serialize + ?Sized>(w: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)
}

/// One line per check, then a summary.
pub fn print_checks(w: &mut dyn Write, report: &VerifyReport) -> io::Result<()> {
    for c in &report.checks {
        let status = match (c.category, c.pass) {
            (_, true) => "PASS",
            (Category::Check, false) => "FAIL",
            (Category::Constraint, false) => "WARN",
            (Category::PaperInconsistency, false) => "NOTE",
        };
        writeln!(
            w,
            "{status}  {:<58} max {:.3e}  tol {:.1e}",
            c.name, c.max_residual, c.tolerance
        )?;
    }
    for f in &report.flux_comparison {
        writeln!(
            w,
            "flux  tau = {:<6} eta = a: printed {:+.10}  derived {:+.10}  gap {:+.10}",
            f.tau,
            f.paper_flux_a,
            f.derived_flux_a,
            f.gap_a()
        )?;
    }
    let failed = report
        .checks
        .iter()
        .filter(|c| c.category == Category::Check && !c.pass)
        .count();
    writeln!(
        w,
        "{}: {} checks, {failed} failed",
        if report.pass { "ok" } else { "FAILED" },
        report.checks.len()
    )
}

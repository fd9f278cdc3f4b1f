//! Run configuration: a JSON document with optional `physical`, `reduced`,
//! `constants`, `solver` and `output` blocks, overridden by command-line flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::params::{reduce_params, PaperCase, PhysicalParams, ReducedParams, SolutionConstants};
use crate::solver::{BcMode, Scheme, SolverConfig, TimeStep};
use crate::temperature::k_for_zero_difference;

use super::{CliError, GlobalArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BcArg {
    Derived,
    Paper,
    Dirichlet,
}

impl From<BcArg> for BcMode {
    fn from(b: BcArg) -> Self {
        match b {
            BcArg::Derived => BcMode::DerivedNeumann,
            BcArg::Paper => BcMode::PaperNeumann,
            BcArg::Dirichlet => BcMode::ExactDirichlet,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SchemeArg {
    Cn,
    Euler,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Cn => Scheme::CrankNicolson,
            SchemeArg::Euler => Scheme::ImplicitEuler,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub physical: Option<PhysicalParams>,
    pub reduced: Option<ReducedParams>,
    #[serde(default)]
    pub constants: ConstantsBlock,
    #[serde(default)]
    pub solver: SolverBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsBlock {
    pub c3: Option<f64>,
    pub c5: Option<f64>,
    pub k: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverBlock {
    pub n_cells: Option<usize>,
    /// Fixed time step; overrides `dt_per_h`.
    pub dt: Option<f64>,
    pub dt_per_h: Option<f64>,
    pub t_end: Option<f64>,
    pub scheme: Option<SchemeArg>,
    pub bc_mode: Option<BcArg>,
    pub snapshot_every: Option<usize>,
    pub levels: Option<Vec<usize>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
    /// `tau` values for `profile`.
    pub taus: Option<Vec<f64>>,
    /// Number of `eta` points for `profile`.
    pub eta_points: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("malformed config: {e}")))
    }
}

pub const DEFAULT_N_CELLS: usize = 128;
pub const DEFAULT_DT_PER_H: f64 = 0.125;
pub const DEFAULT_T_END: f64 = 0.25;
pub const DEFAULT_LEVELS: [usize; 3] = [64, 128, 256];
pub const DEFAULT_TAUS: [f64; 3] = [0.0, 0.125, 1.0];
pub const DEFAULT_ETA_POINTS: usize = 101;

/// A fully resolved run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub reduced: ReducedParams,
    /// Present only when a `physical` block was supplied.
    pub physical: Option<PhysicalParams>,
    pub consts: SolutionConstants,
    pub n_cells: usize,
    pub solver: SolverConfig,
    pub levels: Vec<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub taus: Vec<f64>,
    pub eta_points: usize,
}

impl RunConfig {
    pub fn resolve(file: ConfigFile, flags: &GlobalArgs) -> Result<Self, CliError> {
        let usage = |e: crate::Error| CliError::Usage(e.to_string());
        let (reduced, physical) = match (file.physical, file.reduced) {
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "give either a `physical` or a `reduced` block, not both".into(),
                ))
            }
            (Some(p), None) => (reduce_params(&p).map_err(usage)?, Some(p)),
            (None, Some(r)) => {
                r.validate().map_err(usage)?;
                (r, None)
            }
            (None, None) => (PaperCase::reduced(), None),
        };

        let c3 = file.constants.c3.unwrap_or(PaperCase::C3);
        let c5 = flags.c5.or(file.constants.c5).unwrap_or(PaperCase::C5_MIN);
        let k = match file.constants.k {
            Some(k) => k,
            None if reduced.is_paper_case() && c3 == PaperCase::C3 => PaperCase::K,
            None => k_for_zero_difference(&reduced, c3).map_err(usage)?,
        };
        let consts = SolutionConstants::new(c3, c5, k).map_err(usage)?;

        let s = file.solver;
        let n_cells = flags.grid.or(s.n_cells).unwrap_or(DEFAULT_N_CELLS);
        let time_step = match s.dt {
            Some(dt) => TimeStep::Fixed(dt),
            None => TimeStep::PerCell(s.dt_per_h.unwrap_or(DEFAULT_DT_PER_H)),
        };
        let solver = SolverConfig {
            time_step,
            t_end: flags.tau_end.or(s.t_end).unwrap_or(DEFAULT_T_END),
            scheme: flags.scheme.or(s.scheme).unwrap_or(SchemeArg::Cn).into(),
            bc_mode: flags.bc_mode.or(s.bc_mode).unwrap_or(BcArg::Derived).into(),
            snapshot_every: s.snapshot_every,
        };
        solver.validate(reduced.a / n_cells as f64).map_err(usage)?;

        let o = file.output;
        Ok(Self {
            reduced,
            physical,
            consts,
            n_cells,
            solver,
            levels: s.levels.unwrap_or_else(|| DEFAULT_LEVELS.to_vec()),
            out: flags.out.clone().or(o.path),
            format: flags.format.or(o.format).unwrap_or_default(),
            taus: o.taus.unwrap_or_else(|| DEFAULT_TAUS.to_vec()),
            eta_points: o.eta_points.unwrap_or(DEFAULT_ETA_POINTS),
        })
    }

    /// Physical parameters for dimensional checks: the supplied block, or the
    /// unit embedding of the reduced groups.
    pub fn physical_or_embedding(&self) -> PhysicalParams {
        self.physical
            .unwrap_or_else(|| PhysicalParams::unit_embedding(&self.reduced))
    }

    /// Whether the run uses the worked-case groups and `C3`, `K`.
    pub fn is_paper_case(&self) -> bool {
        self.reduced.is_paper_case()
            && self.consts.c3 == PaperCase::C3
            && self.consts.k == PaperCase::K
    }
}

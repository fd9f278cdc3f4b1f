//! Closed-form temperature fields in reduced variables.
//!
//! All fields solve
//!
//! ```text
//! A Θ_τ = B ∂_η((8τ + η + 1) Θ_η) + 16 (1 + ε²) / (8τ + η + 1)²
//! ```
//!
//! on the exact flow branch. The additive level is kept explicit: the
//! one-parameter family is written `L - c / s` with a caller-chosen `L`, while
//! the general family carries `C5 / 2`.

use crate::autodiff::Scalar;
use crate::error::{Error, Result};
use crate::params::{to_reduced, PaperCase, PhysicalParams, ReducedParams, SolutionConstants};

/// A scalar field `(tau, eta) -> Theta` that can be evaluated on dual numbers.
pub trait TemperatureField {
    fn eval<S: Scalar>(&self, tau: S, eta: S) -> S;

    fn value(&self, tau: f64, eta: f64) -> f64 {
        self.eval(tau, eta)
    }
}

impl<F: TemperatureField + ?Sized> TemperatureField for &F {
    fn eval<S: Scalar>(&self, tau: S, eta: S) -> S {
        (**self).eval(tau, eta)
    }
}

/// `s = 8 tau + eta + 1`, equal to `r^2 / R20^2`.
#[inline]
pub fn similarity<S: Scalar>(tau: S, eta: S) -> S {
    tau * 8.0 + eta + 1.0
}

/// Translation-invariant solution `level - 16 (1 + eps^2) / (s (B + 8A))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaSimple {
    pub params: ReducedParams,
    pub level: f64,
}

impl TemperatureField for ThetaSimple {
    fn eval<S: Scalar>(&self, tau: S, eta: S) -> S {
        let c = self.params.source_strength() / self.params.b_plus_8a();
        S::cst(self.level) - S::cst(c) / similarity(tau, eta)
    }
}

/// The general invariant family with constants `C3`, `C5`, `K`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaGeneral {
    pub params: ReducedParams,
    pub consts: SolutionConstants,
}

impl ThetaGeneral {
    pub fn new(params: ReducedParams, consts: SolutionConstants) -> Self {
        Self { params, consts }
    }

    /// The `K = 0` part of the family.
    pub fn background(&self) -> ThetaSimple {
        ThetaSimple {
            params: self.params,
            level: 0.5 * self.consts.c5,
        }
    }
}

impl TemperatureField for ThetaGeneral {
    fn eval<S: Scalar>(&self, tau: S, eta: S) -> S {
        let ReducedParams {
            a_group: a,
            b_group: b,
            ..
        } = self.params;
        let SolutionConstants { c3, k, .. } = self.consts;
        let shifted = tau + c3;
        let m = eta + (1.0 - 8.0 * c3);
        let s = similarity(tau, eta);
        let amplitude = (m * a - shifted * b) / shifted.powi(3);
        let decay = (-(m * a) / (shifted * b)).exp();
        let power = ((s / shifted).ln() * self.params.power_exponent()).exp();
        amplitude * decay * power * k + self.background().eval(tau, eta)
    }
}

/// The worked-case solution, in its simplified printed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PaperCaseSolution {
    pub c5: f64,
}

impl TemperatureField for PaperCaseSolution {
    fn eval<S: Scalar>(&self, tau: S, eta: S) -> S {
        let q = tau * 8.0 + 1.0;
        let s = similarity(tau, eta);
        let bracket = S::cst(2.0) / s + (eta * eta - q * q) / q.powi(4) * (-(eta / q)).exp();
        S::cst(0.5 * self.c5) - bracket * (5.0 / 6.0)
    }
}

/// A spatially and temporally constant field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantField(pub f64);

impl TemperatureField for ConstantField {
    fn eval<S: Scalar>(&self, _tau: S, _eta: S) -> S {
        S::cst(self.0)
    }
}

fn require_nonsingular(tau: f64, c3: f64) -> Result<()> {
    let shifted = tau + c3;
    if shifted > 0.0 {
        Ok(())
    } else {
        Err(Error::SingularTime(shifted))
    }
}

pub fn theta_simple(tau: f64, eta: f64, params: &ReducedParams, level: f64) -> f64 {
    ThetaSimple {
        params: *params,
        level,
    }
    .value(tau, eta)
}

pub fn theta_general(
    tau: f64,
    eta: f64,
    params: &ReducedParams,
    consts: &SolutionConstants,
) -> Result<f64> {
    require_nonsingular(tau, consts.c3)?;
    Ok(ThetaGeneral::new(*params, *consts).value(tau, eta))
}

pub fn theta_paper_case(tau: f64, eta: f64, c5: f64) -> f64 {
    PaperCaseSolution { c5 }.value(tau, eta)
}

/// Worked-case temperature at `tau = 0`.
pub fn initial_profile(eta: f64, c5: f64) -> f64 {
    0.5 * c5 - 5.0 / 6.0 * ((eta * eta - 1.0) * (-eta).exp() + 2.0 / (eta + 1.0))
}

/// Trace of the general family on a line `eta = edge`, with the exponential and
/// power factors folded into one exponent.
fn trace(tau: f64, edge: f64, params: &ReducedParams, consts: &SolutionConstants) -> f64 {
    let (a, b) = (params.a_group, params.b_group);
    let shifted = tau + consts.c3;
    let lever = a * (1.0 + edge - 8.0 * consts.c3);
    let s = 8.0 * tau + edge + 1.0;
    let exponent = -lever / (b * shifted) + params.power_exponent() * (s.ln() - shifted.ln());
    consts.k * ((lever - b * shifted) / shifted.powi(3)) * exponent.exp() + 0.5 * consts.c5
        - params.source_strength() / (s * params.b_plus_8a())
}

/// Boundary temperatures `(Theta1, Theta2) = (Theta(tau, a), Theta(tau, 0))`.
pub fn boundary_traces(
    tau: f64,
    params: &ReducedParams,
    consts: &SolutionConstants,
) -> Result<(f64, f64)> {
    require_nonsingular(tau, consts.c3)?;
    Ok((
        trace(tau, params.a, params, consts),
        trace(tau, 0.0, params, consts),
    ))
}

/// The same traces obtained by restricting [`ThetaGeneral`] to the edges.
pub fn boundary_traces_by_restriction(
    tau: f64,
    params: &ReducedParams,
    consts: &SolutionConstants,
) -> Result<(f64, f64)> {
    Ok((
        theta_general(tau, params.a, params, consts)?,
        theta_general(tau, 0.0, params, consts)?,
    ))
}

/// Split of `C = Theta1(0) - Theta2(0)` into its `K`-independent part and the
/// coefficient multiplying `K`.
fn boundary_difference_parts(params: &ReducedParams, c3: f64) -> (f64, f64) {
    let (a_g, b_g, ring) = (params.a_group, params.b_group, params.a);
    let p = params.power_exponent();
    let free = params.source_strength() * ring / ((1.0 + ring) * params.b_plus_8a());
    let outer = (a_g * (1.0 + ring - 8.0 * c3) - b_g * c3)
        * (-a_g * ring / (b_g * c3)).exp()
        * ((1.0 + ring) / c3).powf(p);
    let inner = (a_g * (1.0 - 8.0 * c3) - b_g * c3) * (1.0 / c3).powf(p);
    let coefficient = (-a_g * (1.0 - 8.0 * c3) / (b_g * c3)).exp() / c3.powi(3) * (outer - inner);
    (free, coefficient)
}

/// Closed-form difference of boundary temperatures at `tau = 0`.
pub fn boundary_difference_c(params: &ReducedParams, consts: &SolutionConstants) -> f64 {
    let (free, coefficient) = boundary_difference_parts(params, consts.c3);
    free + consts.k * coefficient
}

/// The amplitude `K` for which the boundary temperatures coincide at `tau = 0`.
///
/// For the worked-case groups this reproduces [`crate::params::paper_case_k`].
pub fn k_for_zero_difference(params: &ReducedParams, c3: f64) -> Result<f64> {
    crate::error::require_positive("c3", c3)?;
    let (free, coefficient) = boundary_difference_parts(params, c3);
    if !(coefficient.is_finite() && free.is_finite()) {
        return Err(Error::Validation {
            field: "k",
            reason: format!(
                "the amplitude equalising the boundary temperatures is not representable \
                 for A = {}, B = {}; give `k` explicitly",
                params.a_group, params.b_group
            ),
        });
    }
    if coefficient.abs() < 1e-300 {
        return Err(Error::SingularConstant(coefficient));
    }
    Ok(-free / coefficient)
}

/// Dimensional temperature `T(t, r)` from the closed form in `(t, r)`.
pub fn dimensional_t(
    t: f64,
    r: f64,
    phys: &PhysicalParams,
    consts: &SolutionConstants,
) -> Result<f64> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    if r <= 0.0 {
        return Err(Error::Validation {
            field: "r",
            reason: format!("radius must be positive, got {r}"),
        });
    }
    let reduced = crate::params::reduce_params(phys)?;
    let (a, b) = (reduced.a_group, reduced.b_group);
    let p = reduced.power_exponent();
    let (nu, t0, r20) = (phys.nu(), phys.t0, phys.r20);
    let r20_sq = r20 * r20;
    let r20_4 = r20_sq * r20_sq;
    let clock = nu * t + consts.c3 * r20_sq;
    if clock <= 0.0 {
        return Err(Error::SingularTime(clock / r20_sq));
    }
    let r_sq = r * r;
    let amplitude = (a * r20_4 * r_sq - (8.0 * a + b) * (nu * r20_4 * t + consts.c3 * r20_4 * r20_sq))
        / clock.powi(3);
    let decay = (p - a * r_sq / (b * clock)).exp();
    let power = (r_sq / clock).powf(p);
    Ok(t0 * consts.k * amplitude * decay * power + 0.5 * consts.c5 * t0
        - reduced.source_strength() * t0 * r20_sq / (r_sq * reduced.b_plus_8a()))
}

/// `T0 * Theta_general(to_reduced(t, r))`, the reduced route to [`dimensional_t`].
pub fn dimensional_t_via_reduced(
    t: f64,
    r: f64,
    phys: &PhysicalParams,
    consts: &SolutionConstants,
) -> Result<f64> {
    let reduced = crate::params::reduce_params(phys)?;
    let (tau, eta) = to_reduced(t, r, phys)?;
    Ok(phys.t0 * theta_general(tau, eta, &reduced, consts)?)
}

/// Uniform `(tau, eta)` grid for minimum scans.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanGrid {
    pub tau_max: f64,
    pub n_tau: usize,
    pub n_eta: usize,
}

impl Default for ScanGrid {
    fn default() -> Self {
        Self {
            tau_max: 10.0,
            n_tau: 201,
            n_eta: 201,
        }
    }
}

/// Outcome of a nonnegativity scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonnegativityScan {
    pub min_value: f64,
    /// `(tau, eta)` of the minimum; first in lexicographic order on ties.
    pub argmin: (f64, f64),
    /// The `tau -> infinity` level `C5 / 2`.
    pub asymptotic_level: f64,
    pub threshold_ok: bool,
}

/// Tolerance below zero still accepted as nonnegative.
pub const NONNEGATIVITY_TOL: f64 = 1e-12;

/// Scans the general solution over `[0, tau_max] x [0, a]` and the asymptotic
/// level for its minimum.
pub fn c5_nonnegativity_bound(
    params: &ReducedParams,
    consts: &SolutionConstants,
    grid: &ScanGrid,
) -> Result<NonnegativityScan> {
    if grid.n_tau < 2 || grid.n_eta < 2 {
        return Err(Error::Config("scan grid needs at least 2 points per axis".into()));
    }
    let field = ThetaGeneral::new(*params, *consts);
    let mut min_value = f64::INFINITY;
    let mut argmin = (0.0, 0.0);
    for i in 0..grid.n_tau {
        let tau = grid.tau_max * i as f64 / (grid.n_tau - 1) as f64;
        require_nonsingular(tau, consts.c3)?;
        for j in 0..grid.n_eta {
            let eta = params.a * j as f64 / (grid.n_eta - 1) as f64;
            let v = field.value(tau, eta);
            if v < min_value {
                min_value = v;
                argmin = (tau, eta);
            }
        }
    }
    let asymptotic_level = 0.5 * consts.c5;
    Ok(NonnegativityScan {
        min_value,
        argmin,
        asymptotic_level,
        threshold_ok: min_value >= -NONNEGATIVITY_TOL && asymptotic_level >= -NONNEGATIVITY_TOL,
    })
}

/// Worked-case constants with the given `C5`, paired with their groups.
pub fn paper_case_field(c5: f64) -> ThetaGeneral {
    ThetaGeneral::new(PaperCase::reduced(), PaperCase::constants(c5))
}

//! Physical inputs, dimensionless groups, solution constants and the coordinate
//! map between dimensional `(t, r)` and reduced `(tau, eta)` variables.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Dimensional description of the liquid ring.
///
/// Pressure is kinematic (divided by density) everywhere in this crate, so the
/// viscosities enter the flow through `nu = mu / rho` and `nu0 = mu0 / rho`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub rho: f64,
    pub cp: f64,
    pub k_cond: f64,
    pub mu: f64,
    /// Nondissipative viscosity; any sign.
    pub mu0: f64,
    pub t0: f64,
    /// Initial outer radius.
    pub r10: f64,
    /// Initial inner radius.
    pub r20: f64,
    /// Far-field kinematic pressure offset.
    #[serde(default)]
    pub p_inf: f64,
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        require_positive("rho", self.rho)?;
        require_positive("cp", self.cp)?;
        require_positive("k_cond", self.k_cond)?;
        require_positive("mu", self.mu)?;
        require_positive("t0", self.t0)?;
        require_positive("r20", self.r20)?;
        require_positive("r10", self.r10)?;
        if !self.mu0.is_finite() {
            return Err(Error::Validation {
                field: "mu0",
                reason: "must be finite".into(),
            });
        }
        if self.r10 <= self.r20 {
            return Err(Error::Validation {
                field: "r10",
                reason: format!("outer radius {} must exceed inner radius {}", self.r10, self.r20),
            });
        }
        Ok(())
    }

    /// Kinematic viscosity.
    pub fn nu(&self) -> f64 {
        self.mu / self.rho
    }

    /// Kinematic nondissipative viscosity.
    pub fn nu0(&self) -> f64 {
        self.mu0 / self.rho
    }

    /// A unit embedding of reduced parameters: `rho = mu = r20 = t0 = 1`, so
    /// `nu = 1`, `nu0 = eps`, `cp = 4A`, `k_cond = 4B` and `r10 = sqrt(1 + a)`.
    pub fn unit_embedding(reduced: &ReducedParams) -> Self {
        Self {
            rho: 1.0,
            cp: 4.0 * reduced.a_group,
            k_cond: 4.0 * reduced.b_group,
            mu: 1.0,
            mu0: reduced.eps,
            t0: 1.0,
            r10: (1.0 + reduced.a).sqrt(),
            r20: 1.0,
            p_inf: 0.0,
        }
    }
}

/// The dimensionless groups controlling the reduced temperature equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedParams {
    /// Heat-capacity group `A`.
    #[serde(rename = "A")]
    pub a_group: f64,
    /// Conductivity group `B`.
    #[serde(rename = "B")]
    pub b_group: f64,
    /// Viscosity ratio `nu0 / nu`.
    pub eps: f64,
    /// Ring extent `R10^2 / R20^2 - 1`.
    pub a: f64,
}

impl ReducedParams {
    pub fn new(a_group: f64, b_group: f64, eps: f64, a: f64) -> Result<Self> {
        let p = Self {
            a_group,
            b_group,
            eps,
            a,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("A", self.a_group)?;
        require_positive("B", self.b_group)?;
        require_positive("a", self.a)?;
        if !self.eps.is_finite() {
            return Err(Error::Validation {
                field: "eps",
                reason: "must be finite".into(),
            });
        }
        Ok(())
    }

    /// `16 (1 + eps^2)`, the strength of the dissipative heat source.
    pub fn source_strength(&self) -> f64 {
        16.0 * (1.0 + self.eps * self.eps)
    }

    /// `B + 8A`.
    pub fn b_plus_8a(&self) -> f64 {
        self.b_group + 8.0 * self.a_group
    }

    /// Exponent `8A / B` of the power factor in the general solution.
    pub fn power_exponent(&self) -> f64 {
        8.0 * self.a_group / self.b_group
    }

    /// Whether these are the groups of the worked case (`A = 3/4`, `B = 6`,
    /// `eps = 1/2`, `a = 1`), compared exactly.
    pub fn is_paper_case(&self) -> bool {
        *self == PaperCase::reduced()
    }
}

/// Constants of the general invariant solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionConstants {
    /// Group parameter; the solution is singular at `tau = -c3`.
    pub c3: f64,
    /// Free additive constant; the temperature tends to `c5 / 2`.
    pub c5: f64,
    /// Amplitude of the exponential term.
    pub k: f64,
}

impl SolutionConstants {
    pub fn new(c3: f64, c5: f64, k: f64) -> Result<Self> {
        let c = Self { c3, c5, k };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("c3", self.c3)?;
        for (field, v) in [("c5", self.c5), ("k", self.k)] {
            if !v.is_finite() {
                return Err(Error::Validation {
                    field,
                    reason: "must be finite".into(),
                });
            }
        }
        Ok(())
    }
}

/// The fixed constants of the worked example.
pub struct PaperCase;

impl PaperCase {
    pub const A: f64 = 0.75;
    pub const B: f64 = 6.0;
    pub const EPS: f64 = 0.5;
    pub const RING: f64 = 1.0;
    pub const C3: f64 = 0.125;
    /// `-5 / (6^2 * 8^3)`.
    pub const K: f64 = -5.0 / 18432.0;
    /// Smallest `C5` keeping the worked-case temperature nonnegative.
    pub const C5_MIN: f64 = 5.0 / 3.0;

    pub fn reduced() -> ReducedParams {
        ReducedParams {
            a_group: Self::A,
            b_group: Self::B,
            eps: Self::EPS,
            a: Self::RING,
        }
    }

    pub fn constants(c5: f64) -> SolutionConstants {
        SolutionConstants {
            c3: Self::C3,
            c5,
            k: Self::K,
        }
    }
}

/// Dimensionless groups of a physical configuration.
pub fn reduce_params(phys: &PhysicalParams) -> Result<ReducedParams> {
    phys.validate()?;
    let r20_sq = phys.r20 * phys.r20;
    let mu_sq = phys.mu * phys.mu;
    let reduced = ReducedParams {
        a_group: phys.rho * phys.cp * r20_sq * phys.t0 / (4.0 * mu_sq),
        b_group: phys.k_cond * r20_sq * phys.t0 / (4.0 * mu_sq * phys.mu),
        eps: phys.nu0() / phys.nu(),
        a: phys.r10 * phys.r10 / r20_sq - 1.0,
    };
    reduced.validate()?;
    Ok(reduced)
}

/// Maps `(t, r)` to `(tau, eta)` with `tau = nu t / R20^2` and
/// `eta = (r^2 - R2(t)^2) / R20^2`.
///
/// Radii outside the ring are still mapped; callers decide whether that matters.
pub fn to_reduced(t: f64, r: f64, phys: &PhysicalParams) -> Result<(f64, f64)> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    let r20_sq = phys.r20 * phys.r20;
    let nu_t = phys.nu() * t;
    let tau = nu_t / r20_sq;
    let inner_sq = 8.0 * nu_t + r20_sq;
    let eta = (r * r - inner_sq) / r20_sq;
    Ok((tau, eta))
}

/// Inverse of [`to_reduced`].
pub fn from_reduced(tau: f64, eta: f64, phys: &PhysicalParams) -> (f64, f64) {
    let r20_sq = phys.r20 * phys.r20;
    let t = tau * r20_sq / phys.nu();
    let r = (r20_sq * (8.0 * tau + eta + 1.0)).sqrt();
    (t, r)
}

/// Collapses the two integration constants of the general solution into its
/// amplitude: `K = (8A K1 + B (K1 - K2)) / (B (8A + B))`.
pub fn k_from_k1k2(k1: f64, k2: f64, a_group: f64, b_group: f64) -> f64 {
    (8.0 * a_group * k1 + b_group * (k1 - k2)) / (b_group * (8.0 * a_group + b_group))
}

/// Amplitude that equalises the two boundary temperatures at `tau = 0` for the
/// worked-case groups, as a function of `C3`.
pub fn paper_case_k(c3: f64) -> Result<f64> {
    require_positive("c3", c3)?;
    let denom = 4.0 * (8.0 * c3 - 1.0) * (1.0 - 1.0 / (4.0 * c3)).exp()
        - (16.0 * c3 - 1.0) * (1.0 - 1.0 / (8.0 * c3)).exp();
    if denom.abs() < 1e-14 {
        return Err(Error::SingularConstant(denom));
    }
    Ok(10.0 / 9.0 * c3.powi(4) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_phys() -> PhysicalParams {
        PhysicalParams {
            rho: 1.3,
            cp: 2.1,
            k_cond: 0.7,
            mu: 0.9,
            mu0: -0.4,
            t0: 3.0,
            r10: 2.5,
            r20: 1.2,
            p_inf: 0.0,
        }
    }

    #[test]
    fn eps_is_viscosity_ratio() {
        let mut p = sample_phys();
        p.rho = 2.0;
        p.mu = 2.0;
        p.mu0 = 1.0;
        let r = reduce_params(&p).unwrap();
        assert_eq!(r.eps, 0.5);
    }

    #[test]
    fn ring_extent_from_radii() {
        let mut p = sample_phys();
        p.r10 = 2f64.sqrt();
        p.r20 = 1.0;
        let r = reduce_params(&p).unwrap();
        assert!((r.a - 1.0).abs() < 1e-15);
    }

    #[test]
    fn worked_case_groups_from_matching_physics() {
        // rho Cp R20^2 T0 = 3 mu^2 and k R20^2 T0 = 24 mu^3
        let mu = 1.7;
        let p = PhysicalParams {
            rho: 2.0,
            cp: 3.0 * mu * mu / 2.0,
            k_cond: 24.0 * mu * mu * mu,
            mu,
            mu0: 0.85,
            t0: 1.0,
            r10: 2f64.sqrt(),
            r20: 1.0,
            p_inf: 0.0,
        };
        let r = reduce_params(&p).unwrap();
        assert!((r.a_group - 0.75).abs() < 1e-15);
        assert!((r.b_group - 6.0).abs() < 1e-14);
        assert_eq!(r.eps, 0.5);
    }

    #[test]
    fn unit_embedding_round_trips() {
        let reduced = ReducedParams::new(0.3, 2.2, -0.7, 1.5).unwrap();
        let back = reduce_params(&PhysicalParams::unit_embedding(&reduced)).unwrap();
        assert!((back.a_group - reduced.a_group).abs() < 1e-15);
        assert!((back.b_group - reduced.b_group).abs() < 1e-15);
        assert!((back.eps - reduced.eps).abs() < 1e-15);
        assert!((back.a - reduced.a).abs() < 1e-15);
    }

    #[test]
    fn validation_names_the_field() {
        let mut p = sample_phys();
        p.k_cond = 0.0;
        match reduce_params(&p) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "k_cond"),
            other => panic!("unexpected {other:?}"),
        }
        let mut p = sample_phys();
        p.r10 = 1.0;
        match reduce_params(&p) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "r10"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn scale_consistency_in_viscosity() {
        let p = sample_phys();
        let base = reduce_params(&p).unwrap();
        let lambda = 1.9;
        let scaled = reduce_params(&PhysicalParams {
            mu: p.mu * lambda,
            mu0: p.mu0 * lambda,
            ..p
        })
        .unwrap();
        assert!((scaled.eps - base.eps).abs() < 1e-15);
        assert!((scaled.a_group * lambda * lambda / base.a_group - 1.0).abs() < 1e-14);
        assert!((scaled.b_group * lambda.powi(3) / base.b_group - 1.0).abs() < 1e-14);
    }

    #[test]
    fn coordinate_map_examples() {
        let p = sample_phys();
        let (tau, eta) = to_reduced(0.0, p.r20, &p).unwrap();
        assert_eq!((tau, eta), (0.0, 0.0));
        let (tau, eta) = to_reduced(0.0, p.r10, &p).unwrap();
        let a = reduce_params(&p).unwrap().a;
        assert_eq!(tau, 0.0);
        assert!((eta - a).abs() < 1e-15);

        let unit = PhysicalParams {
            rho: 1.0,
            mu: 1.0,
            r20: 1.0,
            r10: 2.0,
            ..p
        };
        let (tau, eta) = to_reduced(1.0, 3.0, &unit).unwrap();
        assert_eq!((tau, eta), (1.0, 0.0));

        assert_eq!(from_reduced(0.0, 0.0, &p), (0.0, p.r20));
        let (t, r) = from_reduced(0.0, a, &p);
        assert_eq!(t, 0.0);
        assert!((r - p.r10).abs() < 1e-14);
    }

    #[test]
    fn negative_time_rejected() {
        assert_eq!(
            to_reduced(-1.0, 1.0, &sample_phys()),
            Err(Error::NegativeTime(-1.0))
        );
    }

    #[test]
    fn k1k2_examples() {
        assert_eq!(k_from_k1k2(0.0, 0.0, 0.75, 6.0), 0.0);
        assert!((k_from_k1k2(1.0, 1.0, 0.75, 6.0) - 1.0 / 12.0).abs() < 1e-16);
        assert!((k_from_k1k2(0.0, 1.0, 0.75, 6.0) + 1.0 / 12.0).abs() < 1e-16);
    }

    #[test]
    fn worked_case_k_value() {
        let k = paper_case_k(0.125).unwrap();
        assert!((k / PaperCase::K - 1.0).abs() < 1e-15);
        assert!((k + 0.000_271_27).abs() < 1e-8);
    }

    #[test]
    fn worked_case_k_high_precision_oracle() {
        // 50-digit evaluation of the same expression at C3 = 1/16 and C3 = 1/4,
        // rounded to double precision
        let k16 = -1.702_672_061_766_532_7e-4;
        let k4 = -4.587_237_138_295_129e-3;
        assert!((paper_case_k(1.0 / 16.0).unwrap() / k16 - 1.0).abs() < 1e-14);
        assert!((paper_case_k(0.25).unwrap() / k4 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn worked_case_k_rejects_bad_c3() {
        assert!(matches!(paper_case_k(0.0), Err(Error::Validation { .. })));
    }

    proptest! {
        #[test]
        fn coordinate_round_trip(t in 0.0f64..50.0, frac in 0.0f64..1.0) {
            let p = sample_phys();
            let r2 = (8.0 * p.nu() * t + p.r20 * p.r20).sqrt();
            let r1 = (8.0 * p.nu() * t + p.r10 * p.r10).sqrt();
            let r = r2 + frac * (r1 - r2);
            let (tau, eta) = to_reduced(t, r, &p).unwrap();
            let s = 8.0 * tau + eta + 1.0;
            prop_assert!((s / (r * r / (p.r20 * p.r20)) - 1.0).abs() < 1e-12);
            let (t2, rr) = from_reduced(tau, eta, &p);
            prop_assert!((t2 - t).abs() <= 1e-12 * t.max(1.0));
            prop_assert!((rr / r - 1.0).abs() < 1e-12);
        }
    }
}

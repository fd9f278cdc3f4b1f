//! The exact flow branch: a ring expanding under constant radial flux
//! `Psi = 4` with azimuthal velocity `4 nu0 / r`.

use crate::autodiff::Scalar;
use crate::error::{Error, Result};
use crate::params::PhysicalParams;
use crate::quadrature;

/// Dimensionless radial flux on the exact branch.
pub const PSI: f64 = 4.0;

/// Reduced flow state of the exact branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowState {
    pub eps: f64,
}

impl FlowState {
    pub fn new(eps: f64) -> Self {
        Self { eps }
    }

    pub fn psi(&self) -> f64 {
        PSI
    }

    /// `xi(tau) = 8 tau + 1`, the squared inner radius in units of `R20^2`.
    pub fn xi<S: Scalar>(&self, tau: S) -> S {
        tau * 8.0 + 1.0
    }

    /// Reduced angular velocity `4 eps / (xi + eta)`.
    pub fn omega<S: Scalar>(&self, tau: S, eta: S) -> S {
        S::cst(4.0 * self.eps) / (self.xi(tau) + eta)
    }
}

/// `4 eps / (8 tau + 1 + eta)`.
pub fn exact_omega(tau: f64, eta: f64, eps: f64) -> f64 {
    FlowState::new(eps).omega(tau, eta)
}

/// Ring radii at time `t`, `R^2(t) = 8 nu t + R0^2` on both boundaries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RingGeometry {
    nu: f64,
    r10: f64,
    r20: f64,
}

impl RingGeometry {
    pub fn new(phys: &PhysicalParams) -> Self {
        Self {
            nu: phys.nu(),
            r10: phys.r10,
            r20: phys.r20,
        }
    }

    pub fn outer(&self, t: f64) -> f64 {
        (8.0 * self.nu * t + self.r10 * self.r10).sqrt()
    }

    pub fn inner(&self, t: f64) -> f64 {
        (8.0 * self.nu * t + self.r20 * self.r20).sqrt()
    }

    /// `R1^2 - R2^2`, proportional to the ring area.
    pub fn area_invariant(&self, t: f64) -> f64 {
        let (r1, r2) = (self.outer(t), self.inner(t));
        r1 * r1 - r2 * r2
    }
}

/// Outer and inner radius at time `t`.
pub fn radii(t: f64, phys: &PhysicalParams) -> Result<(f64, f64)> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    let g = RingGeometry::new(phys);
    Ok((g.outer(t), g.inner(t)))
}

fn require_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Validation {
            field: "r",
            reason: format!("radius must be positive, got {r}"),
        })
    }
}

/// Radial and azimuthal velocity `(4 nu / r, 4 nu0 / r)`.
pub fn velocities(r: f64, nu: f64, nu0: f64) -> Result<(f64, f64)> {
    require_radius(r)?;
    Ok((4.0 * nu / r, 4.0 * nu0 / r))
}

/// Kinematic pressure `p_inf - 8 (nu^2 + nu0^2) / r^2`.
///
/// Integrates the radial momentum balance `dp/dr = Phi^2 / r^3 + v^2 / r` with
/// `Phi = 4 nu` and `v = 4 nu0 / r`; the `nu0 (r v)_r / r` term vanishes since
/// `r v` is constant.
pub fn pressure(r: f64, nu: f64, nu0: f64, p_inf: f64) -> f64 {
    p_inf - 8.0 * (nu * nu + nu0 * nu0) / (r * r)
}

/// Stress components on the exact branch, in kinematic units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stress {
    pub t_rr: f64,
    /// `nu (v_r - v/r) + 2 nu0 Phi / r^2`; the sign consistent with the reduced
    /// boundary condition and the exact branch.
    pub t_r_theta: f64,
    /// The alternative printed form `nu r (v/r)_r - 2 nu0 Phi / r^2`, which
    /// evaluates to `-16 nu nu0 / r^2` on the exact branch.
    pub t_r_theta_alt: f64,
}

/// Normal and shear stress at radius `r`, time `t`.
pub fn stress_components(r: f64, t: f64, phys: &PhysicalParams, p_inf: f64) -> Result<Stress> {
    require_radius(r)?;
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    // Steady in time on this branch; t only fixes where the boundaries are.
    let (nu, nu0) = (phys.nu(), phys.nu0());
    let phi = PSI * nu;
    let v = 4.0 * nu0 / r;
    let dv_dr = -4.0 * nu0 / (r * r);
    let shear_rate = dv_dr - v / r;
    let p = pressure(r, nu, nu0, p_inf);
    Ok(Stress {
        t_rr: -(p + 2.0 * nu * phi / (r * r)) + nu0 * shear_rate,
        t_r_theta: nu * shear_rate + 2.0 * nu0 * phi / (r * r),
        t_r_theta_alt: nu * shear_rate - 2.0 * nu0 * phi / (r * r),
    })
}

/// Closed-form angular momentum `2 nu0 (R10^2 - R20^2)`; independent of `t`.
pub fn angular_momentum(t: f64, phys: &PhysicalParams) -> Result<f64> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    Ok(2.0 * phys.nu0() * RingGeometry::new(phys).area_invariant(t))
}

/// `int_{R2(t)}^{R1(t)} r^2 v(r) dr` by adaptive quadrature.
pub fn angular_momentum_quadrature(t: f64, phys: &PhysicalParams) -> Result<f64> {
    let (r1, r2) = radii(t, phys)?;
    let nu0 = phys.nu0();
    Ok(quadrature::integrate(|r| r * r * (4.0 * nu0 / r), r2, r1, 1e-12).value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phys(nu: f64, nu0: f64) -> PhysicalParams {
        PhysicalParams {
            rho: 1.0,
            cp: 1.0,
            k_cond: 1.0,
            mu: nu,
            mu0: nu0,
            t0: 1.0,
            r10: 2f64.sqrt(),
            r20: 1.0,
            p_inf: 0.0,
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(exact_omega(0.0, 0.0, 0.5), 2.0);
        assert_eq!(exact_omega(0.0, 1.0, 0.5), 1.0);
        assert_eq!(exact_omega(1.0, 0.0, 0.5), 2.0 / 9.0);
    }

    #[test]
    fn omega_times_radius_invariant() {
        let f = FlowState::new(-0.3);
        for &tau in &[0.0, 0.3, 7.0] {
            for &eta in &[0.0, 0.5, 1.0] {
                let w: f64 = f.omega(tau, eta);
                assert!((w * (f.xi(tau) + eta) - 4.0 * f.eps).abs() < 1e-15);
            }
        }
        assert_eq!(f.xi(0.0), 1.0);
    }

    #[test]
    fn radii_examples() {
        let p = phys(1.0, 0.5);
        assert_eq!(radii(0.0, &p).unwrap(), (p.r10, p.r20));
        assert_eq!(radii(1.0, &p).unwrap().1, 3.0);
        let g = RingGeometry::new(&p);
        let area0 = g.area_invariant(0.0);
        for t in [0.5, 5.0] {
            assert!((g.area_invariant(t) - area0).abs() < 1e-13);
        }
        assert!(radii(-0.1, &p).is_err());
    }

    #[test]
    fn velocity_examples() {
        assert_eq!(velocities(2.0, 1.0, 0.3).unwrap().0, 2.0);
        assert_eq!(velocities(0.7, 1.0, 0.0).unwrap().1, 0.0);
        assert_eq!(velocities(1.0, 1.0, 0.5).unwrap(), (4.0, 2.0));
        assert!(velocities(0.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn pressure_matches_integrated_momentum_balance() {
        assert_eq!(pressure(3.0, 0.0, 0.0, 1.5), 1.5);
        // p(r) = p(inf) - int_r^inf dp/dr, dp/dr = 16 (nu^2 + nu0^2) / r^3;
        // substitute s = 1/r to integrate over a finite interval.
        let (nu, nu0, r) = (1.0, 0.0, 2.0);
        let dpdr = |r: f64| 16.0 * (nu * nu + nu0 * nu0) / r.powi(3);
        let tail = quadrature::integrate(|s: f64| dpdr(1.0 / s) / (s * s), 0.0, 1.0 / r, 1e-13);
        assert!((-tail.value - (-2.0)).abs() < 1e-12);
        assert!((pressure(r, nu, nu0, 0.0) + 2.0).abs() < 1e-15);
    }

    #[test]
    fn free_boundary_stresses_vanish() {
        let p = phys(1.3, 0.45);
        let g = RingGeometry::new(&p);
        for t in [0.0, 1.0] {
            for r in [g.inner(t), g.outer(t)] {
                let s = stress_components(r, t, &p, 0.0).unwrap();
                assert!(s.t_rr.abs() < 1e-12, "T_rr = {}", s.t_rr);
                assert!(s.t_r_theta.abs() < 1e-12);
                let expect_alt = -16.0 * p.nu() * p.nu0() / (r * r);
                assert!((s.t_r_theta_alt - expect_alt).abs() < 1e-12);
            }
        }
        let s = stress_components(1.7, 0.0, &phys(1.0, 0.0), 0.0).unwrap();
        assert_eq!(s.t_r_theta, 0.0);
    }

    #[test]
    fn angular_momentum_examples() {
        assert_eq!(angular_momentum(3.0, &phys(1.0, 0.0)).unwrap(), 0.0);
        let p = phys(1.0, 0.5);
        for t in [0.0, 1.0, 10.0] {
            let m = angular_momentum(t, &p).unwrap();
            assert!((m - 1.0).abs() < 1e-12);
            let q = angular_momentum_quadrature(t, &p).unwrap();
            assert!((q - m).abs() < 1e-10);
        }
    }
}

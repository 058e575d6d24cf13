//! Closed-form bound radial geodesics of a single Schwarzschild metric.
//!
//! A particle at rest at `r_apo` falls along `r = r_apo·cos²(η/2)` with
//!
//! ```text
//! τ(η) = √(r_apo³/8μ)·(η + sin η)
//! t(η) = E·√(r_apo³/2μ)·[½(η + sin η) + (1 − E²)·η]
//!        + 2μ·ln[(tan(η_H/2) + tan(η/2)) / (tan(η_H/2) − tan(η/2))]
//! ```
//!
//! where `E = √(1 − 2μ/r_apo)` and `η_H = 2·arcsin E` marks the horizon.
//! A mid-flight state is described by the same curve with a fictitious
//! apoapsis `r_apo = 2μ/(1 − E²)`.

use std::f64::consts::PI;

use crate::error::GeodesicError;
use crate::numeric::metric_factor;

/// Tolerance for radii that overshoot the apoapsis through roundoff.
const APO_CLAMP: f64 = 1e-14;

/// Parameters of one cycloid: patch mass, apoapsis, energy, horizon parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycloidParams {
    pub mass: f64,
    pub r_apo: f64,
    pub energy: f64,
    pub eta_horizon: f64,
}

/// Position, times and tangent vector at one value of η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycloidPoint {
    pub eta: f64,
    pub r: f64,
    pub t: f64,
    pub tau: f64,
    /// `U⁰ = dt/dτ`
    pub u_t: f64,
    /// `U¹ = dr/dτ` on the infalling branch (≤ 0).
    pub u_r: f64,
}

/// Conserved energy of a particle released at rest at `r_release`.
pub fn drop_energy(mass: f64, r_release: f64) -> Result<f64, GeodesicError> {
    if !(r_release > 2.0 * mass) {
        return Err(GeodesicError::ReleaseInsideHorizon {
            r: r_release,
            horizon: 2.0 * mass,
        });
    }
    Ok(metric_factor(mass, r_release).sqrt())
}

impl CycloidParams {
    /// Release from rest at `r_apo`.
    pub fn from_release(mass: f64, r_apo: f64) -> Result<Self, GeodesicError> {
        if !(mass > 0.0) {
            return Err(GeodesicError::InvalidCycloid(format!(
                "mass must be positive, got {mass}"
            )));
        }
        let energy = drop_energy(mass, r_apo)?;
        Ok(Self {
            mass,
            r_apo,
            energy,
            eta_horizon: 2.0 * energy.asin(),
        })
    }

    /// Mid-flight state at `r` with `dr/dτ = u_r`.
    ///
    /// `1 − E² = 2μ/r − u_r²` is formed directly so that `r_apo` keeps its
    /// digits when `E` is close to 1.
    pub fn from_state(mass: f64, r: f64, u_r: f64) -> Result<Self, GeodesicError> {
        if !(mass > 0.0) {
            return Err(GeodesicError::InvalidCycloid(format!(
                "mass must be positive, got {mass}"
            )));
        }
        if !(r > 2.0 * mass) {
            return Err(GeodesicError::Horizon { r, horizon: 2.0 * mass });
        }
        let binding = 2.0 * mass / r - u_r * u_r;
        let energy_sq = u_r * u_r + metric_factor(mass, r);
        if !(binding > 0.0) {
            return Err(GeodesicError::Unbound {
                energy: energy_sq.sqrt(),
            });
        }
        let energy = energy_sq.sqrt();
        // r_apo = 2μ/binding, arranged so a state at rest returns r exactly.
        let r_apo = r / (1.0 - r * u_r * u_r / (2.0 * mass));
        Ok(Self {
            mass,
            r_apo,
            energy,
            eta_horizon: 2.0 * energy.asin(),
        })
    }

    /// `tan(η/2) = √((r_apo − r)/r)` for a radius on the curve.
    fn tan_half_at(&self, r: f64) -> Result<f64, GeodesicError> {
        let gap = self.r_apo - r;
        if gap < -APO_CLAMP * self.r_apo {
            return Err(GeodesicError::Unreachable {
                r_exit: r,
                r_turn: self.r_apo,
            });
        }
        Ok((gap.max(0.0) / r).sqrt())
    }

    /// `tan(η_H/2) = √((r_apo − 2μ)/2μ)`.
    fn tan_half_horizon(&self) -> f64 {
        ((self.r_apo - 2.0 * self.mass) / (2.0 * self.mass)).sqrt()
    }

    /// η at radius `r` (infalling branch, `0 ≤ η < π`).
    pub fn eta_at(&self, r: f64) -> Result<f64, GeodesicError> {
        if r < 0.0 {
            return Err(GeodesicError::NegativeRadius(r));
        }
        if r == 0.0 {
            return Ok(PI);
        }
        Ok(2.0 * self.tan_half_at(r)?.atan())
    }

    pub fn radius(&self, eta: f64) -> f64 {
        self.r_apo * (0.5 * eta).cos().powi(2)
    }

    pub fn proper_time(&self, eta: f64) -> f64 {
        (self.r_apo.powi(3) / (8.0 * self.mass)).sqrt() * (eta + eta.sin())
    }

    fn smooth_time(&self, eta: f64) -> f64 {
        let e = self.energy;
        let binding = 2.0 * self.mass / self.r_apo;
        e * (self.r_apo.powi(3) / (2.0 * self.mass)).sqrt() * (0.5 * (eta + eta.sin()) + binding * eta)
    }

    /// Coordinate time `t(η)`; fails at or beyond the horizon value.
    pub fn coordinate_time(&self, eta: f64) -> Result<f64, GeodesicError> {
        self.check_eta(eta)?;
        let th = self.tan_half_horizon();
        let tn = (0.5 * eta).tan();
        let diff = th - tn;
        if !(diff > 0.0) {
            return Err(GeodesicError::EtaDomain {
                eta,
                limit: self.eta_horizon,
            });
        }
        Ok(self.smooth_time(eta) + 2.0 * self.mass * ((th + tn) / diff).ln())
    }

    /// Coordinate time at radius `r`, with `tan(η_H/2) − tan(η/2)` rewritten as
    /// `r_apo·(r − 2μ) / (2μ·r·(tan(η_H/2) + tan(η/2)))`.
    pub fn coordinate_time_at(&self, r: f64) -> Result<f64, GeodesicError> {
        if !(r > 2.0 * self.mass) {
            return Err(GeodesicError::Horizon {
                r,
                horizon: 2.0 * self.mass,
            });
        }
        let eta = self.eta_at(r)?;
        let th = self.tan_half_horizon();
        let tn = self.tan_half_at(r)?;
        let sum = th + tn;
        let diff = self.r_apo * (r - 2.0 * self.mass) / (2.0 * self.mass * r * sum);
        Ok(self.smooth_time(eta) + 2.0 * self.mass * (sum / diff).ln())
    }

    /// `(U⁰, U¹)` at radius `r` on the infalling branch, using
    /// `U⁰ = E/(1 − 2μ/r)` and `U¹ = −√(E² − 1 + 2μ/r)`.
    pub fn velocity_at(&self, r: f64) -> (f64, f64) {
        let f = metric_factor(self.mass, r);
        // E² − f = 2μ(r_apo − r)/(r·r_apo)
        let kinetic = (2.0 * self.mass * (self.r_apo - r) / (r * self.r_apo)).max(0.0);
        (self.energy / f, -kinetic.sqrt())
    }

    fn check_eta(&self, eta: f64) -> Result<(), GeodesicError> {
        if !(0.0..PI).contains(&eta) {
            return Err(GeodesicError::EtaDomain { eta, limit: PI });
        }
        Ok(())
    }
}

/// Full parametric state at `eta`, with the tangent vector taken from the
/// η-form of `U⁰, U¹`.
pub fn cycloid_state(params: &CycloidParams, eta: f64) -> Result<CycloidPoint, GeodesicError> {
    let t = params.coordinate_time(eta)?;
    let half = 0.5 * eta;
    let c2 = half.cos().powi(2);
    let ch2 = (0.5 * params.eta_horizon).cos().powi(2);
    let u_t = params.energy * c2 / (c2 - ch2);
    let u_r = -(1.0 - params.energy * params.energy).sqrt() * half.tan();
    Ok(CycloidPoint {
        eta,
        r: params.radius(eta),
        t,
        tau: params.proper_time(eta),
        u_t,
        u_r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drop_energy_values() {
        assert!((drop_energy(3.0, 12.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(drop_energy(0.0, 5.0).unwrap(), 1.0);
        assert!(matches!(
            drop_energy(3.0, 6.0),
            Err(GeodesicError::ReleaseInsideHorizon { .. })
        ));
    }

    #[test]
    fn rest_at_apoapsis() {
        let p = CycloidParams::from_release(3.0, 12.0).unwrap();
        let s = cycloid_state(&p, 0.0).unwrap();
        assert_eq!(s.r, 12.0);
        assert_eq!(s.t, 0.0);
        assert_eq!(s.tau, 0.0);
        assert!((s.u_t - 1.0 / p.energy).abs() < 1e-15);
        assert_eq!(s.u_r, 0.0);
    }

    #[test]
    fn invariants_of_params() {
        let p = CycloidParams::from_release(3.0, 12.0).unwrap();
        assert!((p.r_apo - 2.0 * p.mass / (1.0 - p.energy * p.energy)).abs() < 1e-12);
        assert!((p.eta_horizon - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn horizon_crossing_radius_and_proper_time() {
        // mass 3, r_apo 12: η = π/2 lands exactly on r = 2M.
        let p = CycloidParams::from_release(3.0, 12.0).unwrap();
        assert!((p.radius(PI / 2.0) - 6.0).abs() < 1e-14);
        let tau = p.proper_time(PI / 2.0);
        assert!((tau - 72f64.sqrt() * (PI / 2.0 + 1.0)).abs() < 1e-12);
        assert!((tau - 21.814).abs() < 1e-3);
        // The f64 nearest π/2 sits just below η_H, where t is large but finite.
        let s = cycloid_state(&p, PI / 2.0).unwrap();
        assert!((s.r - 6.0).abs() < 1e-14);
        assert_eq!(s.tau, tau);
        assert!(s.t > 100.0 && s.t.is_finite());
        assert!(matches!(
            cycloid_state(&p, PI / 2.0 + 1e-12),
            Err(GeodesicError::EtaDomain { .. })
        ));
    }

    #[test]
    fn center_limit() {
        let p = CycloidParams::from_release(3.0, 12.0).unwrap();
        let eta = PI - 1e-9;
        assert!(p.radius(eta) < 1e-15);
        assert!((p.proper_time(eta) - 72f64.sqrt() * PI).abs() < 1e-7);
        assert!(matches!(cycloid_state(&p, PI), Err(GeodesicError::EtaDomain { .. })));
        assert!(matches!(cycloid_state(&p, -0.1), Err(GeodesicError::EtaDomain { .. })));
    }

    #[test]
    fn radius_and_eta_forms_agree() {
        let p = CycloidParams::from_release(2.0, 15.0).unwrap();
        for &r in &[14.9, 12.0, 8.0, 4.5] {
            let eta = p.eta_at(r).unwrap();
            assert!((p.radius(eta) - r).abs() < 1e-12);
            let a = p.coordinate_time(eta).unwrap();
            let b = p.coordinate_time_at(r).unwrap();
            assert!((a - b).abs() < 1e-9 * b.abs().max(1.0), "{a} vs {b}");
            let s = cycloid_state(&p, eta).unwrap();
            let (u_t, u_r) = p.velocity_at(r);
            assert!((s.u_t - u_t).abs() < 1e-10 * u_t);
            assert!((s.u_r - u_r).abs() < 1e-10);
        }
    }

    #[test]
    fn mid_flight_params_recover_release() {
        let p = CycloidParams::from_release(3.0, 12.0).unwrap();
        let (_, u_r) = p.velocity_at(8.0);
        let q = CycloidParams::from_state(3.0, 8.0, u_r).unwrap();
        assert!((q.r_apo - 12.0).abs() < 1e-12);
        assert!((q.energy - p.energy).abs() < 1e-15);
    }

    #[test]
    fn unbound_state_rejected() {
        assert!(matches!(
            CycloidParams::from_state(1.0, 10.0, -0.9),
            Err(GeodesicError::Unbound { .. })
        ));
    }
}

//! Radial oscillation of a particle released at rest in the exterior patch.
//!
//! The infall from `r_i` to the center is composed patch by patch; the rest of
//! the period follows from symmetry: the particle passes through the center,
//! climbs to `r_i` on the far side (mirror image of the infall), falls back,
//! and returns. One period is four infalls.

use serde::Serialize;

use super::cycloid::CycloidParams;
use super::segment::{cross_shell, segment_minkowski, segment_schwarzschild, Direction, GeodesicState};
use crate::error::GeodesicError;
use crate::numeric::{bisect, metric_factor};
use crate::spacetime::ShellSpacetime;

/// Bisection tolerance in η when inverting `t(η)`.
const ETA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Motion {
    /// Closed-form cycloid of the patch.
    Cycloid(CycloidParams),
    /// Uniform motion in a flat patch.
    Uniform,
}

/// One infall segment, with its offsets along the quarter period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarterSegment {
    pub patch_index: usize,
    pub mass: f64,
    pub lapse: f64,
    pub r_start: f64,
    pub r_end: f64,
    pub dt_local: f64,
    pub dtau: f64,
    pub entry: GeodesicState,
    pub exit: GeodesicState,
    motion: Motion,
}

impl QuarterSegment {
    pub fn dt_global(&self) -> f64 {
        self.lapse * self.dt_local
    }
}

/// Per-segment summary of the infall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SegmentSummary {
    pub patch_index: usize,
    pub mass: f64,
    pub lapse: f64,
    pub r_start: f64,
    pub r_end: f64,
    pub dt_local: f64,
    pub dt_global: f64,
    pub dtau: f64,
}

/// Full-period global coordinate time and proper time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OscillationPeriod {
    pub dt_global: f64,
    pub dtau: f64,
    /// The infall from `r_i` to the center, one entry per patch.
    pub quarter: Vec<SegmentSummary>,
}

impl OscillationPeriod {
    pub fn proper_per_coordinate(&self) -> f64 {
        self.dtau / self.dt_global
    }
}

/// Which side of the center the particle is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Near,
    Far,
}

/// A point on the oscillation at a given global time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitPoint {
    pub t_global: f64,
    pub r: f64,
    pub tau: f64,
    pub patch_index: usize,
    pub u_t: f64,
    pub u_r: f64,
    pub side: Side,
    pub direction: Direction,
}

/// Sample of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    pub t_global: f64,
    pub r: f64,
    pub tau: f64,
}

/// The oscillation of a particle dropped from rest at `r_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    release_radius: f64,
    exterior: CycloidParams,
    segments: Vec<QuarterSegment>,
    quarter_t: f64,
    quarter_tau: f64,
    masses: Vec<f64>,
}

impl Orbit {
    pub fn new(spacetime: &ShellSpacetime, release_radius: f64) -> Result<Self, GeodesicError> {
        if spacetime.patches().iter().all(|p| p.is_flat()) {
            return Err(GeodesicError::NoRestoringForce);
        }
        let ext = spacetime.exterior_index();
        let ext_patch = spacetime.patches()[ext];
        if !(release_radius > ext_patch.r_min) {
            return Err(GeodesicError::OutsidePatch {
                r: release_radius,
                patch: ext,
                r_min: ext_patch.r_min,
                r_max: f64::INFINITY,
            });
        }
        if ext_patch.is_flat() {
            // A flat exterior around a massive interior is not a bound drop.
            return Err(GeodesicError::NoRestoringForce);
        }
        let exterior = CycloidParams::from_release(ext_patch.mass, release_radius)?;

        let mut state = GeodesicState::at_rest(ext, ext_patch.mass, release_radius)?;
        let mut segments = Vec::with_capacity(spacetime.patches().len());
        for k in (0..=ext).rev() {
            let patch = spacetime.patches()[k];
            let lapse = spacetime.lapse_factor(k)?;
            let r_end = patch.r_min;
            let entry = state;
            let (result, motion) = if patch.is_flat() {
                (segment_minkowski(lapse, &entry, r_end)?, Motion::Uniform)
            } else {
                let seg = segment_schwarzschild(patch.mass, lapse, &entry, r_end)?;
                let cycloid = if k == ext {
                    exterior
                } else {
                    CycloidParams::from_state(patch.mass, entry.r, entry.u_r)?
                };
                (seg, Motion::Cycloid(cycloid))
            };
            segments.push(QuarterSegment {
                patch_index: k,
                mass: patch.mass,
                lapse,
                r_start: entry.r,
                r_end,
                dt_local: result.dt_local,
                dtau: result.dtau,
                entry,
                exit: result.exit_state,
                motion,
            });
            state = result.exit_state;
            if k > 0 {
                state = cross_shell(&state, spacetime, k - 1)?;
            }
        }
        let quarter_t = state.t_global;
        let quarter_tau = state.tau;
        Ok(Self {
            release_radius,
            exterior,
            segments,
            quarter_t,
            quarter_tau,
            masses: spacetime.patches().iter().map(|p| p.mass).collect(),
        })
    }

    pub fn release_radius(&self) -> f64 {
        self.release_radius
    }

    pub fn segments(&self) -> &[QuarterSegment] {
        &self.segments
    }

    /// Global time from release to the center.
    pub fn quarter_time(&self) -> f64 {
        self.quarter_t
    }

    pub fn quarter_proper_time(&self) -> f64 {
        self.quarter_tau
    }

    pub fn period(&self) -> OscillationPeriod {
        OscillationPeriod {
            dt_global: 4.0 * self.quarter_t,
            dtau: 4.0 * self.quarter_tau,
            quarter: self
                .segments
                .iter()
                .map(|s| SegmentSummary {
                    patch_index: s.patch_index,
                    mass: s.mass,
                    lapse: s.lapse,
                    r_start: s.r_start,
                    r_end: s.r_end,
                    dt_local: s.dt_local,
                    dt_global: s.dt_global(),
                    dtau: s.dtau,
                })
                .collect(),
        }
    }

    pub fn patch_mass(&self, patch_index: usize) -> f64 {
        self.masses[patch_index]
    }

    /// Global time and proper time from release down to `r` in the exterior
    /// patch (`r` between the outer shell and `r_i`).
    pub fn exterior_fall(&self, r: f64) -> Result<(f64, f64), GeodesicError> {
        let outer = self.segments[0].r_end;
        if r < outer || r > self.release_radius {
            return Err(GeodesicError::OutsidePatch {
                r,
                patch: self.segments[0].patch_index,
                r_min: outer,
                r_max: self.release_radius,
            });
        }
        let t = self.exterior.coordinate_time_at(r)?;
        let tau = self.exterior.proper_time(self.exterior.eta_at(r)?);
        Ok((t, tau))
    }

    /// Crossing of exterior radius `r` on the far side during the first
    /// oscillation: `(t, τ)` going out toward the turning point and coming back.
    pub fn far_side_crossings(&self, r: f64) -> Result<[(f64, f64); 2], GeodesicError> {
        let (t, tau) = self.exterior_fall(r)?;
        let half_t = 2.0 * self.quarter_t;
        let half_tau = 2.0 * self.quarter_tau;
        Ok([(half_t - t, half_tau - tau), (half_t + t, half_tau + tau)])
    }

    /// State on the infall at global time `s ∈ [0, quarter_time]`.
    fn infall_at(&self, s: f64) -> Result<(GeodesicState, usize), GeodesicError> {
        let s = s.clamp(0.0, self.quarter_t);
        let idx = self
            .segments
            .iter()
            .position(|seg| s <= seg.exit.t_global)
            .unwrap_or(self.segments.len() - 1);
        let seg = &self.segments[idx];
        let dt_local = ((s - seg.entry.t_global) / seg.lapse).clamp(0.0, seg.dt_local);
        let state = match seg.motion {
            Motion::Uniform => {
                let dtau = dt_local / seg.entry.u_t;
                let r = (seg.entry.r - seg.entry.u_r.abs() * dtau).max(seg.r_end);
                GeodesicState {
                    r,
                    tau: seg.entry.tau + dtau,
                    t_global: s,
                    ..seg.entry
                }
            }
            Motion::Cycloid(c) => {
                let eta_start = c.eta_at(seg.r_start)?;
                let eta_end = c.eta_at(seg.r_end)?;
                let t_start = c.coordinate_time_at(seg.r_start)?;
                let target = t_start + dt_local;
                let eta = if dt_local <= 0.0 {
                    eta_start
                } else if dt_local >= seg.dt_local {
                    eta_end
                } else {
                    bisect(
                        |eta| c.coordinate_time(eta).unwrap_or(f64::INFINITY) - target,
                        eta_start,
                        eta_end,
                        ETA_TOL,
                    )
                    .unwrap_or(eta_end)
                };
                let r = if eta == eta_start {
                    seg.r_start
                } else if eta == eta_end {
                    seg.r_end
                } else {
                    c.radius(eta)
                };
                let (u_t, u_r) = c.velocity_at(r);
                GeodesicState {
                    patch_index: seg.patch_index,
                    r,
                    u_r,
                    u_t,
                    tau: seg.entry.tau + (c.proper_time(eta) - c.proper_time(eta_start)),
                    t_global: s,
                    direction: Direction::Inbound,
                }
            }
        };
        Ok((state, idx))
    }

    /// Position, proper time and tangent vector at global time `t ≥ 0`.
    pub fn point_at(&self, t: f64) -> Result<OrbitPoint, GeodesicError> {
        let half = 2.0 * self.quarter_t;
        let n = (t / half).floor().max(0.0);
        let s = t - n * half;
        let tau_base = n * 2.0 * self.quarter_tau;
        let far_half = (n as u64) % 2 == 1;
        let (state, outbound) = if s <= self.quarter_t {
            (self.infall_at(s)?.0, false)
        } else {
            (self.infall_at(half - s)?.0, true)
        };
        let tau = if outbound {
            tau_base + 2.0 * self.quarter_tau - state.tau
        } else {
            tau_base + state.tau
        };
        let side = if far_half ^ outbound { Side::Far } else { Side::Near };
        Ok(OrbitPoint {
            t_global: t,
            r: state.r,
            tau,
            patch_index: state.patch_index,
            u_t: state.u_t,
            u_r: if outbound { -state.u_r } else { state.u_r },
            side,
            direction: if outbound {
                Direction::Outbound
            } else {
                Direction::Inbound
            },
        })
    }

    /// Local 4-velocity norm at a point (−1 for a timelike unit tangent).
    pub fn norm_at(&self, point: &OrbitPoint) -> f64 {
        let f = metric_factor(self.masses[point.patch_index], point.r);
        -f * point.u_t * point.u_t + point.u_r * point.u_r / f
    }
}

/// Full-period global time, proper time and per-patch infall breakdown.
pub fn oscillation_period(spacetime: &ShellSpacetime, release_radius: f64) -> Result<OscillationPeriod, GeodesicError> {
    Ok(Orbit::new(spacetime, release_radius)?.period())
}

/// `sample_count` points uniformly spaced in global time over
/// `[0, t_global_max]`.
pub fn trajectory(
    spacetime: &ShellSpacetime,
    release_radius: f64,
    t_global_max: f64,
    sample_count: usize,
) -> Result<Vec<OrbitPoint>, GeodesicError> {
    let orbit = Orbit::new(spacetime, release_radius)?;
    sample_orbit(&orbit, t_global_max, sample_count)
}

pub fn sample_orbit(orbit: &Orbit, t_global_max: f64, sample_count: usize) -> Result<Vec<OrbitPoint>, GeodesicError> {
    if sample_count == 0 {
        return Err(GeodesicError::SampleCount);
    }
    if sample_count == 1 {
        return Ok(vec![orbit.point_at(0.0)?]);
    }
    let step = t_global_max / (sample_count - 1) as f64;
    (0..sample_count)
        .map(|k| {
            let t = if k == sample_count - 1 {
                t_global_max
            } else {
                k as f64 * step
            };
            orbit.point_at(t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::{build_spacetime, PatchSpec};

    fn one_shell(r: f64) -> ShellSpacetime {
        ShellSpacetime::one_shell(3.0, r).unwrap()
    }

    #[test]
    fn quarter_matches_hand_composition() {
        // Infall time: exterior t(η_R) plus the lapse-scaled flat crossing
        // −R·(1 − 2M/R)·U⁰/U¹.
        let (m, r, ri) = (3.0, 8.0, 12.0);
        let orbit = Orbit::new(&one_shell(r), ri).unwrap();
        let c = CycloidParams::from_release(m, ri).unwrap();
        let (u0, u1) = c.velocity_at(r);
        let f = 1.0 - 2.0 * m / r;
        let dt_minus = -r * f * u0 / u1;
        let dtau_minus = -r * f.sqrt() / u1;
        let t_plus = c.coordinate_time_at(r).unwrap();
        let tau_plus = c.proper_time(c.eta_at(r).unwrap());
        let expected_t = 4.0 * (t_plus + dt_minus / f.sqrt());
        let expected_tau = 4.0 * (tau_plus + dtau_minus);
        let p = orbit.period();
        assert!((p.dt_global - expected_t).abs() < 1e-12 * expected_t);
        assert!((p.dtau - expected_tau).abs() < 1e-12 * expected_tau);
        assert_eq!(p.quarter.len(), 2);
        assert_eq!(p.dt_global, 4.0 * orbit.quarter_time());
    }

    #[test]
    fn all_flat_has_no_period() {
        let st = build_spacetime(vec![PatchSpec::unbounded(0.0, 0.0)]).unwrap();
        assert_eq!(Orbit::new(&st, 5.0).unwrap_err(), GeodesicError::NoRestoringForce);
    }

    #[test]
    fn pure_schwarzschild_reaches_horizon() {
        let st = build_spacetime(vec![PatchSpec::unbounded(3.0, 0.0)]).unwrap();
        assert!(matches!(Orbit::new(&st, 12.0), Err(GeodesicError::Horizon { .. })));
    }

    #[test]
    fn release_inside_shell_rejected() {
        assert!(matches!(
            Orbit::new(&one_shell(8.0), 7.0),
            Err(GeodesicError::OutsidePatch { .. })
        ));
    }

    #[test]
    fn point_at_start_and_period() {
        let orbit = Orbit::new(&one_shell(8.0), 12.0).unwrap();
        let p0 = orbit.point_at(0.0).unwrap();
        assert_eq!((p0.t_global, p0.r, p0.tau), (0.0, 12.0, 0.0));
        let period = orbit.period();
        let p1 = orbit.point_at(period.dt_global).unwrap();
        assert!((p1.r - 12.0).abs() < 1e-8);
        assert!((p1.tau - period.dtau).abs() < 1e-8);
        assert_eq!(p1.side, Side::Near);
        let half = orbit.point_at(0.5 * period.dt_global).unwrap();
        assert!((half.r - 12.0).abs() < 1e-8);
        assert_eq!(half.side, Side::Far);
    }

    #[test]
    fn center_reached_at_quarter() {
        let orbit = Orbit::new(&one_shell(8.0), 12.0).unwrap();
        let p = orbit.point_at(orbit.quarter_time()).unwrap();
        assert!(p.r.abs() < 1e-9);
        assert!((p.tau - orbit.quarter_proper_time()).abs() < 1e-12);
    }

    #[test]
    fn zero_samples_rejected() {
        assert_eq!(
            trajectory(&one_shell(8.0), 12.0, 10.0, 0).unwrap_err(),
            GeodesicError::SampleCount
        );
    }

    #[test]
    fn far_side_crossings_bracket_the_half_period() {
        let orbit = Orbit::new(&one_shell(8.0), 12.0).unwrap();
        let [(t_out, tau_out), (t_back, tau_back)] = orbit.far_side_crossings(10.0).unwrap();
        let half = 2.0 * orbit.quarter_time();
        assert!(t_out < half && half < t_back);
        assert!(tau_out < tau_back);
        let p = orbit.point_at(t_out).unwrap();
        assert!((p.r - 10.0).abs() < 1e-8);
        assert_eq!(p.side, Side::Far);
        assert_eq!(p.direction, Direction::Outbound);
        assert!((p.tau - tau_out).abs() < 1e-8);
    }
}

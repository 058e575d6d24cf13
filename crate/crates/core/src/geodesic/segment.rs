//! Per-patch segments of a radial timelike geodesic and the transfer of the
//! tangent vector across a shell.

use serde::Serialize;

use super::cycloid::CycloidParams;
use crate::error::GeodesicError;
use crate::numeric::metric_factor;
use crate::spacetime::ShellSpacetime;

/// Relative tolerance for "this state is on shell `j`".
pub const SHELL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Inbound,
    Outbound,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Inbound => "inbound",
            Direction::Outbound => "outbound",
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Direction::Inbound => Direction::Outbound,
            Direction::Outbound => Direction::Inbound,
        }
    }
}

/// Kinematic state in the local coordinates of one patch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicState {
    pub patch_index: usize,
    pub r: f64,
    /// `dr/dτ` in the patch's coordinates.
    pub u_r: f64,
    /// `dt_local/dτ`.
    pub u_t: f64,
    pub tau: f64,
    pub t_global: f64,
    pub direction: Direction,
}

impl GeodesicState {
    /// At rest at `r` in `patch_index`, with `τ = t = 0`.
    pub fn at_rest(patch_index: usize, mass: f64, r: f64) -> Result<Self, GeodesicError> {
        let f = metric_factor(mass, r);
        if !(f > 0.0) {
            return Err(GeodesicError::ReleaseInsideHorizon { r, horizon: 2.0 * mass });
        }
        Ok(Self {
            patch_index,
            r,
            u_r: 0.0,
            u_t: 1.0 / f.sqrt(),
            tau: 0.0,
            t_global: 0.0,
            direction: Direction::Inbound,
        })
    }

    /// `g(U, U)` in the local patch metric; −1 for a normalized state.
    pub fn norm(&self, mass: f64) -> f64 {
        let f = metric_factor(mass, self.r);
        -f * self.u_t * self.u_t + self.u_r * self.u_r / f
    }

    /// Conserved `E = √(u_r² + 1 − 2μ/r)` of the patch the state is in.
    pub fn energy(&self, mass: f64) -> f64 {
        (self.u_r * self.u_r + metric_factor(mass, self.r)).sqrt()
    }
}

/// Local coordinate-time and proper-time spans of one segment plus the state
/// at its end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentResult {
    pub dt_local: f64,
    pub dtau: f64,
    pub exit_state: GeodesicState,
}

fn check_direction(entry: &GeodesicState, r_exit: f64) -> Result<(), GeodesicError> {
    let wrong = match entry.direction {
        Direction::Inbound => r_exit > entry.r,
        Direction::Outbound => r_exit < entry.r,
    };
    if wrong {
        return Err(GeodesicError::WrongDirection {
            direction: entry.direction.as_str(),
            r_entry: entry.r,
            r_exit,
        });
    }
    Ok(())
}

/// Segment inside a Schwarzschild patch of mass `mass > 0`, evaluated in
/// closed form from the cycloid through the entry state.
///
/// Outbound motion uses the time-reversed infall (η → −η), so spans are the
/// absolute differences of `t(η)` and `τ(η)`. `lapse` converts the local span
/// to global time for the exit state.
pub fn segment_schwarzschild(
    mass: f64,
    lapse: f64,
    entry: &GeodesicState,
    r_exit: f64,
) -> Result<SegmentResult, GeodesicError> {
    if r_exit == entry.r {
        return Ok(SegmentResult {
            dt_local: 0.0,
            dtau: 0.0,
            exit_state: *entry,
        });
    }
    check_direction(entry, r_exit)?;
    if !(r_exit > 2.0 * mass) {
        return Err(GeodesicError::Horizon {
            r: r_exit,
            horizon: 2.0 * mass,
        });
    }
    let cycloid = CycloidParams::from_state(mass, entry.r, entry.u_r)?;
    if cycloid.energy >= 1.0 {
        return Err(GeodesicError::Unbound { energy: cycloid.energy });
    }
    if r_exit > cycloid.r_apo * (1.0 + 1e-14) {
        return Err(GeodesicError::Unreachable {
            r_exit,
            r_turn: cycloid.r_apo,
        });
    }

    let eta_in = cycloid.eta_at(entry.r)?;
    let eta_out = cycloid.eta_at(r_exit)?;
    let dt_local = (cycloid.coordinate_time_at(r_exit)? - cycloid.coordinate_time_at(entry.r)?).abs();
    let dtau = (cycloid.proper_time(eta_out) - cycloid.proper_time(eta_in)).abs();

    let (u_t, u_r_in) = cycloid.velocity_at(r_exit);
    let u_r = match entry.direction {
        Direction::Inbound => u_r_in,
        Direction::Outbound => -u_r_in,
    };
    Ok(SegmentResult {
        dt_local,
        dtau,
        exit_state: GeodesicState {
            patch_index: entry.patch_index,
            r: r_exit,
            u_r,
            u_t,
            tau: entry.tau + dtau,
            t_global: entry.t_global + lapse * dt_local,
            direction: entry.direction,
        },
    })
}

/// Uniform straight-line motion in a flat patch.
pub fn segment_minkowski(lapse: f64, entry: &GeodesicState, r_exit: f64) -> Result<SegmentResult, GeodesicError> {
    if r_exit == entry.r {
        return Ok(SegmentResult {
            dt_local: 0.0,
            dtau: 0.0,
            exit_state: *entry,
        });
    }
    if entry.u_r == 0.0 {
        return Err(GeodesicError::Stationary {
            r_entry: entry.r,
            r_exit,
        });
    }
    check_direction(entry, r_exit)?;
    let dtau = (r_exit - entry.r).abs() / entry.u_r.abs();
    let dt_local = entry.u_t * dtau;
    Ok(SegmentResult {
        dt_local,
        dtau,
        exit_state: GeodesicState {
            r: r_exit,
            tau: entry.tau + dtau,
            t_global: entry.t_global + lapse * dt_local,
            ..*entry
        },
    })
}

/// Moves the state between the two patches that meet at shell `shell_index`.
///
/// Inbound states move from the outer to the inner patch, outbound states the
/// other way. Going outward, `u_r` gains `√(f_out/f_in)` and `u_t` gains
/// `√(f_in/f_out)`; inward, the inverse. τ and the global time are continuous.
pub fn cross_shell(
    state: &GeodesicState,
    spacetime: &ShellSpacetime,
    shell_index: usize,
) -> Result<GeodesicState, GeodesicError> {
    let radius = spacetime.shell_radius(shell_index)?;
    if (state.r - radius).abs() > SHELL_TOLERANCE * radius {
        return Err(GeodesicError::NotAtShell {
            r: state.r,
            shell_index,
            radius,
        });
    }
    let inner = shell_index;
    let outer = shell_index + 1;
    let (from, to) = match state.direction {
        Direction::Inbound => (outer, inner),
        Direction::Outbound => (inner, outer),
    };
    if state.patch_index != from {
        return Err(GeodesicError::NotAtShell {
            r: state.r,
            shell_index,
            radius,
        });
    }
    let f_from = metric_factor(spacetime.patches()[from].mass, radius);
    let f_to = metric_factor(spacetime.patches()[to].mass, radius);
    let ratio = (f_to / f_from).sqrt();
    Ok(GeodesicState {
        patch_index: to,
        r: radius,
        u_r: state.u_r * ratio,
        u_t: state.u_t / ratio,
        ..*state
    })
}

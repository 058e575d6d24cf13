//! Parameter search for a pair of spacetimes that implement a gravitational
//! quantum switch.
//!
//! `M1` has a flat core inside a single shell at `R = R2 + (R1 − R2)·f` and
//! exterior mass `M`. `M2` has a flat core inside `R2`, mass `m` between `R2`
//! and `R1`, and exterior mass `M`. A particle dropped from rest at `r_i`
//! oscillates in each. The search looks for `(R1, f)` where
//!
//! - both oscillations have the same proper time per unit coordinate time, and
//! - the coordinate periods are in the ratio `p/q`,
//!
//! so that the two geodesics rejoin after `q` and `p` oscillations with equal
//! proper times.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeodesicError, SearchError};
use crate::geodesic::{Orbit, OscillationPeriod};
use crate::numeric::{bisect_secant, RootError};
use crate::spacetime::{build_spacetime_with_margin, PatchSpec, ShellSpacetime, DEFAULT_HORIZON_MARGIN};

/// Number of f samples used to bracket the contour at fixed `R1`.
const F_SCAN_POINTS: usize = 96;
/// Decades spanned by the f scan, measured from the lower bound.
const F_SCAN_DECADES: f64 = 10.0;
/// Distance of the f bracket from the horizon, as a fraction of `R1`.
const F_HORIZON_MARGIN: f64 = 1e-6;

fn default_grid() -> usize {
    200
}

fn default_tol() -> f64 {
    1e-10
}

fn default_margin() -> f64 {
    DEFAULT_HORIZON_MARGIN
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    /// Mass between the shells of `M2`.
    pub m: f64,
    /// Exterior mass of both spacetimes.
    #[serde(rename = "M")]
    pub big_m: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    pub r_i: f64,
    pub p: u64,
    pub q: u64,
    #[serde(rename = "R1_min", default)]
    pub r1_min: Option<f64>,
    #[serde(rename = "R1_max", default)]
    pub r1_max: Option<f64>,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Relative horizon margin used when validating the shells.
    #[serde(default = "default_margin")]
    pub margin: f64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl SearchConfig {
    /// The configuration used to produce the published switch: `m = 1.9999`,
    /// `M = 3`, `R2 = 4`, `r_i = 12`, ratio 9/10.
    pub fn reference() -> Self {
        Self {
            m: 1.9999,
            big_m: 3.0,
            r2: 4.0,
            r_i: 12.0,
            p: 9,
            q: 10,
            r1_min: None,
            r1_max: None,
            grid: default_grid(),
            tol: default_tol(),
            margin: default_margin(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |msg: String| Err(SearchError::Config(msg));
        if !(self.big_m > 0.0 && self.big_m.is_finite()) {
            return bad(format!("M must be positive, got {}", self.big_m));
        }
        if !(self.m > 0.0 && self.m.is_finite()) {
            return bad(format!("m must be positive, got {}", self.m));
        }
        if !(self.r2 > 2.0 * self.m) {
            return bad(format!("R2 = {} must exceed 2m = {}", self.r2, 2.0 * self.m));
        }
        if !(self.r_i > self.r2 && self.r_i > 2.0 * self.big_m && self.r_i.is_finite()) {
            return bad(format!("r_i = {} must exceed R2 and 2M", self.r_i));
        }
        if self.p == 0 || self.q == 0 {
            return bad("p and q must be positive integers".into());
        }
        if self.grid < 2 {
            return bad(format!("grid must have at least 2 points, got {}", self.grid));
        }
        if !(self.tol > 0.0) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if !(self.margin >= 0.0) {
            return bad(format!("margin must be non-negative, got {}", self.margin));
        }
        let (lo, hi) = self.r1_range();
        if !(lo < hi) {
            return bad(format!("empty R1 range [{lo}, {hi}]"));
        }
        Ok(())
    }

    /// `p/q` in lowest terms.
    pub fn reduced_ratio(&self) -> (u64, u64) {
        let g = gcd(self.p, self.q).max(1);
        (self.p / g, self.q / g)
    }

    pub fn target_ratio(&self) -> f64 {
        let (p, q) = self.reduced_ratio();
        p as f64 / q as f64
    }

    /// Scan interval for `R1`. Defaults to the open interval `(max(R2, 2M), r_i)`
    /// shrunk by 0.1% on each side.
    pub fn r1_range(&self) -> (f64, f64) {
        let floor = self.r2.max(2.0 * self.big_m);
        let pad = 1e-3 * (self.r_i - floor);
        (
            self.r1_min.unwrap_or(floor + pad),
            self.r1_max.unwrap_or(self.r_i - pad),
        )
    }

    /// `R = R2 + (R1 − R2)·f`.
    pub fn shell_radius(&self, r1: f64, f: f64) -> f64 {
        self.r2 + (r1 - self.r2) * f
    }

    /// Admissible f interval at `R1`: `R − 2M ≥ 10⁻⁶·R1` and `f ≤ 1 − 10⁻⁶`.
    pub fn f_bracket(&self, r1: f64) -> (f64, f64) {
        let lo = ((2.0 * self.big_m + F_HORIZON_MARGIN * r1 - self.r2) / (r1 - self.r2)).max(0.0);
        (lo, 1.0 - 1e-6)
    }

    fn spacetime(&self, patches: Vec<PatchSpec>, r1: f64, f: f64) -> Result<ShellSpacetime, SearchError> {
        build_spacetime_with_margin(patches, self.margin).map_err(|e| SearchError::Domain {
            r1,
            f,
            reason: e.to_string(),
        })
    }

    /// Single-shell spacetime with its shell at `R(R1, f)`.
    pub fn m1(&self, r1: f64, f: f64) -> Result<ShellSpacetime, SearchError> {
        let r = self.shell_radius(r1, f);
        if !(r > 0.0 && r < r1) {
            return Err(SearchError::Domain {
                r1,
                f,
                reason: format!("R = {r} must lie in (0, R1)"),
            });
        }
        self.spacetime(
            vec![PatchSpec::bounded(0.0, 0.0, r), PatchSpec::unbounded(self.big_m, r)],
            r1,
            f,
        )
    }

    /// Two-shell spacetime with shells at `R2` and `R1`.
    pub fn m2(&self, r1: f64) -> Result<ShellSpacetime, SearchError> {
        if !(r1 > self.r2) {
            return Err(SearchError::Domain {
                r1,
                f: f64::NAN,
                reason: format!("R1 must exceed R2 = {}", self.r2),
            });
        }
        self.spacetime(
            vec![
                PatchSpec::bounded(0.0, 0.0, self.r2),
                PatchSpec::bounded(self.m, self.r2, r1),
                PatchSpec::unbounded(self.big_m, r1),
            ],
            r1,
            f64::NAN,
        )
    }

    fn check_release(&self, r1: f64) -> Result<(), SearchError> {
        if !(r1 < self.r_i) {
            return Err(SearchError::Domain {
                r1,
                f: f64::NAN,
                reason: format!("R1 must lie inside the release radius r_i = {}", self.r_i),
            });
        }
        Ok(())
    }

    pub fn m1_orbit(&self, r1: f64, f: f64) -> Result<Orbit, SearchError> {
        self.check_release(r1)?;
        Ok(Orbit::new(&self.m1(r1, f)?, self.r_i)?)
    }

    pub fn m2_orbit(&self, r1: f64) -> Result<Orbit, SearchError> {
        self.check_release(r1)?;
        Ok(Orbit::new(&self.m2(r1)?, self.r_i)?)
    }
}

/// Oscillation periods of the two spacetimes at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodPair {
    pub m1: OscillationPeriod,
    pub m2: OscillationPeriod,
}

impl PeriodPair {
    /// `Δτ¹/Δt¹ − Δτ²/Δt²`.
    pub fn proper_residual(&self) -> f64 {
        self.m1.proper_per_coordinate() - self.m2.proper_per_coordinate()
    }

    /// `Δt¹/Δt²`.
    pub fn period_ratio(&self) -> f64 {
        self.m1.dt_global / self.m2.dt_global
    }
}

pub fn period_pair(r1: f64, f: f64, config: &SearchConfig) -> Result<PeriodPair, SearchError> {
    Ok(PeriodPair {
        m1: config.m1_orbit(r1, f)?.period(),
        m2: config.m2_orbit(r1)?.period(),
    })
}

/// `Δτ¹/Δt¹ − Δτ²/Δt²` at `(R1, f)`.
pub fn ratio_residual(r1: f64, f: f64, config: &SearchConfig) -> Result<f64, SearchError> {
    Ok(period_pair(r1, f, config)?.proper_residual())
}

fn root_error(context: &str, e: RootError) -> SearchError {
    SearchError::NotConverged(format!("{context}: {e}"))
}

/// Value of f on the equal-ratio contour at fixed `R1`.
///
/// The residual is scanned on a grid that is logarithmically dense near the
/// horizon end of the bracket, where the contour sits for near-horizon
/// shells; the first sign change in ascending f is refined to machine
/// precision.
pub fn solve_contour(r1: f64, config: &SearchConfig) -> Result<f64, SearchError> {
    let (f_lo, f_hi) = config.f_bracket(r1);
    if !(f_lo < f_hi) {
        return Err(SearchError::NoContourBracket { r1, f_lo, f_hi });
    }
    // M2 does not depend on f.
    let m2 = config.m2_orbit(r1)?.period();
    let m2_ratio = m2.proper_per_coordinate();
    let residual = |f: f64| -> Result<f64, SearchError> {
        Ok(config.m1_orbit(r1, f)?.period().proper_per_coordinate() - m2_ratio)
    };

    let width = f_hi - f_lo;
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=F_SCAN_POINTS {
        let f = if k == 0 {
            f_lo
        } else if k == F_SCAN_POINTS {
            f_hi
        } else {
            let decades = F_SCAN_DECADES * (1.0 - k as f64 / F_SCAN_POINTS as f64);
            f_lo + width * 10f64.powf(-decades)
        };
        let value = match residual(f) {
            Ok(v) => v,
            Err(_) => {
                prev = None;
                continue;
            }
        };
        if value == 0.0 {
            return Ok(f);
        }
        if let Some((f_prev, v_prev)) = prev {
            if v_prev.signum() != value.signum() {
                return bisect_secant(|x| residual(x).unwrap_or(f64::NAN), f_prev, f, 0.0)
                    .map_err(|e| root_error("contour", e));
            }
        }
        prev = Some((f, value));
    }
    Err(SearchError::NoContourBracket { r1, f_lo, f_hi })
}

/// One point of the period-ratio curve along the contour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    #[serde(rename = "R1")]
    pub r1: f64,
    pub f: f64,
    pub ratio: f64,
}

fn curve_point(r1: f64, config: &SearchConfig) -> Result<CurvePoint, SearchError> {
    let f = solve_contour(r1, config)?;
    let ratio = period_pair(r1, f, config)?.period_ratio();
    Ok(CurvePoint { r1, f, ratio })
}

/// `R1` grid of `config.grid` points spanning the scan interval.
pub fn r1_grid(config: &SearchConfig) -> Vec<f64> {
    let (lo, hi) = config.r1_range();
    let n = config.grid;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn with_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> Result<T, SearchError> {
    if jobs == 0 {
        return Ok(work());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| SearchError::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(work))
}

/// Period ratio `Δt¹/Δt²` along the contour, one point per admissible grid
/// value of `R1`, in ascending `R1`. Grid values where the contour or either
/// geodesic does not exist are dropped.
///
/// `jobs` sizes the worker pool (0 uses the global pool). Results are
/// collected in grid order, so the output does not depend on it.
pub fn period_ratio_curve(config: &SearchConfig, jobs: usize) -> Result<Vec<CurvePoint>, SearchError> {
    config.validate()?;
    let grid = r1_grid(config);
    let points: Vec<Option<CurvePoint>> = with_pool(jobs, || {
        grid.par_iter().map(|&r1| curve_point(r1, config).ok()).collect()
    })?;
    Ok(points.into_iter().flatten().collect())
}

/// Solved geometry, its periods and the residuals of both conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwitchSolution {
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    pub r_i: f64,
    pub p: u64,
    pub q: u64,
    #[serde(rename = "R1")]
    pub r1: f64,
    pub f: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub dt1: f64,
    pub dtau1: f64,
    pub dt2: f64,
    pub dtau2: f64,
    pub ratio: f64,
    /// `Δτ¹/Δt¹ − Δτ²/Δt²`.
    pub proper_residual: f64,
    /// `Δt¹/Δt² − p/q`.
    pub ratio_residual: f64,
    /// `q·Δt¹`, the global time at which both branches are back at `r_i`.
    pub t_f: f64,
}

impl SwitchSolution {
    fn assemble(config: &SearchConfig, r1: f64, f: f64) -> Result<Self, SearchError> {
        let pair = period_pair(r1, f, config)?;
        let (p, q) = config.reduced_ratio();
        let ratio = pair.period_ratio();
        Ok(Self {
            m: config.m,
            big_m: config.big_m,
            r2: config.r2,
            r_i: config.r_i,
            p,
            q,
            r1,
            f,
            r: config.shell_radius(r1, f),
            dt1: pair.m1.dt_global,
            dtau1: pair.m1.dtau,
            dt2: pair.m2.dt_global,
            dtau2: pair.m2.dtau,
            ratio,
            proper_residual: pair.proper_residual(),
            ratio_residual: ratio - p as f64 / q as f64,
            t_f: q as f64 * pair.m1.dt_global,
        })
    }

    /// Rebuilds the solution at a given `(R1, f)` without solving.
    pub fn at(config: &SearchConfig, r1: f64, f: f64) -> Result<Self, SearchError> {
        config.validate()?;
        Self::assemble(config, r1, f)
    }

    /// Checks the geometry constraints and both residual bounds.
    pub fn verify(&self, tol: f64) -> Result<(), SearchError> {
        let fail = |reason: String| {
            Err(SearchError::Domain {
                r1: self.r1,
                f: self.f,
                reason,
            })
        };
        if !(2.0 * self.big_m < self.r && self.r < self.r1) {
            return fail(format!("need 2M < R < R1, got R = {}", self.r));
        }
        if !(self.r2 < self.r && 2.0 * self.m < self.r2) {
            return fail(format!("need 2m < R2 < R, got R = {}", self.r));
        }
        if !(self.proper_residual.abs() <= tol) {
            return Err(SearchError::NotConverged(format!(
                "proper-time ratio residual {} exceeds {tol}",
                self.proper_residual
            )));
        }
        if !(self.ratio_residual.abs() <= tol) {
            return Err(SearchError::NotConverged(format!(
                "period ratio residual {} exceeds {tol}",
                self.ratio_residual
            )));
        }
        Ok(())
    }

    /// `|q·Δt¹ − p·Δt²| / t_f`.
    pub fn rejoin_mismatch(&self) -> f64 {
        (self.q as f64 * self.dt1 - self.p as f64 * self.dt2).abs() / self.t_f
    }
}

/// Solution together with the curve it was bracketed on.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub curve: Vec<CurvePoint>,
    pub solution: SwitchSolution,
}

/// Finds `R1` on the contour where `Δt¹/Δt² = p/q`.
///
/// The first adjacent pair of curve points that brackets the target is
/// refined by bracketed root finding in `R1`, re-solving the contour at every
/// step.
pub fn solve_switch_configuration(config: &SearchConfig, jobs: usize) -> Result<SearchOutcome, SearchError> {
    let curve = period_ratio_curve(config, jobs)?;
    let target = config.target_ratio();
    let solution = solve_on_curve(config, &curve, target)?;
    Ok(SearchOutcome { curve, solution })
}

fn solve_on_curve(config: &SearchConfig, curve: &[CurvePoint], target: f64) -> Result<SwitchSolution, SearchError> {
    if curve.is_empty() {
        return Err(SearchError::Unattainable {
            target,
            min: f64::NAN,
            max: f64::NAN,
        });
    }
    let bracket = curve.windows(2).find(|w| {
        let a = w[0].ratio - target;
        let b = w[1].ratio - target;
        a == 0.0 || a.signum() != b.signum()
    });
    let exact = curve.iter().find(|c| c.ratio == target);
    let (r1, f) = match (exact, bracket) {
        (Some(c), _) => (c.r1, c.f),
        (None, Some(w)) => {
            let g = |r1: f64| match curve_point(r1, config) {
                Ok(c) => c.ratio - target,
                Err(_) => f64::NAN,
            };
            let r1 = bisect_secant(g, w[0].r1, w[1].r1, 0.0).map_err(|e| root_error("period ratio", e))?;
            (r1, solve_contour(r1, config)?)
        }
        (None, None) => {
            let min = curve.iter().map(|c| c.ratio).fold(f64::INFINITY, f64::min);
            let max = curve.iter().map(|c| c.ratio).fold(f64::NEG_INFINITY, f64::max);
            return Err(SearchError::Unattainable { target, min, max });
        }
    };
    let solution = SwitchSolution::assemble(config, r1, f)?;
    solution.verify(config.tol)?;
    Ok(solution)
}

/// Crossing of the meeting radius by both geodesics on the far side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeetingEvent {
    pub r_t: f64,
    /// Common proper time at `r_t`.
    pub tau_a: f64,
    /// Global time at which the single-shell geodesic passes `r_t` inbound,
    /// after its far-side turning point.
    pub t_a1: f64,
    /// Global time at which the two-shell geodesic passes `r_t` outbound,
    /// before its far-side turning point.
    pub t_a2: f64,
    pub gamma1_direction: &'static str,
    pub gamma2_direction: &'static str,
    pub side: &'static str,
    /// `τ_γ1(r_t) − τ_γ2(r_t)`.
    pub tau_mismatch: f64,
    /// Whether the whole far-side exterior excursion of the single-shell
    /// geodesic ends before the two-shell geodesic enters that region.
    pub excursion_ordered: bool,
}

/// Meeting radius of the two geodesics at a solved configuration.
///
/// On the far side, the single-shell geodesic falls back from its turning
/// point while the two-shell one is still climbing. Both exteriors are the
/// same Schwarzschild patch with the same release radius, so with `τ_e(r)` the
/// exterior fall time from `r_i`,
/// `τ_γ1 = Δτ¹/2 + τ_e(r)` and `τ_γ2 = Δτ²/2 − τ_e(r)`.
pub fn find_meeting_radius(solution: &SwitchSolution, config: &SearchConfig) -> Result<MeetingEvent, SearchError> {
    let o1 = config.m1_orbit(solution.r1, solution.f)?;
    let o2 = config.m2_orbit(solution.r1)?;
    find_meeting(&o1, &o2)
}

/// Meeting radius between two orbits that share the exterior and release
/// radius.
pub fn find_meeting(o1: &Orbit, o2: &Orbit) -> Result<MeetingEvent, SearchError> {
    let r_i = o1.release_radius();
    if o2.release_radius() != r_i {
        return Err(SearchError::NoMeeting("release radii differ".into()));
    }
    let r_lo = o1.segments()[0].r_end.max(o2.segments()[0].r_end);
    let half1 = 2.0 * o1.quarter_proper_time();
    let half2 = 2.0 * o2.quarter_proper_time();
    type Crossings = [(f64, f64); 2];
    let mismatch = |r: f64| -> Result<(f64, Crossings, Crossings), GeodesicError> {
        let c1 = o1.far_side_crossings(r)?;
        let c2 = o2.far_side_crossings(r)?;
        Ok((c1[1].1 - c2[0].1, c1, c2))
    };
    let at_shell = mismatch(r_lo)?.0;
    // At r_i the mismatch is (Δτ¹ − Δτ²)/2 regardless of r.
    let at_release = half1 - half2;
    if !(at_release < 0.0 && at_shell > 0.0) {
        return Err(SearchError::NoMeeting(format!(
            "τ_γ1 − τ_γ2 does not change sign on ({r_lo}, {r_i}): {at_shell} at the shell, {at_release} at release"
        )));
    }
    let r_t = bisect_secant(|r| mismatch(r).map(|m| m.0).unwrap_or(f64::NAN), r_lo, r_i, 0.0)
        .map_err(|e| root_error("meeting radius", e))?;
    let (tau_mismatch, c1, c2) = mismatch(r_t)?;
    let t_a1 = c1[1].0;
    let t_a2 = c2[0].0;
    if !(t_a1 < t_a2) {
        return Err(SearchError::NoMeeting(format!(
            "crossing times out of order: t_A1 = {t_a1}, t_A2 = {t_a2}"
        )));
    }
    let excursion_ordered = o1.far_side_crossings(r_lo)?[1].0 < o2.far_side_crossings(r_lo)?[0].0;
    Ok(MeetingEvent {
        r_t,
        tau_a: 0.5 * (c1[1].1 + c2[0].1),
        t_a1,
        t_a2,
        gamma1_direction: "inbound",
        gamma2_direction: "outbound",
        side: "far",
        tau_mismatch,
        excursion_ordered,
    })
}

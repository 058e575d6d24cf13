//! Radial light rays and static observers.

use crate::error::GeodesicError;
use crate::numeric::metric_factor;
use crate::spacetime::ShellSpacetime;

/// Local coordinate time for a radial ray between `r_near < r_far` in one
/// patch: `|Δr| + 2μ·ln((r_far − 2μ)/(r_near − 2μ))`.
pub fn null_span_local(mass: f64, r_near: f64, r_far: f64) -> Result<f64, GeodesicError> {
    let (lo, hi) = if r_near <= r_far {
        (r_near, r_far)
    } else {
        (r_far, r_near)
    };
    if lo < 0.0 {
        return Err(GeodesicError::NegativeRadius(lo));
    }
    if mass == 0.0 || lo == hi {
        return Ok(hi - lo);
    }
    let horizon = 2.0 * mass;
    if !(lo > horizon) {
        return Err(GeodesicError::Horizon { r: lo, horizon });
    }
    Ok(hi - lo + horizon * ((hi - horizon) / (lo - horizon)).ln())
}

/// Global coordinate time for a radial ray between `r_a` and `r_b` on the
/// same side of the center, summed patch by patch with each patch's lapse.
pub fn null_crossing_time(spacetime: &ShellSpacetime, r_a: f64, r_b: f64) -> Result<f64, GeodesicError> {
    let (lo, hi) = if r_a <= r_b { (r_a, r_b) } else { (r_b, r_a) };
    if lo < 0.0 {
        return Err(GeodesicError::NegativeRadius(lo));
    }
    let mut total = 0.0;
    for (k, patch) in spacetime.patches().iter().enumerate() {
        let a = lo.max(patch.r_min);
        let b = hi.min(patch.r_max.unwrap_or(f64::INFINITY));
        if b <= a {
            continue;
        }
        total += spacetime.lapse_factor(k)? * null_span_local(patch.mass, a, b)?;
    }
    Ok(total)
}

/// Ray from `r_a` through the center out to `r_b` on the opposite side.
pub fn diametral_crossing_time(spacetime: &ShellSpacetime, r_a: f64, r_b: f64) -> Result<f64, GeodesicError> {
    Ok(null_crossing_time(spacetime, 0.0, r_a)? + null_crossing_time(spacetime, 0.0, r_b)?)
}

/// Proper time of a static observer at `r_b` when a ray sent outward at
/// proper time `tau_a` by a static observer at `r_a` arrives, both clocks
/// synchronized to read 0 at global time 0:
/// `τ_b = √f(r_b)·(τ_a/√f(r_a) + Δt_null)`.
pub fn static_exchange(r_a: f64, r_b: f64, tau_a: f64, mass: f64) -> Result<f64, GeodesicError> {
    if !(r_b > r_a && r_a > 2.0 * mass) {
        return Err(GeodesicError::RadiusOrdering { r_a, r_b, mass });
    }
    let fa = metric_factor(mass, r_a);
    let fb = metric_factor(mass, r_b);
    Ok(fb.sqrt() * (tau_a / fa.sqrt() + null_span_local(mass, r_a, r_b)?))
}

/// Proper time elapsed on a static clock at `r` over global time `t`.
pub fn static_proper_time(mass: f64, r: f64, t: f64) -> Result<f64, GeodesicError> {
    let f = metric_factor(mass, r);
    if !(f > 0.0) {
        return Err(GeodesicError::Horizon { r, horizon: 2.0 * mass });
    }
    Ok(f.sqrt() * t)
}

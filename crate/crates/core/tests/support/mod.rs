//! Independent oracles shared by the integration tests.
//!
//! The geodesic oracle integrates `dt/dr` and `dτ/dr` numerically instead of
//! using the cycloid closed forms. The switch oracle multiplies dense matrices
//! entry by entry and assembles the 2d-dimensional joint vector directly.

#![allow(dead_code)]

use num_complex::Complex64 as C64;
use shellswitch::OperatorSpec;

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to relative accuracy
/// `rel`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, rel * whole.abs(), 40)
}

pub fn metric(mass: f64, r: f64) -> f64 {
    1.0 - 2.0 * mass / r
}

/// `(Δt_local, Δτ)` for radial free fall in a Schwarzschild patch between
/// `r_a` and `r_b` on the bound path that turns at `r_apo`.
///
/// With `E² = 1 − 2μ/r_apo` and `r = r_apo − s²` the integrands
/// `dτ/ds = 2/√(2μ/(r·r_apo))` and `dt/ds = (E/f)·dτ/ds` are regular at the
/// turning point.
pub fn schwarzschild_span(mass: f64, r_apo: f64, r_a: f64, r_b: f64) -> (f64, f64) {
    let e = metric(mass, r_apo).sqrt();
    let s_of = |r: f64| (r_apo - r).max(0.0).sqrt();
    let (s0, s1) = {
        let (x, y) = (s_of(r_a), s_of(r_b));
        if x < y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let dtau = |s: f64| {
        let r = r_apo - s * s;
        2.0 / (2.0 * mass / (r * r_apo)).sqrt()
    };
    let dt = |s: f64| {
        let r = r_apo - s * s;
        e / metric(mass, r) * dtau(s)
    };
    (integrate(dt, s0, s1, 1e-12), integrate(dtau, s0, s1, 1e-12))
}

/// A patch for the oracle: mass and inner boundary (0 for the core).
#[derive(Debug, Clone, Copy)]
pub struct OraclePatch {
    pub mass: f64,
    pub r_min: f64,
}

/// Quarter oscillation `(Δt_global, Δτ)` from rest at `r_i` down to the
/// center, patch by patch. `patches` runs from the core outward.
///
/// Crossing a shell keeps the radial speed seen by static observers,
/// `u_r/√f`, continuous. Local time maps to global time through
/// `Λ_in = Λ_out·√(f_in/f_out)` at each shell.
pub fn quarter_oracle(patches: &[OraclePatch], r_i: f64) -> (f64, f64) {
    let n = patches.len();
    let mut lapse = vec![1.0; n];
    for k in (0..n - 1).rev() {
        let r = patches[k + 1].r_min;
        lapse[k] = lapse[k + 1] * (metric(patches[k].mass, r) / metric(patches[k + 1].mass, r)).sqrt();
    }
    let mut r = r_i;
    let mut u_r = 0.0f64;
    let (mut t, mut tau) = (0.0, 0.0);
    for k in (0..n).rev() {
        let p = patches[k];
        if p.mass == 0.0 {
            let u_t = (1.0 + u_r * u_r).sqrt();
            let dtau = (r - p.r_min) / u_r.abs();
            tau += dtau;
            t += lapse[k] * u_t * dtau;
        } else {
            // 1 − E² = 2μ/r − u_r², formed without cancelling against 1.
            let r_apo = if u_r == 0.0 {
                r
            } else {
                2.0 * p.mass / (2.0 * p.mass / r - u_r * u_r)
            };
            let (dt, dtau) = schwarzschild_span(p.mass, r_apo, r, p.r_min);
            tau += dtau;
            t += lapse[k] * dt;
            let rr = p.r_min;
            u_r = -(2.0 * p.mass * (r_apo - rr) / (rr * r_apo)).max(0.0).sqrt();
        }
        r = p.r_min;
        if k > 0 {
            let below = patches[k - 1].mass;
            u_r *= (metric(below, r) / metric(p.mass, r)).sqrt();
        }
    }
    (t, tau)
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Dense `A·v` from the operator's entries.
pub fn mat_vec(op: &OperatorSpec, v: &[C64]) -> Vec<C64> {
    let d = op.dim();
    (0..d)
        .map(|i| (0..d).fold(C64::new(0.0, 0.0), |acc, j| acc + op.entry(i, j) * v[j]))
        .collect()
}

/// `(|M1⟩⊗X|ψ⟩ + |M2⟩⊗Y|ψ⟩)/√2` as a 2d-vector, with `X = x[0]·x[1]·…`
/// applied right to left.
pub fn oracle_joint(m1_ops: &[&OperatorSpec], m2_ops: &[&OperatorSpec], psi: &[C64]) -> Vec<C64> {
    let apply = |ops: &[&OperatorSpec]| ops.iter().rev().fold(psi.to_vec(), |v, op| mat_vec(op, &v));
    let s = std::f64::consts::FRAC_1_SQRT_2;
    apply(m1_ops).into_iter().chain(apply(m2_ops)).map(|z| z * s).collect()
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

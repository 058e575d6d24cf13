//! Small numerical kernels shared by the propagation and search code.

/// `1 − 2μ/r`, evaluated as `(r − 2μ)/r`.
///
/// The shells of interest sit within ~1e-4 of their horizons, where the naive
/// subtraction loses most of its significant digits.
#[inline]
pub fn metric_factor(mass: f64, r: f64) -> f64 {
    if mass == 0.0 {
        1.0
    } else {
        (r - 2.0 * mass) / r
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootError {
    /// `f(lo)` and `f(hi)` have the same sign.
    NoSignChange {
        f_lo: f64,
        f_hi: f64,
    },
    /// The function returned NaN inside the bracket.
    NotFinite {
        x: f64,
    },
    IterationLimit {
        lo: f64,
        hi: f64,
    },
}

impl std::fmt::Display for RootError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootError::NoSignChange { f_lo, f_hi } => {
                write!(f, "no sign change (f(lo) = {f_lo}, f(hi) = {f_hi})")
            }
            RootError::NotFinite { x } => write!(f, "non-finite value at x = {x}"),
            RootError::IterationLimit { lo, hi } => {
                write!(f, "iteration limit reached with bracket [{lo}, {hi}]")
            }
        }
    }
}

/// Bracketed root of `f` on `[lo, hi]`: bisection, accelerated by secant
/// steps whenever the secant point falls well inside the bracket.
///
/// Never leaves the bracket. Iterates until the bracket width is at most
/// `x_tol` (`0.0` means until the bracket cannot shrink any further in
/// floating point) or an exact zero is hit. The iteration policy is fixed, so
/// identical inputs give bitwise-identical results.
pub fn bisect_secant<F>(mut f: F, lo: f64, hi: f64, x_tol: f64) -> Result<f64, RootError>
where
    F: FnMut(f64) -> f64,
{
    const MAX_ITER: usize = 400;
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.is_nan() {
        return Err(RootError::NotFinite { x: a });
    }
    if fb.is_nan() {
        return Err(RootError::NotFinite { x: b });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NoSignChange { f_lo: fa, f_hi: fb });
    }

    let mut last_width = b - a;
    for _ in 0..MAX_ITER {
        let width = b - a;
        let mid = a + 0.5 * width;
        if width <= x_tol || mid <= a || mid >= b {
            return Ok(if fa.abs() <= fb.abs() { a } else { b });
        }
        // Secant only when the previous step at least halved the bracket.
        let mut x = mid;
        if width <= 0.5 * last_width || last_width == width {
            let s = b - fb * (b - a) / (fb - fa);
            let margin = 0.01 * width;
            if s.is_finite() && s > a + margin && s < b - margin {
                x = s;
            }
        }
        last_width = width;
        let fx = f(x);
        if fx.is_nan() {
            return Err(RootError::NotFinite { x });
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Err(RootError::IterationLimit { lo: a, hi: b })
}

/// Plain bisection for a monotone `f` with a known sign change; stops when the
/// bracket is narrower than `x_tol`.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, x_tol: f64) -> Result<f64, RootError>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() {
        return Err(RootError::NotFinite {
            x: if fa.is_nan() { a } else { b },
        });
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NoSignChange { f_lo: fa, f_hi: fb });
    }
    let sa = fa.signum();
    for _ in 0..200 {
        let mid = a + 0.5 * (b - a);
        if b - a <= x_tol || mid <= a || mid >= b {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(a + 0.5 * (b - a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_factor_matches_naive_form_far_from_horizon() {
        assert_eq!(metric_factor(0.0, 5.0), 1.0);
        assert!((metric_factor(3.0, 12.0) - 0.5).abs() < 1e-16);
    }

    #[test]
    fn metric_factor_keeps_digits_near_horizon() {
        let r = 6.00057;
        let f = metric_factor(3.0, r);
        assert!((f - 0.00057 / 6.00057).abs() / f < 1e-11);
    }

    #[test]
    fn bisect_secant_finds_sqrt_two() {
        let root = bisect_secant(|x| x * x - 2.0, 0.0, 2.0, 0.0).unwrap();
        assert!((root - 2f64.sqrt()).abs() < 4e-16);
    }

    #[test]
    fn bisect_secant_handles_steep_log() {
        // Root of a log singularity near the left end, similar to the
        // near-horizon contour.
        let g = |x: f64| (x - 1e-6).ln() + 5.0;
        let root = bisect_secant(g, 1e-6 + 1e-12, 1.0, 0.0).unwrap();
        assert!((root - (1e-6 + (-5f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn bisect_secant_rejects_missing_bracket() {
        let err = bisect_secant(|x| x * x + 1.0, -1.0, 1.0, 0.0).unwrap_err();
        assert!(matches!(err, RootError::NoSignChange { .. }));
    }

    #[test]
    fn bisect_secant_is_deterministic() {
        let f = |x: f64| x.cos() - x;
        let a = bisect_secant(f, 0.0, 1.0, 0.0).unwrap();
        let b = bisect_secant(f, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn bisect_reaches_tolerance() {
        let root = bisect(|x| x.powi(3) - 0.125, 0.0, 1.0, 1e-12).unwrap();
        assert!((root - 0.5).abs() < 1e-12);
    }
}

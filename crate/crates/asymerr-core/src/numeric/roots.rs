use libm::fabs;

use crate::{Error, Result};

/// Result of a bracketing root search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketedRoot {
    /// Final bracket; `f` changes sign (or vanishes) on `[lo, hi]`.
    pub lo: f64,
    pub hi: f64,
    /// Best estimate of the root.
    pub value: f64,
    /// `f(value)`.
    pub residual: f64,
}

const MAX_ITER: usize = 300;

/// Finds a root of `f` on `[lo, hi]` by bisection accelerated with secant
/// steps. A secant step that leaves the current bracket is replaced by a
/// bisection, and a step that fails to halve the bracket is followed by
/// one. `f` is never
/// evaluated outside `[lo, hi]`.
///
/// Converges when the bracket is narrower than `tol` (absolute) or `f`
/// vanishes exactly.
///
/// # Errors
/// [`Error::NoSignChange`] when `f(lo)` and `f(hi)` have the same sign,
/// [`Error::NonConvergent`] if the iteration budget runs out.
pub fn find_root<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<BracketedRoot> {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(BracketedRoot { lo: a, hi: a, value: a, residual: 0.0 });
    }
    if fb == 0.0 {
        return Ok(BracketedRoot { lo: b, hi: b, value: b, residual: 0.0 });
    }
    if fa.is_nan() || fb.is_nan() || (fa > 0.0) == (fb > 0.0) {
        return Err(Error::NoSignChange { lo: a, f_lo: fa, hi: b, f_hi: fb });
    }
    for _ in 0..MAX_ITER {
        let width = b - a;
        if width <= tol || width <= 4.0 * f64::EPSILON * fabs(a).max(fabs(b)) {
            let (value, residual) = if fabs(fa) < fabs(fb) { (a, fa) } else { (b, fb) };
            return Ok(BracketedRoot { lo: a, hi: b, value, residual });
        }
        let mid = a + 0.5 * width;
        let secant = b - fb * (b - a) / (fb - fa);
        let x = if secant > a && secant < b {
            // Nudge away from the endpoints so the bracket always shrinks.
            let guard = 0.25 * tol.min(0.5 * width);
            secant.clamp(a + guard, b - guard)
        } else {
            mid
        };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(BracketedRoot { lo: x, hi: x, value: x, residual: 0.0 });
        }
        if fx.is_nan() {
            return Err(Error::Domain { what: "function value in root search", value: x });
        }
        if (fx > 0.0) == (fa > 0.0) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        // Take a plain bisection every other step if secant steps are only
        // nibbling at one end.
        if b - a > 0.5 * width {
            let m = a + 0.5 * (b - a);
            let fm = f(m);
            if fm == 0.0 {
                return Ok(BracketedRoot { lo: m, hi: m, value: m, residual: 0.0 });
            }
            if (fm > 0.0) == (fa > 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
    }
    Err(Error::NonConvergent { what: "bracketed root search", iterations: MAX_ITER })
}

/// [`find_root`] with the default tolerance scaled by the bracket width.
pub fn find_root_default<F: FnMut(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<BracketedRoot> {
    find_root(f, lo, hi, super::ROOT_TOL * fabs(hi - lo).max(1e-300))
}

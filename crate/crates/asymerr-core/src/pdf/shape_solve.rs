use libm::fabs;

use crate::numeric::find_root;
use crate::{Error, Result};

/// Inverts a non-decreasing distribution function by bracketing outwards
/// from `guess` in steps of `scale`, then bisecting.
pub(crate) fn invert_cdf<F: Fn(f64) -> f64>(cdf: F, p: f64, guess: f64, scale: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain { what: "probability", value: p });
    }
    let mut lo = guess - scale;
    let mut hi = guess + scale;
    let mut step = scale;
    for _ in 0..200 {
        if cdf(lo) <= p {
            break;
        }
        step *= 2.0;
        lo -= step;
    }
    step = scale;
    for _ in 0..200 {
        if cdf(hi) >= p {
            break;
        }
        step *= 2.0;
        hi += step;
    }
    let r = find_root(|x| cdf(x) - p, lo, hi, 1e-14 * scale.max(fabs(guess) * 1e-3))?;
    Ok(r.value)
}

/// Solves `f(A) = target` for a shape parameter on `[lo, hi]`. The range is
/// scanned on a grid and the sign change nearest to `origin` is refined.
/// Grid points where `f` fails are skipped. Returns `None` when no sign
/// change exists.
pub(crate) fn solve_shape<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    target: f64,
    lo: f64,
    hi: f64,
    origin: f64,
    steps: usize,
) -> Result<Option<f64>> {
    let mut pts: alloc::vec::Vec<(f64, f64)> = alloc::vec::Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let a = lo + (hi - lo) * i as f64 / steps as f64;
        if let Ok(v) = f(a) {
            if v.is_finite() {
                pts.push((a, v - target));
            }
        }
    }
    let mut best: Option<(f64, f64)> = None;
    for w in pts.windows(2) {
        let ((a0, f0), (a1, f1)) = (w[0], w[1]);
        if f0 == 0.0 {
            return Ok(Some(a0));
        }
        if (f0 < 0.0) != (f1 < 0.0) || f1 == 0.0 {
            let d = fabs(0.5 * (a0 + a1) - origin);
            if best.is_none_or(|(b0, b1)| d < fabs(0.5 * (b0 + b1) - origin)) {
                best = Some((a0, a1));
            }
        }
    }
    let Some((a0, a1)) = best else { return Ok(None) };
    let mut failure = None;
    let r = find_root(
        |a| match f(a) {
            Ok(v) => v - target,
            Err(e) => {
                failure = Some(e);
                f64::NAN
            }
        },
        a0,
        a1,
        1e-14 * (hi - lo),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Some(r?.value))
}

use libm::fabs;

use crate::{Error, Result};

/// Location and value of a maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
}

/// Maximizes a unimodal `f` on `[lo, hi]` by golden-section search with
/// parabolic interpolation (Brent's method), to an absolute tolerance `tol`
/// on the argument.
pub fn maximize<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Maximum {
    const CGOLD: f64 = 0.381_966_011_250_105_1;
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut x = a + CGOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = -f(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..500 {
        let xm = 0.5 * (a + b);
        let tol1 = 1e-12 * fabs(x) + tol / 3.0;
        let tol2 = 2.0 * tol1;
        if fabs(x - xm) <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if fabs(e) > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = fabs(q);
            let etemp = e;
            e = d;
            if fabs(p) < fabs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if fabs(d) >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = -f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Maximum { x, value: -fx }
}

/// Iterates `x ← (1−λ)·x + λ·g(x)` until successive iterates differ by less
/// than `tol·max(1, |x|)`. The damping `λ` starts at one and is halved each
/// time the step changes sign while growing (an oscillation).
///
/// # Errors
/// [`Error::NonConvergent`] after `max_iter` steps or on a non-finite iterate.
pub fn fixed_point<G: FnMut(f64) -> f64>(
    mut g: G,
    x0: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut x = x0;
    let mut lambda = 1.0;
    let mut last_step = 0.0;
    for _ in 0..max_iter {
        let target = g(x);
        if !target.is_finite() {
            break;
        }
        let step = lambda * (target - x);
        if step * last_step < 0.0 && fabs(step) > 0.5 * fabs(last_step) {
            lambda *= 0.5;
        }
        let next = x + step;
        if fabs(next - x) <= tol * fabs(next).max(1.0) {
            return Ok(next);
        }
        last_step = step;
        x = next;
    }
    Err(Error::NonConvergent { what: "fixed-point iteration", iterations: max_iter })
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola_peak() {
        let m = maximize(|x| -(x - 1.3) * (x - 1.3) + 2.0, -5.0, 5.0, 1e-10);
        assert!((m.x - 1.3).abs() < 1e-8);
        assert!((m.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn boundary_peak() {
        let m = maximize(|x| x, 0.0, 1.0, 1e-10);
        assert!(m.x > 1.0 - 1e-8);
    }

    #[test]
    fn cosine_fixed_point() {
        let x = fixed_point(libm::cos, 1.0, 1e-13, 200).unwrap();
        assert!((x - 0.739_085_133_215_160_6).abs() < 1e-12);
    }

    #[test]
    fn oscillation_is_damped() {
        // g has slope −1.5 at its fixed point 1: plain iteration diverges.
        let x = fixed_point(|x| 1.0 - 1.5 * (x - 1.0), 0.0, 1e-12, 200).unwrap();
        assert!((x - 1.0).abs() < 1e-10);
    }
}

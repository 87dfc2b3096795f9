//! Cubic core with parabolic tails whose curvature is held between
//! `1/(κσ_wide²)` and `κ/σ_narrow²`.

use alloc::vec;
use core::fmt;
use libm::{fabs, sqrt};

use super::piecewise::{tail, value_slope, Piecewise};
use super::poly::broken_parabola;
use crate::{Error, Result};

/// Curvature ratio of the conservative spline.
///
/// Every choice is capped at the largest `κ` for which the joins stay inside
/// `[−σ⁻, σ⁺]`; near-symmetric errors therefore give a curve close to the
/// parabola whatever `κ` is asked for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kappa {
    /// A given `κ ≥ 1`.
    Exact(f64),
    /// `κ = (1 + l)²`, the form the usual comparison tables quote as `l`.
    Stretch(f64),
    /// The largest admissible `κ`.
    Max,
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::Exact(k) => write!(f, "kappa={k}"),
            Kappa::Stretch(l) => write!(f, "stretch={l}"),
            Kappa::Max => f.write_str("max"),
        }
    }
}

impl Kappa {
    fn requested(&self) -> Result<f64> {
        match *self {
            Kappa::Exact(k) if k >= 1.0 => Ok(k),
            Kappa::Exact(k) => Err(Error::InvalidParameter { what: "kappa (must be at least 1)", value: k }),
            Kappa::Stretch(l) if l >= 0.0 => Ok((1.0 + l) * (1.0 + l)),
            Kappa::Stretch(l) => Err(Error::InvalidParameter { what: "kappa stretch", value: l }),
            Kappa::Max => Ok(f64::INFINITY),
        }
    }
}

/// The spline with its narrow error `n` on the positive side and wide error
/// `w` on the negative side.
struct Oriented {
    n: f64,
    w: f64,
}

impl Oriented {
    fn curvatures(&self, kappa: f64) -> (f64, f64) {
        (-1.0 / (kappa * self.w * self.w), -kappa / (self.n * self.n))
    }

    fn core(&self, kappa: f64, al: f64, ar: f64) -> (f64, f64) {
        let (cl, cr) = self.curvatures(kappa);
        let alpha = (cr - cl) / (6.0 * (ar - al));
        let beta = 0.5 * (cr - 6.0 * alpha * ar);
        (alpha, beta)
    }

    /// Anchor residuals. Past a join the tail is the core's second-order
    /// Taylor expansion, which differs from the core by `α(x − join)³`.
    fn residual(&self, kappa: f64, al: f64, ar: f64) -> [f64; 2] {
        let (alpha, beta) = self.core(kappa, al, ar);
        let f = |t: f64| alpha * t * t * t + beta * t * t;
        let dr = self.n - ar;
        let dl = -self.w - al;
        [f(self.n) - alpha * dr * dr * dr + 0.5, f(-self.w) - alpha * dl * dl * dl + 0.5]
    }

    /// Damped Newton solve for the joins `(a_left, a_right)`.
    fn solve(&self, kappa: f64, guess: (f64, f64)) -> Option<(f64, f64)> {
        let norm = |r: [f64; 2]| fabs(r[0]).max(fabs(r[1]));
        let ok = |al: f64, ar: f64| al < 0.0 && ar > 0.0 && al.is_finite() && ar.is_finite();
        let (mut al, mut ar) = guess;
        let mut r = self.residual(kappa, al, ar);
        for _ in 0..100 {
            if norm(r) < 1e-14 {
                return Some((al, ar));
            }
            let h = 1e-7 * self.n;
            let rl = self.residual(kappa, al + h, ar);
            let rl2 = self.residual(kappa, al - h, ar);
            let rr = self.residual(kappa, al, ar + h);
            let rr2 = self.residual(kappa, al, ar - h);
            let j = [
                [(rl[0] - rl2[0]) / (2.0 * h), (rr[0] - rr2[0]) / (2.0 * h)],
                [(rl[1] - rl2[1]) / (2.0 * h), (rr[1] - rr2[1]) / (2.0 * h)],
            ];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let dl = (-r[0] * j[1][1] + r[1] * j[0][1]) / det;
            let dr = (-r[1] * j[0][0] + r[0] * j[1][0]) / det;
            let mut t = 1.0;
            loop {
                let (nl, nr) = (al + t * dl, ar + t * dr);
                if ok(nl, nr) {
                    let nr_res = self.residual(kappa, nl, nr);
                    if norm(nr_res) < norm(r) {
                        al = nl;
                        ar = nr;
                        r = nr_res;
                        break;
                    }
                }
                t *= 0.5;
                if t < 1e-8 {
                    return if norm(r) < 1e-11 { Some((al, ar)) } else { None };
                }
            }
        }
        if norm(r) < 1e-11 {
            Some((al, ar))
        } else {
            None
        }
    }

    fn default_guess(&self, kappa: f64) -> (f64, f64) {
        let e = sqrt(kappa - 1.0);
        (-self.w * e, self.n * e)
    }

    /// How far past its error point the furthest join lies, relative to it.
    fn overshoot(&self, joins: (f64, f64)) -> f64 {
        (joins.1 / self.n).max(-joins.0 / self.w) - 1.0
    }

    /// The largest admissible `κ` and its joins.
    fn kappa_max(&self) -> Result<(f64, (f64, f64))> {
        let mut lo = (1.0, (0.0, 0.0));
        let mut hi = None;
        let mut e = 1e-4;
        while e < 1e4 {
            let k = 1.0 + e;
            let guess = if lo.0 > 1.0 { scale_guess(lo.1, lo.0, k) } else { self.default_guess(k) };
            match self.solve(k, guess) {
                Some(j) if self.overshoot(j) < 0.0 => lo = (k, j),
                _ => {
                    hi = Some(k);
                    break;
                }
            }
            e *= 2.0;
        }
        let mut hi = hi.ok_or(Error::NonConvergent { what: "conservative spline kappa bracket", iterations: 27 })?;
        for _ in 0..80 {
            if hi - lo.0 < 1e-13 * hi {
                break;
            }
            let k = 0.5 * (lo.0 + hi);
            let guess = if lo.0 > 1.0 { lo.1 } else { self.default_guess(k) };
            match self.solve(k, guess) {
                Some(j) if self.overshoot(j) < 0.0 => lo = (k, j),
                _ => hi = k,
            }
        }
        if lo.0 == 1.0 {
            return Err(Error::NonConvergent { what: "conservative spline kappa", iterations: 80 });
        }
        Ok(lo)
    }
}

/// Rescales joins found at `k0` as a starting point for `k1`.
fn scale_guess(j: (f64, f64), k0: f64, k1: f64) -> (f64, f64) {
    let s = (k1 - 1.0) / (k0 - 1.0);
    let s = s.min(2.0);
    (j.0 * s, j.1 * s)
}

pub(super) fn conservative_spline(sp: f64, sm: f64, kappa: Kappa) -> Result<Piecewise> {
    let requested = kappa.requested()?;
    let mirror = sp > sm;
    let o = if mirror { Oriented { n: sm, w: sp } } else { Oriented { n: sp, w: sm } };
    if requested == 1.0 || fabs(sp - sm) <= 1e-12 * (sp + sm) {
        return Ok(broken_parabola(sp, sm).with_params(vec![("kappa", 1.0), ("a_left", 0.0), ("a_right", 0.0)]));
    }
    let (kmax, jmax) = o.kappa_max()?;
    let (k, (al, ar)) = if requested >= kmax {
        (kmax, jmax)
    } else {
        let j = o.solve(requested, o.default_guess(requested));
        let j = match j {
            Some(j) => j,
            None => o
                .solve(requested, scale_guess(jmax, kmax, requested))
                .ok_or(Error::NonConvergent { what: "conservative spline joins", iterations: 100 })?,
        };
        (requested, j)
    };
    let (alpha, beta) = o.core(k, al, ar);
    let (cl, cr) = o.curvatures(k);
    let core = vec![0.0, 0.0, beta, alpha];
    let (vl, dl) = value_slope(&core, al);
    let (vr, dr) = value_slope(&core, ar);
    let p = Piecewise::new(vec![al, ar], vec![tail(al, vl, dl, cl), core, tail(ar, vr, dr, cr)]);
    let (p, al, ar, alpha, beta) = if mirror { (p.mirrored(), -ar, -al, -alpha, beta) } else { (p, al, ar, alpha, beta) };
    Ok(p.with_params(vec![("kappa", k), ("a_left", al), ("a_right", ar), ("alpha", alpha), ("beta", beta)]))
}

//! Curves given by the log of a skewed density, located and scaled so that
//! the peak sits at `â` with the requested errors.

use alloc::vec;
use alloc::vec::Vec;
use libm::{exp, fabs, log, sqrt};

use super::half_crossings;
use crate::numeric::{find_root, ln_gauss_cdf, maximize, INV_SQRT_2PI};
use crate::pdf::shape_solve::solve_shape;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    /// `−z²/2 + ln(1 + α(z³ − 3z))`, `|α| < ½`.
    Edgeworth,
    /// `−z²/2 + ln Φ(αz)`.
    SkewNormal,
}

/// Edgeworth shapes beyond this `|α|` are not used; at `½` the correction
/// term touches zero at `z = ±1`.
const EDGEWORTH_ALPHA_LIMIT: f64 = 0.5 - 1e-9;

#[derive(Debug, Clone, Copy)]
pub(super) struct ShapeCurve {
    kind: Kind,
    alpha: f64,
    /// Location of `z = 0` relative to `â`.
    x0: f64,
    scale: f64,
    /// Unit curve value at its peak.
    top: f64,
    /// Lower edge of the unit domain for `α ≥ 0` (mirrored for `α < 0`).
    z_edge: f64,
}

/// The real root of `1 + α(z³ − 3z)` below `−2`, for `0 < α < ½`.
fn edgeworth_edge(alpha: f64) -> f64 {
    if alpha <= 0.0 {
        return f64::NEG_INFINITY;
    }
    let p = |z: f64| 1.0 + alpha * (z * z * z - 3.0 * z);
    let mut lo = -2.0;
    while p(lo) > 0.0 {
        lo *= 2.0;
    }
    find_root(p, lo, -2.0, 1e-15).map(|r| r.value).unwrap_or(lo)
}

fn unit(kind: Kind, alpha: f64, z: f64) -> f64 {
    match kind {
        Kind::Edgeworth => {
            let w = 1.0 + alpha * (z * z * z - 3.0 * z);
            if w > 0.0 {
                -0.5 * z * z + log(w)
            } else {
                f64::NEG_INFINITY
            }
        }
        Kind::SkewNormal => -0.5 * z * z + ln_gauss_cdf(alpha * z),
    }
}

fn unit_slope(kind: Kind, alpha: f64, z: f64) -> f64 {
    match kind {
        Kind::Edgeworth => {
            let w = 1.0 + alpha * (z * z * z - 3.0 * z);
            -z + alpha * (3.0 * z * z - 3.0) / w
        }
        Kind::SkewNormal => {
            let u = alpha * z;
            // φ(u)/Φ(u) through logs, finite deep in the lower tail.
            let mills = exp(-0.5 * u * u + log(INV_SQRT_2PI) - ln_gauss_cdf(u));
            -z + alpha * mills
        }
    }
}

/// Unit-scale geometry: `(z_peak, top, σ⁺, σ⁻)`.
fn geometry(kind: Kind, alpha: f64) -> Result<(f64, f64, f64, f64)> {
    let edge = match kind {
        Kind::Edgeworth if alpha > 0.0 => (edgeworth_edge(alpha), f64::INFINITY),
        Kind::Edgeworth if alpha < 0.0 => (f64::NEG_INFINITY, -edgeworth_edge(-alpha)),
        _ => (f64::NEG_INFINITY, f64::INFINITY),
    };
    let lo = edge.0.max(-4.0) + 1e-9;
    let hi = edge.1.min(4.0) - 1e-9;
    let m = maximize(|z| unit(kind, alpha, z), lo, hi, 1e-12);
    // The maximizer only pins the location to about √ε; polish on the slope.
    let (a, b) = ((m.x - 1e-4).max(lo), (m.x + 1e-4).min(hi));
    let zp = find_root(|z| unit_slope(kind, alpha, z), a, b, 1e-15).map_or(m.x, |r| r.value);
    let m = crate::numeric::Maximum { x: zp, value: unit(kind, alpha, zp) };
    let f = |z: f64| if z > edge.0 && z < edge.1 { unit(kind, alpha, z) } else { f64::NEG_INFINITY };
    let (up, dn) = half_crossings(f, m.x, 1.0, edge)?;
    Ok((m.x, m.value, up, dn))
}

fn asymmetry(kind: Kind, alpha: f64) -> Result<f64> {
    let (_, _, up, dn) = geometry(kind, alpha)?;
    Ok((up - dn) / (up + dn))
}

/// True when the unit curve has a single turning point.
fn unimodal(kind: Kind, alpha: f64, z_lo: f64, z_hi: f64) -> bool {
    let n = 4000;
    let mut changes = 0;
    let mut last = 0.0f64;
    for i in 0..=n {
        let z = z_lo + (z_hi - z_lo) * i as f64 / n as f64;
        let s = unit_slope(kind, alpha, z);
        if !s.is_finite() {
            continue;
        }
        if last != 0.0 && s != 0.0 && (s > 0.0) != (last > 0.0) {
            changes += 1;
        }
        if s != 0.0 {
            last = s;
        }
    }
    changes == 1
}

impl ShapeCurve {
    fn build(kind: Kind, sp: f64, sm: f64, name: &'static str) -> Result<Self> {
        let target = (sp - sm) / (sp + sm);
        // Shape parameter as a function of a bounded variable v ≥ 0.
        let alpha_of = |v: f64| match kind {
            Kind::Edgeworth => v,
            Kind::SkewNormal => v / sqrt(1.0 - v * v),
        };
        let v_max = match kind {
            Kind::Edgeworth => EDGEWORTH_ALPHA_LIMIT,
            Kind::SkewNormal => 1.0 - 1e-12,
        };
        let sign = asymmetry(kind, alpha_of(1e-3))?.signum();
        let alpha = if target == 0.0 {
            0.0
        } else {
            let want = fabs(target);
            let found = solve_shape(|v| Ok(fabs(asymmetry(kind, sign * alpha_of(v))?)), want, 0.0, v_max, 0.0, 64)?;
            match found {
                Some(v) => sign * target.signum() * alpha_of(v),
                None => {
                    let mut bound = 0.0f64;
                    for i in 1..=64 {
                        let v = v_max * i as f64 / 64.0;
                        if let Ok(a) = asymmetry(kind, alpha_of(v)) {
                            bound = bound.max(fabs(a));
                        }
                    }
                    return Err(Error::UnrepresentableAsymmetry {
                        family: name,
                        measure: "|A| = |σ⁺−σ⁻|/(σ⁺+σ⁻)",
                        value: want,
                        bound,
                    });
                }
            }
        };
        let (zp, top, up, dn) = geometry(kind, alpha)?;
        let z_edge = if kind == Kind::Edgeworth { edgeworth_edge(fabs(alpha)) } else { f64::NEG_INFINITY };
        let (zl, zh) = if alpha >= 0.0 { (z_edge.max(-12.0) + 1e-6, 12.0) } else { (-12.0, (-z_edge).min(12.0) - 1e-6) };
        if !unimodal(kind, alpha, zl, zh) {
            return Err(Error::UnrepresentableAsymmetry {
                family: name,
                measure: "|A| for a single maximum",
                value: fabs(target),
                bound: fabs(target),
            });
        }
        let scale = (sp + sm) / (up + dn);
        Ok(Self { kind, alpha, x0: -scale * zp, scale, top, z_edge })
    }

    pub(super) fn edgeworth(sp: f64, sm: f64) -> Result<Self> {
        Self::build(Kind::Edgeworth, sp, sm, "edgeworth")
    }

    pub(super) fn skew_normal(sp: f64, sm: f64) -> Result<Self> {
        Self::build(Kind::SkewNormal, sp, sm, "skew-normal")
    }

    pub(super) fn value(&self, x: f64) -> f64 {
        unit(self.kind, self.alpha, (x - self.x0) / self.scale) - self.top
    }

    pub(super) fn slope(&self, x: f64) -> f64 {
        unit_slope(self.kind, self.alpha, (x - self.x0) / self.scale) / self.scale
    }

    pub(super) fn domain(&self) -> (f64, f64) {
        if self.kind == Kind::Edgeworth && self.alpha != 0.0 {
            let e = self.x0 + self.scale * self.z_edge * self.alpha.signum();
            if self.alpha > 0.0 {
                (e, f64::INFINITY)
            } else {
                (f64::NEG_INFINITY, e)
            }
        } else {
            (f64::NEG_INFINITY, f64::INFINITY)
        }
    }

    pub(super) fn params(&self) -> Vec<(&'static str, f64)> {
        let loc = match self.kind {
            Kind::Edgeworth => "a0",
            Kind::SkewNormal => "xi",
        };
        let width = match self.kind {
            Kind::Edgeworth => "sigma",
            Kind::SkewNormal => "omega",
        };
        vec![(loc, self.x0), (width, self.scale), ("alpha", self.alpha)]
    }
}

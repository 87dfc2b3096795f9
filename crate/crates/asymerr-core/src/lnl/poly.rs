//! Polynomial curves and polynomial cores with parabolic tails.

use alloc::vec;
use alloc::vec::Vec;
use libm::{fabs, pow, sqrt};

use super::piecewise::{tail, value_slope, Piecewise};
use crate::{Error, Result};

/// `(1 + 12^{1/4} + √3)/2`, beyond which the constrained quartic has no
/// real solution.
pub(super) const CONSTRAINED_QUARTIC_BOUND: f64 = 2.296_630_262_886_538;

fn parabola(s: f64) -> Vec<f64> {
    vec![0.0, 0.0, -0.5 / (s * s)]
}

pub(super) fn broken_parabola(sp: f64, sm: f64) -> Piecewise {
    Piecewise::new(vec![0.0], vec![parabola(sm), parabola(sp)])
}

/// `−½(αx² + βx³)`, defined up to the turning point `x = −2α/(3β)`.
pub(super) fn cubic(sp: f64, sm: f64) -> Piecewise {
    let d = sp * sp * sm * sm * (sp + sm);
    let alpha = (sp * sp * sp + sm * sm * sm) / d;
    let beta = (sm * sm - sp * sp) / d;
    let p = Piecewise::new(vec![], vec![vec![0.0, 0.0, -0.5 * alpha, -0.5 * beta]]);
    let p = if beta > 0.0 {
        p.with_domain(-2.0 * alpha / (3.0 * beta), f64::INFINITY)
    } else if beta < 0.0 {
        p.with_domain(f64::NEG_INFINITY, -2.0 * alpha / (3.0 * beta))
    } else {
        p
    };
    p.with_params(vec![("alpha", alpha), ("beta", beta)])
}

/// `ln L'' = −½(α + βx)²`.
pub(super) fn constrained_quartic(sp: f64, sm: f64) -> Result<Piecewise> {
    let inner = 4.0 * sp * sm * sm * sm + 4.0 * sm * sp * sp * sp - 2.0 * pow(sp, 4.0) - 2.0 * pow(sm, 4.0);
    // 12((σ⁺+σ⁻)² − 2√inner), rationalized so near-symmetric errors do not cancel.
    let d = sp - sm;
    let num = 12.0 * d * d * (9.0 * sp * sp + 6.0 * sp * sm + 9.0 * sm * sm)
        / ((sp + sm) * (sp + sm) + 2.0 * sqrt(inner.max(0.0)));
    let den = 3.0 * sm * sm + 2.0 * sp * sm + 3.0 * sp * sp;
    let b = sqrt((num / den).max(0.0)) / (sp * sm);
    let residual = |a: f64, b: f64| {
        let r1 = a * a * sp * sp / 2.0 + a * b * pow(sp, 3.0) / 3.0 + b * b * pow(sp, 4.0) / 12.0 - 1.0;
        let r2 = a * a * sm * sm / 2.0 - a * b * pow(sm, 3.0) / 3.0 + b * b * pow(sm, 4.0) / 12.0 - 1.0;
        fabs(r1).max(fabs(r2))
    };
    // The common root of the two anchor conditions, with α > 0.
    let mut best: Option<(f64, f64, f64)> = None;
    for beta in [b, -b] {
        for (s, sign) in [(sp, -1.0), (sm, 1.0)] {
            let root = sqrt((72.0 - 2.0 * beta * beta * pow(s, 4.0)).max(0.0)) / (6.0 * s);
            for pm in [1.0, -1.0] {
                let alpha = sign * beta * s / 3.0 + pm * root;
                if alpha <= 0.0 {
                    continue;
                }
                let r = residual(alpha, beta);
                if best.is_none_or(|(_, _, rb)| r < rb) {
                    best = Some((alpha, beta, r));
                }
            }
        }
    }
    let (alpha, beta, r) = best.ok_or(Error::NonConvergent { what: "constrained quartic", iterations: 0 })?;
    if r > 1e-9 {
        return Err(Error::NonConvergent { what: "constrained quartic", iterations: 0 });
    }
    let c = vec![0.0, 0.0, -alpha * alpha / 4.0, -alpha * beta / 6.0, -beta * beta / 24.0];
    Ok(Piecewise::new(vec![], vec![c]).with_params(vec![("alpha", alpha), ("beta", beta)]))
}

/// `−½(αx⁴ + βx³ + γx²)`, the quartic closest to the broken parabola.
pub(super) fn molded_quartic(sp: f64, sm: f64) -> Piecewise {
    let (m, p) = (sm, sp);
    let pw = |x: f64, k: i32| pow(x, k as f64);
    let eta = 2.0 * m * m * p * p * pw(m + p, 4)
        * (5.0 * pw(m, 4) - 10.0 * pw(m, 3) * p + 12.0 * m * m * p * p - 10.0 * m * pw(p, 3) + 5.0 * pw(p, 4));
    let alpha = 3.0 * (m - p) * (m - p)
        * (5.0 * pw(m, 6) + 8.0 * pw(m, 5) * p + 5.0 * pw(m, 4) * p * p + 8.0 * pw(m, 3) * pw(p, 3)
            + 5.0 * m * m * pw(p, 4) + 8.0 * m * pw(p, 5) + 5.0 * pw(p, 6))
        / eta;
    let beta = (m - p)
        * (25.0 * (pw(m, 8) + pw(p, 8))
            + 14.0 * (pw(m, 7) * p - pw(m, 6) * p * p + pw(m, 5) * pw(p, 3) - pw(m, 4) * pw(p, 4)
                + pw(m, 3) * pw(p, 5) - m * m * pw(p, 6) + m * pw(p, 7)))
        / eta;
    let gamma = (10.0 * pw(m, 10) - 5.0 * pw(m, 9) * p + 30.0 * pw(m, 7) * pw(p, 3) - 6.0 * pw(m, 6) * pw(p, 4)
        + 6.0 * pw(m, 5) * pw(p, 5) - 6.0 * pw(m, 4) * pw(p, 6) + 30.0 * pw(m, 3) * pw(p, 7) - 5.0 * m * pw(p, 9)
        + 10.0 * pw(p, 10))
        / eta;
    Piecewise::new(vec![], vec![vec![0.0, 0.0, -0.5 * gamma, -0.5 * beta, -0.5 * alpha]])
        .with_params(vec![("alpha", alpha), ("beta", beta), ("gamma", gamma)])
}

/// Core polynomial on `[−σ⁻, σ⁺]` with tails that continue its value and
/// slope at curvature `−1/σ²`.
fn with_tails(core: Vec<f64>, sp: f64, sm: f64) -> Piecewise {
    let (vl, dl) = value_slope(&core, -sm);
    let (vr, dr) = value_slope(&core, sp);
    let left = tail(-sm, vl, dl, -1.0 / (sm * sm));
    let right = tail(sp, vr, dr, -1.0 / (sp * sp));
    Piecewise::new(vec![-sm, sp], vec![left, core, right])
}

pub(super) fn matched_quintic(sp: f64, sm: f64) -> Piecewise {
    let (m, p) = (sm, sp);
    let eta = m * m * p * p * (8.0 * m * m + 19.0 * m * p + 8.0 * p * p);
    let alpha = -10.0 * (m - p) / eta;
    let beta = -18.0 * (m - p) * (m - p) / eta;
    let gamma = 45.0 * m * p * (m - p) / eta;
    let delta = (8.0 * pow(m, 4.0) + 19.0 * pow(m, 3.0) * p - 19.0 * m * m * p * p + 19.0 * m * pow(p, 3.0)
        + 8.0 * pow(p, 4.0))
        / eta;
    let core = vec![0.0, 0.0, -0.5 * delta, -0.5 * gamma, -0.5 * beta, -0.5 * alpha];
    with_tails(core, sp, sm).with_params(vec![("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)])
}

pub(super) fn interpolated_7th(sp: f64, sm: f64) -> Piecewise {
    let (m, p) = (sm, sp);
    let d = m - p;
    let eta = m * m * p * p * pow(m + p, 4.0);
    let alpha = 6.0 * d / eta;
    let beta = 15.0 * d * d / eta;
    let gamma = 10.0 * d * (m * m - 4.0 * m * p + p * p) / eta;
    let delta = -30.0 * m * p * d * d / eta;
    let epsilon = 30.0 * m * m * p * p * d / eta;
    let zeta = (pow(m, 6.0) + 4.0 * pow(m, 5.0) * p + 6.0 * pow(m, 4.0) * p * p - 6.0 * pow(m, 3.0) * pow(p, 3.0)
        + 6.0 * m * m * pow(p, 4.0) + 4.0 * m * pow(p, 5.0) + pow(p, 6.0))
        / eta;
    let core = vec![0.0, 0.0, -0.5 * zeta, -0.5 * epsilon, -0.5 * delta, -0.5 * gamma, -0.5 * beta, -0.5 * alpha];
    Piecewise::new(vec![-sm, sp], vec![parabola(sm), core, parabola(sp)]).with_params(vec![
        ("alpha", alpha),
        ("beta", beta),
        ("gamma", gamma),
        ("delta", delta),
        ("epsilon", epsilon),
        ("zeta", zeta),
    ])
}

pub(super) fn simple_sigma0(sp: f64, sm: f64) -> f64 {
    sqrt(sp * sm)
}

pub(super) fn molded_sigma0(sp: f64, sm: f64) -> f64 {
    sqrt((pow(sm, 4.0) + pow(sp, 4.0)) / (sm * sm + sp * sp))
}

/// Quartic half `−x²/(2σ₀²) + c₃x³ + c₄x⁴` reaching `−½` at the signed
/// error `s` with curvature `−1/s²` there.
fn quartic_half(s: f64, s0: f64) -> Vec<f64> {
    let r = s * s / (s0 * s0);
    let y4 = (1.0 - r) / 3.0;
    let y3 = -0.5 + 0.5 * r - y4;
    vec![0.0, 0.0, -0.5 / (s0 * s0), y3 / pow(s, 3.0), y4 / pow(s, 4.0)]
}

/// Quintic half that also has slope `−1/s` at `s`.
fn quintic_half(s: f64, s0: f64) -> Vec<f64> {
    let r = s * s / (s0 * s0);
    let (r0, r1, r2) = (-0.5 + 0.5 * r, -1.0 + r, -1.0 + r);
    let y3 = (20.0 * r0 - 8.0 * r1 + r2) / 2.0;
    let y4 = (-30.0 * r0 + 14.0 * r1 - 2.0 * r2) / 2.0;
    let y5 = (12.0 * r0 - 6.0 * r1 + r2) / 2.0;
    vec![0.0, 0.0, -0.5 / (s0 * s0), y3 / pow(s, 3.0), y4 / pow(s, 4.0), y5 / pow(s, 5.0)]
}

fn double(sp: f64, sm: f64, s0: f64, half: fn(f64, f64) -> Vec<f64>) -> Piecewise {
    let left = half(-sm, s0);
    let right = half(sp, s0);
    let (vl, dl) = value_slope(&left, -sm);
    let (vr, dr) = value_slope(&right, sp);
    let lt = tail(-sm, vl, dl, -1.0 / (sm * sm));
    let rt = tail(sp, vr, dr, -1.0 / (sp * sp));
    Piecewise::new(vec![-sm, 0.0, sp], vec![lt, left, right, rt]).with_params(vec![("sigma0", s0)])
}

pub(super) fn double_quartic(sp: f64, sm: f64, s0: f64) -> Piecewise {
    double(sp, sm, s0, quartic_half)
}

pub(super) fn double_quintic(sp: f64, sm: f64, s0: f64) -> Piecewise {
    double(sp, sm, s0, quintic_half)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_bound_constant() {
        let b = (1.0 + pow(12.0, 0.25) + sqrt(3.0)) / 2.0;
        assert!((b - CONSTRAINED_QUARTIC_BOUND).abs() < 1e-15);
    }

    #[test]
    fn quintic_halves_match_broken_parabola_at_the_joins() {
        let p = double_quintic(0.7, 0.5, 0.6);
        for s in [0.7, -0.5] {
            let e = 1e-7;
            assert!((p.value(s * (1.0 - e)) - p.value(s * (1.0 + e))).abs() < 1e-6);
            assert!((p.slope(s) + 1.0 / s).abs() < 1e-12);
        }
    }

    #[test]
    fn constrained_quartic_symmetric_errors_are_a_parabola() {
        for s in [0.5, 2.185_310_791_012_341, 7.0] {
            let p = constrained_quartic(s, s).unwrap();
            assert!((p.value(s) + 0.5).abs() < 1e-12 && (p.value(-s) + 0.5).abs() < 1e-12, "{s}");
        }
    }

    #[test]
    fn constrained_quartic_curvature_is_a_square() {
        let p = constrained_quartic(0.6, 0.8).unwrap();
        let h = 1e-4;
        for x in [-1.0, -0.3, 0.0, 0.4, 1.2] {
            let c = (p.value(x + h) - 2.0 * p.value(x) + p.value(x - h)) / (h * h);
            assert!(c < 0.0);
        }
    }
}

use core::f64::consts::PI;
use libm::sqrt;

use crate::numeric::{gauss_cdf, gauss_pdf, solve_cubic_real, INV_SQRT_2PI, SQRT_2PI};
use crate::{Error, Result};

/// Largest normalized skewness: the limit `σ⁻ → 0`, `(π+2)/(π−1)^{3/2}`.
pub(crate) const MAX_SKEWNESS: f64 = 1.640_560_926_866_266_8;

pub(crate) fn moments(m: f64, sp: f64, sm: f64) -> (f64, f64, f64) {
    let d = sp - sm;
    let s = sp * sp + sm * sm;
    let mean = m + d * INV_SQRT_2PI;
    let var = 0.5 * s - d * d / (2.0 * PI);
    let third = INV_SQRT_2PI * (2.0 * (sp * sp * sp - sm * sm * sm) - 1.5 * d * s + d * d * d / PI);
    (mean, var, third)
}

/// Inverts the moments through the cubic
/// `(5/(2π) − 1)·D³ + 3V·D − √(2π)·γ = 0` for `D = σ⁺ − σ⁻`, taking the root
/// of smallest magnitude.
pub(crate) fn from_moments(mu: f64, v: f64, g: f64) -> Result<(f64, f64, f64)> {
    let skew = g / (v * sqrt(v));
    let tolerance = 1e-9;
    if libm::fabs(skew) > MAX_SKEWNESS * (1.0 + tolerance) {
        return Err(Error::UnrepresentableSkewness { family: "dimidiated", value: skew, bound: MAX_SKEWNESS });
    }
    let c3 = 2.5 / PI - 1.0;
    let roots = solve_cubic_real([-SQRT_2PI * g, 3.0 * v, 0.0, c3])?;
    let d = roots
        .iter()
        .copied()
        .fold(f64::INFINITY, |best, r| if libm::fabs(r) < libm::fabs(best) { r } else { best });
    let s = 2.0 * v + d * d / PI;
    // At the bound one half-width is zero; rounding may push it slightly negative.
    let q = sqrt((2.0 * s - d * d).max(0.0));
    let sp = (0.5 * (q + d)).max(0.0);
    let sm = (0.5 * (q - d)).max(0.0);
    Ok((mu - d * INV_SQRT_2PI, sp, sm))
}

pub(crate) fn density(m: f64, sp: f64, sm: f64, x: f64) -> f64 {
    let s = if x < m { sm } else { sp };
    if s == 0.0 {
        return 0.0;
    }
    gauss_pdf((x - m) / s) / s
}

pub(crate) fn cdf(m: f64, sp: f64, sm: f64, x: f64) -> f64 {
    if x < m {
        if sm == 0.0 { 0.0 } else { gauss_cdf((x - m) / sm) }
    } else if sp == 0.0 {
        1.0
    } else {
        gauss_cdf((x - m) / sp)
    }
}

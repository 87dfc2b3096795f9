use libm::{exp, fabs};

use super::gauss_cdf;
use super::quad::adaptive;

const INV_2PI: f64 = 0.159_154_943_091_895_34;

/// Owen's T function,
/// `T(z, α) = (1/2π) ∫₀^α exp(−z²(1+y²)/2) / (1+y²) dy`.
///
/// Evaluated by adaptive quadrature of the defining integral. For `|α| > 1`
/// the reflection `T(z, α) = ½Φ(z) + ½Φ(αz) − Φ(z)Φ(αz) − T(αz, 1/α)`
/// (for `z ≥ 0`) keeps the range of integration short.
pub fn owens_t(z: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        return 0.0;
    }
    if alpha < 0.0 {
        return -owens_t(z, -alpha);
    }
    let h = fabs(z);
    if alpha <= 1.0 {
        return raw(h, alpha);
    }
    let ah = alpha * h;
    let (ph, pah) = (gauss_cdf(h), gauss_cdf(ah));
    0.5 * ph + 0.5 * pah - ph * pah - raw(ah, 1.0 / alpha)
}

fn raw(h: f64, alpha: f64) -> f64 {
    let hh = 0.5 * h * h;
    let f = |y: f64| {
        let w = 1.0 + y * y;
        exp(-hh * w) / w
    };
    INV_2PI * adaptive(&f, 0.0, alpha, 1e-15).value
}

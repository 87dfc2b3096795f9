//! Split normal: two Gaussian halves of widths `σ₁`, `σ₂` joined at the mode
//! with a common height.

use core::f64::consts::PI;
use libm::{fabs, sqrt};

use super::shape_solve::solve_shape;
use crate::numeric::{gauss_cdf, gauss_pdf, gauss_quantile, gauss_sf, RandomSource, ONE_SIGMA_HIGH, ONE_SIGMA_LOW};
use crate::{Error, Result};

/// `|A|` of the half-Gaussian limit.
pub(crate) const MAX_ASYMMETRY: f64 = 0.215_640_270_110_558_7;
/// Normalized skewness of the half-Gaussian, `√2(4−π)/(π−2)^{3/2}`.
pub(crate) const MAX_SKEWNESS: f64 = 0.995_271_746_431_156;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Fechner {
    m: f64,
    s1: f64,
    s2: f64,
}

impl Fechner {
    /// Unit-scale member with `σ₁ = 1 − t`, `σ₂ = 1 + t`.
    fn unit(t: f64) -> Self {
        Fechner { m: 0.0, s1: 1.0 - t, s2: 1.0 + t }
    }

    pub(crate) fn from_quantiles(m: f64, sp: f64, sm: f64) -> Result<Self> {
        let a = (sp - sm) / (sp + sm);
        if fabs(a) > MAX_ASYMMETRY {
            return Err(Error::UnrepresentableAsymmetry {
                family: "fechner",
                measure: "|A| = |σ⁺−σ⁻|/(σ⁺+σ⁻)",
                value: fabs(a),
                bound: MAX_ASYMMETRY,
            });
        }
        let asym = |t: f64| -> Result<f64> {
            let (_, p, q) = Fechner::unit(t).quantile_triple();
            Ok((p - q) / (p + q))
        };
        let t = if a == 0.0 {
            0.0
        } else {
            let (lo, hi) = if a > 0.0 { (0.0, 1.0) } else { (-1.0, 0.0) };
            solve_shape(asym, a, lo, hi, 0.0, 16)?.unwrap_or(1.0f64.copysign(a))
        };
        let unit = Fechner::unit(t);
        let (um, up, uq) = unit.quantile_triple();
        let c = (sp + sm) / (up + uq);
        Ok(Fechner { m: m - c * um, s1: c * unit.s1, s2: c * unit.s2 })
    }

    pub(crate) fn from_moments(mu: f64, v: f64, g: f64) -> Result<Self> {
        let skew = g / (v * sqrt(v));
        if fabs(skew) > MAX_SKEWNESS * (1.0 + 1e-12) {
            return Err(Error::UnrepresentableSkewness { family: "fechner", value: skew, bound: MAX_SKEWNESS });
        }
        let unit_skew = |t: f64| -> Result<f64> {
            let (_, uv, ug) = Fechner::unit(t).moments();
            Ok(ug / (uv * sqrt(uv)))
        };
        let t = if skew == 0.0 {
            0.0
        } else {
            let (lo, hi) = if skew > 0.0 { (0.0, 1.0) } else { (-1.0, 0.0) };
            solve_shape(unit_skew, skew, lo, hi, 0.0, 16)?.unwrap_or(1.0f64.copysign(skew))
        };
        let unit = Fechner::unit(t);
        let (umu, uv, _) = unit.moments();
        let c = sqrt(v / uv);
        Ok(Fechner { m: mu - c * umu, s1: c * unit.s1, s2: c * unit.s2 })
    }

    pub(crate) fn moments(&self) -> (f64, f64, f64) {
        let d = self.s2 - self.s1;
        let p = self.s1 * self.s2;
        let k = sqrt(2.0 / PI);
        (self.m + k * d, (1.0 - 2.0 / PI) * d * d + p, k * d * ((4.0 / PI - 1.0) * d * d + p))
    }

    fn weight_below(&self) -> f64 {
        self.s1 / (self.s1 + self.s2)
    }

    pub(crate) fn density(&self, x: f64) -> f64 {
        let s = if x <= self.m { self.s1 } else { self.s2 };
        if s == 0.0 {
            return 0.0;
        }
        2.0 / (self.s1 + self.s2) * gauss_pdf((x - self.m) / s)
    }

    pub(crate) fn cdf(&self, x: f64) -> f64 {
        if x <= self.m {
            if self.s1 == 0.0 { 0.0 } else { 2.0 * self.weight_below() * gauss_cdf((x - self.m) / self.s1) }
        } else if self.s2 == 0.0 {
            1.0
        } else {
            1.0 - 2.0 * (1.0 - self.weight_below()) * gauss_sf((x - self.m) / self.s2)
        }
    }

    pub(crate) fn quantile(&self, p: f64) -> Result<f64> {
        let w = self.weight_below();
        if p <= w {
            Ok(self.m + self.s1 * gauss_quantile(p / (2.0 * w))?)
        } else {
            Ok(self.m - self.s2 * gauss_quantile((1.0 - p) / (2.0 * (1.0 - w)))?)
        }
    }

    pub(crate) fn params(&self) -> [(&'static str, f64); 3] {
        [("mode", self.m), ("sigma1", self.s1), ("sigma2", self.s2)]
    }

    pub(crate) fn quantile_triple(&self) -> (f64, f64, f64) {
        // The quantile function is finite for these fixed probabilities.
        let q = |p: f64| self.quantile(p).unwrap_or(self.m);
        let med = q(0.5);
        (med, q(ONE_SIGMA_HIGH) - med, med - q(ONE_SIGMA_LOW))
    }

    pub(crate) fn sample(&self, rng: &mut RandomSource) -> f64 {
        let z = fabs(rng.next_gaussian());
        if rng.next_uniform() < self.weight_below() {
            self.m - self.s1 * z
        } else {
            self.m + self.s2 * z
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_gaussian_limits() {
        let k = sqrt(2.0) * (4.0 - PI) / libm::pow(PI - 2.0, 1.5);
        assert!((k - MAX_SKEWNESS).abs() < 1e-15);
        let (_, p, q) = Fechner::unit(1.0).quantile_triple();
        assert!(((p - q) / (p + q) - MAX_ASYMMETRY).abs() < 1e-12);
    }

    #[test]
    fn quantile_round_trip() {
        let f = Fechner::from_quantiles(1.0, 1.2, 0.9).unwrap();
        let (m, p, q) = f.quantile_triple();
        assert!((m - 1.0).abs() < 1e-10 && (p - 1.2).abs() < 1e-10 && (q - 0.9).abs() < 1e-10);
        for x in [-1.0, 0.5, 1.0, 2.5] {
            assert!((f.quantile(f.cdf(x)).unwrap() - x).abs() < 1e-9);
        }
    }

    #[test]
    fn moment_round_trip() {
        let f = Fechner { m: 0.3, s1: 0.7, s2: 1.4 };
        let (mu, v, g) = f.moments();
        let h = Fechner::from_moments(mu, v, g).unwrap();
        assert!((h.m - 0.3).abs() < 1e-9 && (h.s1 - 0.7).abs() < 1e-9 && (h.s2 - 1.4).abs() < 1e-9);
    }

    #[test]
    fn rejects_large_asymmetry() {
        assert!(matches!(Fechner::from_quantiles(0.0, 1.0, 0.6), Err(Error::UnrepresentableAsymmetry { .. })));
        assert!(Fechner::from_quantiles(0.0, 1.0, 0.7).is_ok());
    }
}

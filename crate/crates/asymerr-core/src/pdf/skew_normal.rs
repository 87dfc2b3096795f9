//! Azzalini's skew normal `2φ(z)Φ(αz)/ω`, `z = (x−ξ)/ω`, parameterized
//! internally by `δ = α/√(1+α²)` so that the half-Gaussian limit is `δ = ±1`.

use core::f64::consts::PI;
use libm::{cbrt, fabs, sqrt};

use super::shape_solve::solve_shape;
use crate::numeric::{find_root, gauss_cdf, gauss_pdf, gauss_quantile, owens_t, RandomSource, ONE_SIGMA_HIGH, ONE_SIGMA_LOW};
use crate::{Error, Result};

pub(crate) use super::fechner::{MAX_ASYMMETRY, MAX_SKEWNESS};

#[derive(Debug, Clone, Copy)]
pub(crate) struct SkewNormal {
    xi: f64,
    omega: f64,
    delta: f64,
}

fn alpha(delta: f64) -> f64 {
    delta / sqrt((1.0 - delta * delta).max(0.0))
}

/// Standard (ξ = 0, ω = 1) distribution function.
fn unit_cdf(delta: f64, z: f64) -> f64 {
    if delta >= 1.0 {
        return if z <= 0.0 { 0.0 } else { 1.0 - 2.0 * gauss_cdf(-z) };
    }
    if delta <= -1.0 {
        return if z >= 0.0 { 1.0 } else { 2.0 * gauss_cdf(z) };
    }
    (gauss_cdf(z) - 2.0 * owens_t(z, alpha(delta))).clamp(0.0, 1.0)
}

fn unit_quantile(delta: f64, p: f64) -> Result<f64> {
    if delta < 0.0 {
        return Ok(-unit_quantile(-delta, 1.0 - p)?);
    }
    // The distribution lies between the normal and the half-normal.
    let pad = |z: f64| 1e-9 * (1.0 + fabs(z));
    let lo = gauss_quantile(p)?;
    let lo = lo - pad(lo);
    let hi = gauss_quantile(0.5 * (1.0 + p))?;
    let hi = hi + pad(hi);
    if delta == 0.0 {
        return gauss_quantile(p);
    }
    Ok(find_root(|z| unit_cdf(delta, z) - p, lo, hi, 1e-15)?.value)
}

fn unit_triple(delta: f64) -> Result<(f64, f64, f64)> {
    let m = unit_quantile(delta, 0.5)?;
    Ok((m, unit_quantile(delta, ONE_SIGMA_HIGH)? - m, m - unit_quantile(delta, ONE_SIGMA_LOW)?))
}

impl SkewNormal {
    pub(crate) fn from_quantiles(m: f64, sp: f64, sm: f64) -> Result<Self> {
        let a = (sp - sm) / (sp + sm);
        if fabs(a) > MAX_ASYMMETRY {
            return Err(Error::UnrepresentableAsymmetry {
                family: "skew-normal",
                measure: "|A| = |σ⁺−σ⁻|/(σ⁺+σ⁻)",
                value: fabs(a),
                bound: MAX_ASYMMETRY,
            });
        }
        let delta = if a == 0.0 {
            0.0
        } else {
            let asym = |d: f64| unit_triple(d).map(|(_, p, q)| (p - q) / (p + q));
            let (lo, hi) = if a > 0.0 { (0.0, 1.0) } else { (-1.0, 0.0) };
            solve_shape(asym, a, lo, hi, 0.0, 20)?.unwrap_or(1.0f64.copysign(a))
        };
        let (um, up, uq) = unit_triple(delta)?;
        let omega = (sp + sm) / (up + uq);
        Ok(SkewNormal { xi: m - omega * um, omega, delta })
    }

    pub(crate) fn from_moments(mu: f64, v: f64, g: f64) -> Result<Self> {
        let od = sqrt(PI / 2.0) * cbrt(2.0 * g / (4.0 - PI));
        let omega = sqrt(v + 2.0 * od * od / PI);
        let delta = od / omega;
        if fabs(delta) > 1.0 + 1e-12 {
            return Err(Error::UnrepresentableSkewness {
                family: "skew-normal",
                value: g / (v * sqrt(v)),
                bound: MAX_SKEWNESS,
            });
        }
        Ok(SkewNormal { xi: mu - od * sqrt(2.0 / PI), omega, delta: delta.clamp(-1.0, 1.0) })
    }

    pub(crate) fn moments(&self) -> (f64, f64, f64) {
        let od = self.omega * self.delta * sqrt(2.0 / PI);
        (
            self.xi + od,
            self.omega * self.omega * (1.0 - 2.0 * self.delta * self.delta / PI),
            0.5 * (4.0 - PI) * od * od * od,
        )
    }

    pub(crate) fn params(&self) -> [(&'static str, f64); 3] {
        [("xi", self.xi), ("omega", self.omega), ("delta", self.delta)]
    }

    pub(crate) fn quantile_triple(&self) -> Result<(f64, f64, f64)> {
        let (m, p, q) = unit_triple(self.delta)?;
        Ok((self.xi + self.omega * m, self.omega * p, self.omega * q))
    }

    pub(crate) fn density(&self, x: f64) -> f64 {
        let z = (x - self.xi) / self.omega;
        let tail = if fabs(self.delta) >= 1.0 {
            if z * self.delta > 0.0 { 1.0 } else { 0.0 }
        } else {
            gauss_cdf(alpha(self.delta) * z)
        };
        2.0 * gauss_pdf(z) * tail / self.omega
    }

    pub(crate) fn cdf(&self, x: f64) -> f64 {
        unit_cdf(self.delta, (x - self.xi) / self.omega)
    }

    pub(crate) fn quantile(&self, p: f64) -> Result<f64> {
        Ok(self.xi + self.omega * unit_quantile(self.delta, p)?)
    }

    pub(crate) fn sample(&self, rng: &mut RandomSource) -> f64 {
        let u0 = fabs(rng.next_gaussian());
        let u1 = rng.next_gaussian();
        let d = self.delta;
        self.xi + self.omega * (d * u0 + sqrt((1.0 - d * d).max(0.0)) * u1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_round_trip() {
        let s = SkewNormal::from_quantiles(1.0, 1.15, 0.85).unwrap();
        let (m, p, q) = s.quantile_triple().unwrap();
        assert!((m - 1.0).abs() < 1e-10 && (p - 1.15).abs() < 1e-10 && (q - 0.85).abs() < 1e-10);
    }

    #[test]
    fn moments_round_trip() {
        let s = SkewNormal { xi: 0.2, omega: 1.3, delta: -0.8 };
        let (mu, v, g) = s.moments();
        let t = SkewNormal::from_moments(mu, v, g).unwrap();
        assert!((t.xi - 0.2).abs() < 1e-12 && (t.omega - 1.3).abs() < 1e-12 && (t.delta + 0.8).abs() < 1e-12);
    }

    #[test]
    fn half_normal_limit_matches_fechner_bound() {
        let (_, p, q) = unit_triple(1.0).unwrap();
        assert!(((p - q) / (p + q) - MAX_ASYMMETRY).abs() < 1e-12);
        let (_, v, g) = SkewNormal { xi: 0.0, omega: 1.0, delta: 1.0 }.moments();
        assert!((g / libm::pow(v, 1.5) - MAX_SKEWNESS).abs() < 1e-14);
        assert!(SkewNormal::from_moments(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn density_is_consistent_with_cdf() {
        let s = SkewNormal { xi: 0.0, omega: 1.0, delta: 0.9 };
        for x in [-1.0, 0.0, 0.7, 2.0] {
            let h = 1e-5;
            let d = (s.cdf(x + h) - s.cdf(x - h)) / (2.0 * h);
            assert!((d - s.density(x)).abs() < 1e-8);
        }
    }
}

//! First-order Edgeworth expansion about a Gaussian.
//!
//! The density is `φ(z)(1 + κ·He₃(z))/σ` with `z = (x−μ)/σ` and
//! `κ = γ/(6σ³)`; it is not guaranteed to be positive.

use libm::{erf, fabs, sqrt};

use super::shape_solve::invert_cdf;
use crate::numeric::{gauss_cdf, gauss_pdf, gauss_quantile};
use crate::{Error, Result};

const MAX_ITERATIONS: usize = 200;
const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Edgeworth {
    mu: f64,
    sigma: f64,
    kappa: f64,
    /// Standardized median.
    z_med: f64,
}

/// Solves `z = Φ⁻¹(½ + κ(z²−1)φ(z))` by plain iteration from zero.
fn median_offset(kappa: f64) -> Result<f64> {
    let mut z = 0.0;
    for _ in 0..MAX_ITERATIONS {
        let p = 0.5 + kappa * (z * z - 1.0) * gauss_pdf(z);
        if !(p > 0.0 && p < 1.0) {
            break;
        }
        let next = gauss_quantile(p)?;
        if fabs(next - z) < TOLERANCE {
            return Ok(next);
        }
        z = next;
    }
    Err(Error::NonConvergent { what: "edgeworth median iteration", iterations: MAX_ITERATIONS })
}

fn refuse(err: Error, a: f64) -> Error {
    match err {
        Error::NonConvergent { .. } | Error::Domain { .. } => Error::UnrepresentableAsymmetry {
            family: "edgeworth",
            measure: "|A| = |σ⁺−σ⁻|/(σ⁺+σ⁻) (median iteration diverges)",
            value: fabs(a),
            bound: MAX_ASYMMETRY,
        },
        other => other,
    }
}

/// Where the median iteration stops being a contraction.
pub(crate) const MAX_ASYMMETRY: f64 = 0.500_563_201_448_723_6;
/// Normalized skewness `6κ` at the same point.
pub(crate) const MAX_SKEWNESS: f64 = 4.359_620_036_609_39;

impl Edgeworth {
    pub(crate) fn from_quantiles(m: f64, sp: f64, sm: f64) -> Result<Self> {
        let sigma = 0.5 * (sp + sm);
        let a = (sp - sm) / (sp + sm);
        let z = -a;
        let kappa = if z == 0.0 {
            0.0
        } else {
            0.5 * erf(z / core::f64::consts::SQRT_2) / (gauss_pdf(z) * (z * z - 1.0))
        };
        // Only accept cases the moment-side iteration can reproduce.
        median_offset(kappa).map_err(|e| refuse(e, a))?;
        Ok(Edgeworth { mu: m + 0.5 * (sp - sm), sigma, kappa, z_med: z })
    }

    pub(crate) fn from_moments(mu: f64, v: f64, g: f64) -> Result<Self> {
        let sigma = sqrt(v);
        let kappa = g / (6.0 * v * sigma);
        let z_med = median_offset(kappa).map_err(|e| match e {
            Error::NonConvergent { .. } | Error::Domain { .. } => {
                Error::UnrepresentableSkewness { family: "edgeworth", value: g / (v * sigma), bound: MAX_SKEWNESS }
            }
            other => other,
        })?;
        Ok(Edgeworth { mu, sigma, kappa, z_med })
    }

    pub(crate) fn moments(&self) -> (f64, f64, f64) {
        let s3 = self.sigma * self.sigma * self.sigma;
        (self.mu, self.sigma * self.sigma, 6.0 * self.kappa * s3)
    }

    pub(crate) fn params(&self) -> [(&'static str, f64); 3] {
        [("mu", self.mu), ("sigma", self.sigma), ("kappa", self.kappa)]
    }

    pub(crate) fn quantile_triple(&self) -> (f64, f64, f64) {
        let z = self.z_med;
        (self.mu + self.sigma * z, self.sigma * (1.0 - z), self.sigma * (1.0 + z))
    }

    /// Whether `1 + κ·He₃(z)` dips below zero for some `|z| ≤ 6`.
    pub(crate) fn goes_negative(&self) -> bool {
        [-6.0, -1.0, 1.0, 6.0f64].iter().any(|&z| 1.0 + self.kappa * (z * z * z - 3.0 * z) < 0.0)
    }

    pub(crate) fn density(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        gauss_pdf(z) * (1.0 + self.kappa * (z * z * z - 3.0 * z)) / self.sigma
    }

    pub(crate) fn cdf(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        gauss_cdf(z) - self.kappa * gauss_pdf(z) * (z * z - 1.0)
    }

    pub(crate) fn quantile(&self, p: f64) -> Result<f64> {
        let guess = self.mu + self.sigma * gauss_quantile(p)?;
        invert_cdf(|x| self.cdf(x), p, guess, self.sigma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_case_is_gaussian() {
        let e = Edgeworth::from_moments(2.0, 4.0, 0.0).unwrap();
        assert_eq!(e.quantile_triple(), (2.0, 2.0, 2.0));
        assert!((e.density(3.0) - gauss_pdf(0.5) / 2.0).abs() < 1e-16);
    }

    #[test]
    fn quantile_and_moment_paths_agree() {
        let e = Edgeworth::from_quantiles(0.0, 1.2, 0.8).unwrap();
        let (mu, v, g) = e.moments();
        let f = Edgeworth::from_moments(mu, v, g).unwrap();
        let (m, p, q) = f.quantile_triple();
        assert!(m.abs() < 1e-11 && (p - 1.2).abs() < 1e-11 && (q - 0.8).abs() < 1e-11);
        assert!((e.cdf(0.0) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn large_asymmetry_refused() {
        assert!(Edgeworth::from_quantiles(0.0, 1.5, 0.5).is_err());
        assert!(Edgeworth::from_quantiles(0.0, 1.4, 0.6).is_ok());
    }
}

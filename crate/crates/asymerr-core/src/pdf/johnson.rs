//! Johnson S_U with the kurtosis fixed by maximum entropy.
//!
//! The variate is `x = ξ + λ·sinh(z/δ + Ω)` for standard normal `z`; the sign
//! of the skewness follows the sign of `Ω`. For a given normalized skewness
//! `s` the pair `(δ, Ω)` maximizing the standardized entropy is found
//! numerically; everything else follows by scaling and shifting.

use core::cell::RefCell;
use core::f64::consts::{LN_2, PI};
use libm::{asinh, cosh, exp, expm1, fabs, log, log1p, sinh, sqrt};

use super::lognormal::omega_minus_one;
use crate::numeric::{find_root, gauss_cdf, gauss_pdf, integrate_with_breaks, maximize};
use crate::{Error, Result};

/// Largest normalized skewness accepted.
pub(crate) const MAX_SKEWNESS: f64 = 20.0;
/// Below this the model is the Gaussian.
const NEGLIGIBLE_SKEWNESS: f64 = 1e-7;
const NEGLIGIBLE_ASYMMETRY: f64 = 1e-7;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Johnson {
    xi: f64,
    lambda: f64,
    delta: f64,
    op: f64,
}

fn ln_cosh(u: f64) -> f64 {
    let a = fabs(u);
    if a < 1.0 {
        let h = sinh(0.5 * a);
        log1p(2.0 * h * h)
    } else {
        a + log1p(exp(-2.0 * a)) - LN_2
    }
}

/// Normalized skewness of the unit member with `y = ω − 1`.
fn skewness(y: f64, op: f64) -> f64 {
    let w = 1.0 + y;
    let num = w * (w + 2.0) * sinh(3.0 * op) + 3.0 * sinh(op);
    let den = w * cosh(2.0 * op) + 1.0;
    sqrt(0.5 * w * y) * num / (den * sqrt(den))
}

fn omega_for(y: f64, s: f64) -> Result<f64> {
    let mut hi = 1.0;
    while skewness(y, hi) < s {
        hi *= 2.0;
        if hi > 64.0 {
            return Err(Error::NonConvergent { what: "johnson shape bracket", iterations: 7 });
        }
    }
    Ok(find_root(|o| skewness(y, o) - s, 0.0, hi, 1e-15)?.value)
}

/// Entropy of the standardized distribution with shape `(δ, Ω)`.
fn entropy(delta: f64, y: f64, op: f64) -> Result<f64> {
    let breaks = [-op * delta];
    let e = integrate_with_breaks(|z| gauss_pdf(z) * ln_cosh(z / delta + op), -12.0, 12.0, &breaks, 1e-13)?;
    let w = 1.0 + y;
    Ok(0.5 * log(2.0 * PI * core::f64::consts::E) - log(delta) + e - 0.5 * log(0.5 * y * (w * cosh(2.0 * op) + 1.0)))
}

/// Maximum-entropy `(δ, Ω)` for normalized skewness `s > 0`.
fn shape(s: f64) -> Result<(f64, f64)> {
    // At fixed s, δ is bounded by the log-normal limit Ω → ∞.
    let delta_max = 1.0 / sqrt(log1p(omega_minus_one(s)?));
    let mut failure = None;
    let best = maximize(
        |d| {
            let y = expm1(1.0 / (d * d));
            match omega_for(y, s).and_then(|o| entropy(d, y, o)) {
                Ok(h) => h,
                Err(e) => {
                    failure = Some(e);
                    f64::NEG_INFINITY
                }
            }
        },
        0.25 * delta_max,
        delta_max * (1.0 - 1e-9),
        1e-10,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let y = expm1(1.0 / (best.x * best.x));
    Ok((best.x, omega_for(y, s)?))
}

impl Johnson {
    /// Unit member (`ξ = 0`, `λ = 1`) for normalized skewness `s ≠ 0`.
    fn unit(s: f64) -> Result<Self> {
        let (delta, op) = shape(fabs(s))?;
        Ok(Johnson { xi: 0.0, lambda: 1.0, delta, op: op.copysign(s) })
    }

    fn asymmetry(&self) -> f64 {
        let (_, p, q) = self.quantile_triple();
        (p - q) / (p + q)
    }

    /// `None` when the triple is symmetric to within rounding.
    pub(crate) fn from_quantiles(m: f64, sp: f64, sm: f64) -> Result<Option<Self>> {
        let a = (sp - sm) / (sp + sm);
        if fabs(a) < NEGLIGIBLE_ASYMMETRY {
            return Ok(None);
        }
        let target = fabs(a);
        let failure = RefCell::new(None);
        let g = |s: f64| match Johnson::unit(s) {
            Ok(j) => j.asymmetry() - target,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                f64::NAN
            }
        };
        let top = g(MAX_SKEWNESS);
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        if top < 0.0 {
            return Err(Error::UnrepresentableAsymmetry {
                family: "johnson-su",
                measure: "|A| = |σ⁺−σ⁻|/(σ⁺+σ⁻)",
                value: target,
                bound: top + target,
            });
        }
        let s = find_root(g, NEGLIGIBLE_SKEWNESS, MAX_SKEWNESS, 1e-12);
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        let unit = Johnson::unit(s?.value.copysign(a))?;
        let (um, up, uq) = unit.quantile_triple();
        let c = (sp + sm) / (up + uq);
        Ok(Some(Johnson { xi: m - c * um, lambda: c, ..unit }))
    }

    pub(crate) fn from_moments(mu: f64, v: f64, g: f64) -> Result<Option<Self>> {
        let s = g / (v * sqrt(v));
        if fabs(s) < NEGLIGIBLE_SKEWNESS {
            return Ok(None);
        }
        if fabs(s) > MAX_SKEWNESS {
            return Err(Error::UnrepresentableSkewness { family: "johnson-su", value: s, bound: MAX_SKEWNESS });
        }
        let unit = Johnson::unit(s)?;
        let (umu, uv, _) = unit.moments();
        let c = sqrt(v / uv);
        Ok(Some(Johnson { xi: mu - c * umu, lambda: c, ..unit }))
    }

    pub(crate) fn at_z(&self, z: f64) -> f64 {
        self.xi + self.lambda * sinh(z / self.delta + self.op)
    }

    pub(crate) fn moments(&self) -> (f64, f64, f64) {
        let y = expm1(1.0 / (self.delta * self.delta));
        let w = 1.0 + y;
        let l = self.lambda;
        let mean = self.xi + l * sqrt(w) * sinh(self.op);
        let var = 0.5 * l * l * y * (w * cosh(2.0 * self.op) + 1.0);
        (mean, var, skewness(y, self.op) * var * sqrt(var))
    }

    pub(crate) fn params(&self) -> [(&'static str, f64); 4] {
        [("xi", self.xi), ("lambda", self.lambda), ("delta", self.delta), ("omega", self.op)]
    }

    pub(crate) fn quantile_triple(&self) -> (f64, f64, f64) {
        let m = self.at_z(0.0);
        (m, self.at_z(1.0) - m, m - self.at_z(-1.0))
    }

    fn z_of(&self, x: f64) -> f64 {
        self.delta * (asinh((x - self.xi) / self.lambda) - self.op)
    }

    pub(crate) fn density(&self, x: f64) -> f64 {
        let u = (x - self.xi) / self.lambda;
        gauss_pdf(self.z_of(x)) * self.delta / (self.lambda * sqrt(1.0 + u * u))
    }

    pub(crate) fn cdf(&self, x: f64) -> f64 {
        gauss_cdf(self.z_of(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_match_quadrature() {
        let j = Johnson { xi: 0.1, lambda: 0.8, delta: 1.7, op: 0.6 };
        let (mu, v, g) = j.moments();
        let f = |k: f64| integrate_with_breaks(|z| libm::pow(j.at_z(z) - mu, k) * gauss_pdf(z), -14.0, 14.0, &[], 1e-14).unwrap();
        assert!(f(1.0).abs() < 1e-12);
        assert!((f(2.0) - v).abs() < 1e-12);
        assert!((f(3.0) - g).abs() < 1e-11);
    }

    #[test]
    fn quantile_round_trip() {
        let j = Johnson::from_quantiles(0.0, 1.0, 0.6).unwrap().unwrap();
        let (m, p, q) = j.quantile_triple();
        assert!(m.abs() < 1e-12 && (p - 1.0).abs() < 1e-9 && (q - 0.6).abs() < 1e-9);
        let (mu, v, g) = j.moments();
        let k = Johnson::from_moments(mu, v, g).unwrap().unwrap();
        let (m2, p2, q2) = k.quantile_triple();
        assert!(m2.abs() < 1e-7 && (p2 - 1.0).abs() < 1e-7 && (q2 - 0.6).abs() < 1e-7);
    }

    #[test]
    fn mirror_symmetry() {
        let a = Johnson::from_quantiles(0.0, 1.2, 0.8).unwrap().unwrap();
        let b = Johnson::from_quantiles(0.0, 0.8, 1.2).unwrap().unwrap();
        let (ma, va, ga) = a.moments();
        let (mb, vb, gb) = b.moments();
        assert!((ma + mb).abs() < 1e-9 && (va - vb).abs() < 1e-9 && (ga + gb).abs() < 1e-9);
    }

    #[test]
    fn entropy_optimum_is_interior() {
        // The entropy falls off towards the log-normal edge.
        let s = 1.0;
        let dmax = 1.0 / sqrt(log1p(omega_minus_one(s).unwrap()));
        let (d, _) = shape(s).unwrap();
        assert!(d > 0.3 * dmax && d < 0.95 * dmax, "{d} {dmax}");
    }
}

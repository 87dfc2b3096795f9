//! Probability density models for a result quoted with asymmetric errors.
//!
//! A model is built either from a quantile triple (median and the distances
//! to the 15.87% and 84.13% points) or from a moment triple (mean, variance
//! and unnormalized third central moment). Once built it answers density,
//! distribution function, quantile and moment queries and can be sampled.

mod curve;
mod dimidiated;
mod edgeworth;
mod fechner;
mod flipped;
mod johnson;
mod lognormal;
pub(crate) mod shape_solve;
mod skew_normal;

use core::fmt;
use alloc::vec::Vec;

use crate::numeric::{gauss_quantile, RandomSource, ONE_SIGMA_HIGH, ONE_SIGMA_LOW};
use crate::{Error, Result};

pub use flipped::{flipped_moments, flipped_to_dimidiated, FlipDirection, FlippedSpec};

use curve::Curve;
use edgeworth::Edgeworth;
use fechner::Fechner;
use johnson::Johnson;
use lognormal::LogNormal;
use skew_normal::SkewNormal;

/// Median with distances to the 15.87% and 84.13% points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantileTriple {
    pub median: f64,
    pub sigma_plus: f64,
    pub sigma_minus: f64,
}

impl QuantileTriple {
    /// # Errors
    /// [`Error::InvalidParameter`] unless both widths are positive and finite.
    pub fn new(median: f64, sigma_plus: f64, sigma_minus: f64) -> Result<Self> {
        if !median.is_finite() {
            return Err(Error::InvalidParameter { what: "median", value: median });
        }
        for (what, v) in [("sigma_plus", sigma_plus), ("sigma_minus", sigma_minus)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter { what, value: v });
            }
        }
        Ok(Self { median, sigma_plus, sigma_minus })
    }

    /// `(σ⁺ − σ⁻)/(σ⁺ + σ⁻)`, in `(−1, 1)`.
    pub fn asymmetry(&self) -> f64 {
        (self.sigma_plus - self.sigma_minus) / (self.sigma_plus + self.sigma_minus)
    }
}

/// Mean, variance and unnormalized third central moment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentTriple {
    pub mean: f64,
    pub variance: f64,
    pub third: f64,
}

impl MomentTriple {
    /// # Errors
    /// [`Error::InvalidParameter`] unless the variance is positive and all
    /// entries are finite.
    pub fn new(mean: f64, variance: f64, third: f64) -> Result<Self> {
        if !(variance > 0.0 && variance.is_finite()) {
            return Err(Error::InvalidParameter { what: "variance", value: variance });
        }
        if !mean.is_finite() || !third.is_finite() {
            return Err(Error::InvalidParameter { what: "moment", value: if mean.is_finite() { third } else { mean } });
        }
        Ok(Self { mean, variance, third })
    }

    /// Normalized skewness `γ / V^{3/2}`.
    pub fn skewness(&self) -> f64 {
        self.third / (self.variance * libm::sqrt(self.variance))
    }

    /// Moments of `c·X`.
    pub fn scaled(&self, c: f64) -> Self {
        Self { mean: c * self.mean, variance: c * c * self.variance, third: c * c * c * self.third }
    }
}

/// Families of densities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PdfFamily {
    /// Two half Gaussians joined at the median.
    Dimidiated,
    /// Gaussian variable passed through a parabola.
    Distorted,
    /// Parabola in the core with cubic transitions to straight lines; the
    /// transition widths default to `|f′/f″|` at the joins, clamped to
    /// `[0.1, 10]`.
    Railway { h_left: Option<f64>, h_right: Option<f64> },
    /// Piecewise cubic transformation with linear tails.
    DoubleCubic,
    /// Transformation whose curvature is a symmetric beta kernel
    /// `(1 − (x/h)²)^p`; `p` in 1..=20, `h` in `[0.1, 10]`.
    SymmetricBeta { p: u32, h: f64 },
    /// Quantile-variable-width Gaussian.
    Qvw,
    /// Split normal.
    Fechner,
    /// First Edgeworth correction to a Gaussian.
    Edgeworth,
    /// Azzalini skew normal.
    SkewNormal,
    /// Johnson S_U with the maximum-entropy shape for the given skewness.
    JohnsonSu,
    /// Shifted log-normal (reflected for negative skew).
    LogNormal,
}

impl PdfFamily {
    /// Every family with default parameters.
    pub const ALL: [PdfFamily; 11] = [
        PdfFamily::Dimidiated,
        PdfFamily::Distorted,
        PdfFamily::Railway { h_left: None, h_right: None },
        PdfFamily::DoubleCubic,
        PdfFamily::SymmetricBeta { p: 2, h: 1.0 },
        PdfFamily::Qvw,
        PdfFamily::Fechner,
        PdfFamily::Edgeworth,
        PdfFamily::SkewNormal,
        PdfFamily::JohnsonSu,
        PdfFamily::LogNormal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PdfFamily::Dimidiated => "dimidiated",
            PdfFamily::Distorted => "distorted",
            PdfFamily::Railway { .. } => "railway",
            PdfFamily::DoubleCubic => "double-cubic",
            PdfFamily::SymmetricBeta { .. } => "symmetric-beta",
            PdfFamily::Qvw => "qvw",
            PdfFamily::Fechner => "fechner",
            PdfFamily::Edgeworth => "edgeworth",
            PdfFamily::SkewNormal => "skew-normal",
            PdfFamily::JohnsonSu => "johnson-su",
            PdfFamily::LogNormal => "log-normal",
        }
    }

    /// Looks a family up by [`name`](Self::name), with default parameters.
    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.name() == name)
    }

    /// Same family, ignoring parameters.
    pub fn same_kind(&self, other: &PdfFamily) -> bool {
        core::mem::discriminant(self) == core::mem::discriminant(other)
    }

    fn validate(&self) -> Result<()> {
        match *self {
            PdfFamily::SymmetricBeta { p, h } => {
                if !(1..=20).contains(&p) {
                    return Err(Error::InvalidParameter { what: "symmetric beta power p", value: p as f64 });
                }
                if !(0.1..=10.0).contains(&h) {
                    return Err(Error::InvalidParameter { what: "symmetric beta width h", value: h });
                }
            }
            PdfFamily::Railway { h_left, h_right } => {
                for (what, h) in [("railway h_left", h_left), ("railway h_right", h_right)] {
                    if let Some(h) = h {
                        if !(h > 0.0 && h.is_finite()) {
                            return Err(Error::InvalidParameter { what, value: h });
                        }
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for PdfFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdfFamily::SymmetricBeta { p, h } => write!(f, "symmetric-beta(p={p}, h={h})"),
            PdfFamily::Railway { h_left: Some(l), h_right: Some(r) } => write!(f, "railway(h_left={l}, h_right={r})"),
            _ => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone)]
enum Shape {
    Gaussian { mu: f64, sigma: f64 },
    Dimidiated { m: f64, sp: f64, sm: f64 },
    Curve(Curve),
    Fechner(Fechner),
    Edgeworth(Edgeworth),
    SkewNormal(SkewNormal),
    Johnson(Johnson),
    LogNormal(LogNormal),
}

/// A fitted density, caching both its quantile and moment triples.
#[derive(Debug, Clone)]
pub struct PdfModel {
    family: PdfFamily,
    shape: Shape,
    quantiles: QuantileTriple,
    moments: MomentTriple,
}

/// Builds the model of `family` whose quantile triple is `q`.
///
/// # Errors
/// [`Error::UnrepresentableAsymmetry`] when `q` is too lopsided for the family.
pub fn pdf_from_quantiles(family: PdfFamily, q: QuantileTriple) -> Result<PdfModel> {
    family.validate()?;
    let (m, sp, sm) = (q.median, q.sigma_plus, q.sigma_minus);
    let shape = match family {
        PdfFamily::Dimidiated => Shape::Dimidiated { m, sp, sm },
        PdfFamily::Distorted
        | PdfFamily::Railway { .. }
        | PdfFamily::DoubleCubic
        | PdfFamily::SymmetricBeta { .. }
        | PdfFamily::Qvw => Shape::Curve(Curve::from_quantiles(family, m, sp, sm)?),
        PdfFamily::Fechner => Shape::Fechner(Fechner::from_quantiles(m, sp, sm)?),
        PdfFamily::Edgeworth => Shape::Edgeworth(Edgeworth::from_quantiles(m, sp, sm)?),
        PdfFamily::SkewNormal => Shape::SkewNormal(SkewNormal::from_quantiles(m, sp, sm)?),
        PdfFamily::JohnsonSu => match Johnson::from_quantiles(m, sp, sm)? {
            Some(j) => Shape::Johnson(j),
            None => Shape::Gaussian { mu: m, sigma: sp },
        },
        PdfFamily::LogNormal => match LogNormal::from_quantiles(m, sp, sm) {
            Some(l) => Shape::LogNormal(l),
            None => Shape::Gaussian { mu: m, sigma: sp },
        },
    };
    let moments = shape.moments()?;
    Ok(PdfModel { family, shape, quantiles: q, moments })
}

/// Builds the model of `family` whose moment triple is `mo`.
///
/// # Errors
/// [`Error::UnrepresentableSkewness`] when the skewness is out of range for
/// the family (the message names the limit).
pub fn pdf_from_moments(family: PdfFamily, mo: MomentTriple) -> Result<PdfModel> {
    family.validate()?;
    let (mu, v, g) = (mo.mean, mo.variance, mo.third);
    let shape = match family {
        PdfFamily::Dimidiated => {
            let (m, sp, sm) = dimidiated::from_moments(mu, v, g)?;
            Shape::Dimidiated { m, sp, sm }
        }
        PdfFamily::Distorted
        | PdfFamily::Railway { .. }
        | PdfFamily::DoubleCubic
        | PdfFamily::SymmetricBeta { .. }
        | PdfFamily::Qvw => Shape::Curve(Curve::from_moments(family, mu, v, g)?),
        PdfFamily::Fechner => Shape::Fechner(Fechner::from_moments(mu, v, g)?),
        PdfFamily::Edgeworth => Shape::Edgeworth(Edgeworth::from_moments(mu, v, g)?),
        PdfFamily::SkewNormal => Shape::SkewNormal(SkewNormal::from_moments(mu, v, g)?),
        PdfFamily::JohnsonSu => match Johnson::from_moments(mu, v, g)? {
            Some(j) => Shape::Johnson(j),
            None => Shape::Gaussian { mu, sigma: libm::sqrt(v) },
        },
        PdfFamily::LogNormal => match LogNormal::from_moments(mu, v, g)? {
            Some(l) => Shape::LogNormal(l),
            None => Shape::Gaussian { mu, sigma: libm::sqrt(v) },
        },
    };
    let quantiles = shape.quantiles()?;
    Ok(PdfModel { family, shape, quantiles, moments: mo })
}

impl Shape {
    fn moments(&self) -> Result<MomentTriple> {
        let (mean, variance, third) = match self {
            Shape::Gaussian { mu, sigma } => (*mu, sigma * sigma, 0.0),
            Shape::Dimidiated { m, sp, sm } => dimidiated::moments(*m, *sp, *sm),
            Shape::Curve(c) => c.moments()?,
            Shape::Fechner(f) => f.moments(),
            Shape::Edgeworth(e) => e.moments(),
            Shape::SkewNormal(s) => s.moments(),
            Shape::Johnson(j) => j.moments(),
            Shape::LogNormal(l) => l.moments(),
        };
        Ok(MomentTriple { mean, variance, third })
    }

    fn quantiles(&self) -> Result<QuantileTriple> {
        let (median, sigma_plus, sigma_minus) = match self {
            Shape::Gaussian { mu, sigma } => (*mu, *sigma, *sigma),
            Shape::Dimidiated { m, sp, sm } => (*m, *sp, *sm),
            Shape::Curve(c) => c.quantile_triple(),
            Shape::Fechner(f) => f.quantile_triple(),
            Shape::Edgeworth(e) => e.quantile_triple(),
            Shape::SkewNormal(s) => s.quantile_triple()?,
            Shape::Johnson(j) => j.quantile_triple(),
            Shape::LogNormal(l) => l.quantile_triple(),
        };
        Ok(QuantileTriple { median, sigma_plus, sigma_minus })
    }
}

impl PdfModel {
    pub fn family(&self) -> PdfFamily {
        self.family
    }

    pub fn quantiles(&self) -> QuantileTriple {
        self.quantiles
    }

    pub fn moments(&self) -> MomentTriple {
        self.moments
    }

    /// Internal parameters of the fitted shape, by name.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match &self.shape {
            Shape::Gaussian { mu, sigma } => alloc::vec![("mu", *mu), ("sigma", *sigma)],
            Shape::Dimidiated { m, sp, sm } => alloc::vec![("median", *m), ("sigma_plus", *sp), ("sigma_minus", *sm)],
            Shape::Curve(c) => c.params(),
            Shape::Fechner(f) => f.params().to_vec(),
            Shape::Edgeworth(e) => e.params().to_vec(),
            Shape::SkewNormal(s) => s.params().to_vec(),
            Shape::Johnson(j) => j.params().to_vec(),
            Shape::LogNormal(l) => l.params().to_vec(),
        }
    }

    /// True for an Edgeworth model whose density is negative somewhere in
    /// `μ ± 6σ`.
    pub fn goes_negative(&self) -> bool {
        matches!(&self.shape, Shape::Edgeworth(e) if e.goes_negative())
    }

    pub fn density(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::Gaussian { mu, sigma } => crate::numeric::gauss_pdf((x - mu) / sigma) / sigma,
            Shape::Dimidiated { m, sp, sm } => dimidiated::density(*m, *sp, *sm, x),
            Shape::Curve(c) => c.density(x),
            Shape::Fechner(f) => f.density(x),
            Shape::Edgeworth(e) => e.density(x),
            Shape::SkewNormal(s) => s.density(x),
            Shape::Johnson(j) => j.density(x),
            Shape::LogNormal(l) => l.density(x),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::Gaussian { mu, sigma } => crate::numeric::gauss_cdf((x - mu) / sigma),
            Shape::Dimidiated { m, sp, sm } => dimidiated::cdf(*m, *sp, *sm, x),
            Shape::Curve(c) => c.cdf(x),
            Shape::Fechner(f) => f.cdf(x),
            Shape::Edgeworth(e) => e.cdf(x),
            Shape::SkewNormal(s) => s.cdf(x),
            Shape::Johnson(j) => j.cdf(x),
            Shape::LogNormal(l) => l.cdf(x),
        }
    }

    /// Inverse distribution function.
    ///
    /// # Errors
    /// [`Error::Domain`] unless `0 < p < 1`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        let z = gauss_quantile(p)?;
        Ok(match &self.shape {
            Shape::Gaussian { mu, sigma } => mu + sigma * z,
            Shape::Dimidiated { m, sp, sm } => m + if z < 0.0 { sm * z } else { sp * z },
            Shape::Curve(c) => c.quantile(p)?,
            Shape::Fechner(f) => f.quantile(p)?,
            Shape::Edgeworth(e) => e.quantile(p)?,
            Shape::SkewNormal(s) => s.quantile(p)?,
            Shape::Johnson(j) => j.at_z(z),
            Shape::LogNormal(l) => l.at_z(z),
        })
    }

    /// The closed interval outside which the density vanishes.
    pub fn support(&self) -> (f64, f64) {
        match &self.shape {
            Shape::Curve(c) => c.support(),
            Shape::LogNormal(l) => l.support(),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Draws one variate.
    ///
    /// # Errors
    /// [`Error::NegativeDensity`] for an Edgeworth model that goes negative.
    pub fn sample(&self, rng: &mut RandomSource) -> Result<f64> {
        Ok(match &self.shape {
            Shape::Gaussian { mu, sigma } => mu + sigma * rng.next_gaussian(),
            Shape::Dimidiated { m, sp, sm } => {
                let z = rng.next_gaussian();
                m + if z < 0.0 { sm * z } else { sp * z }
            }
            Shape::Curve(c) => c.at(rng.next_gaussian()),
            Shape::Fechner(f) => f.sample(rng),
            Shape::Edgeworth(e) => {
                if e.goes_negative() {
                    return Err(Error::NegativeDensity { family: "edgeworth" });
                }
                e.quantile(rng.next_uniform().max(f64::MIN_POSITIVE))?
            }
            Shape::SkewNormal(s) => s.sample(rng),
            Shape::Johnson(j) => j.at_z(rng.next_gaussian()),
            Shape::LogNormal(l) => l.at_z(rng.next_gaussian()),
        })
    }

    /// The 15.87%, 50% and 84.13% points computed from the distribution
    /// function, which may differ from [`quantiles`](Self::quantiles) for a
    /// transformation that is not monotone.
    pub fn central_interval(&self) -> Result<(f64, f64, f64)> {
        Ok((self.quantile(ONE_SIGMA_LOW)?, self.quantile(0.5)?, self.quantile(ONE_SIGMA_HIGH)?))
    }
}

use alloc::vec::Vec;
use libm::{fabs, sqrt};

use super::{CombinationReport, Estimate, GoodnessOfFit, PdfTerm};
use crate::numeric::{gauss_cdf, gauss_pdf, gauss_quantile};
use crate::pdf::{pdf_from_moments, MomentTriple, PdfFamily, PdfModel, QuantileTriple};
use crate::{Error, Result};

fn check_coefficient(c: f64) -> Result<()> {
    if c == 0.0 || !c.is_finite() {
        return Err(Error::InvalidParameter { what: "coefficient", value: c });
    }
    Ok(())
}

/// Combines the errors of a sum `Σ cᵢxᵢ` of independent variables by adding
/// their mean, variance and third central moment, then fits `family` to the
/// total.
///
/// # Errors
/// [`Error::Empty`] with no terms; [`Error::UnrepresentableSkewness`] when
/// `family` cannot reach the combined skewness.
pub fn combine_pdf_errors(terms: &[PdfTerm], family: PdfFamily) -> Result<CombinationReport> {
    if terms.is_empty() {
        return Err(Error::Empty);
    }
    let (mut mean, mut var, mut third, mut medians) = (0.0, 0.0, 0.0, 0.0);
    for t in terms {
        check_coefficient(t.coefficient)?;
        let m = t.model.moments().scaled(t.coefficient);
        mean += m.mean;
        var += m.variance;
        third += m.third;
        medians += t.coefficient * t.model.quantiles().median;
    }
    let moments = MomentTriple::new(mean, var, third)?;
    let model = pdf_from_moments(family, moments)?;
    let q = model.quantiles();
    Ok(CombinationReport {
        result: Estimate::Quantiles(q),
        moments: Some(moments),
        median_shift: Some(q.median - medians),
        weights: Vec::new(),
        gof: None,
        model: Some(model),
    })
}

/// Adds positive errors in quadrature and negative errors in quadrature.
/// This ignores how skewness shrinks under convolution and is provided only
/// for comparison.
pub fn naive_quadrature_combination(terms: &[PdfTerm]) -> Result<QuantileTriple> {
    if terms.is_empty() {
        return Err(Error::Empty);
    }
    let (mut centre, mut p2, mut m2) = (0.0, 0.0, 0.0);
    for t in terms {
        check_coefficient(t.coefficient)?;
        let q = t.model.quantiles();
        let c = t.coefficient;
        let (p, m) = if c < 0.0 { (q.sigma_minus, q.sigma_plus) } else { (q.sigma_plus, q.sigma_minus) };
        centre += c * q.median;
        p2 += c * c * p * p;
        m2 += c * c * m * m;
    }
    QuantileTriple::new(centre, sqrt(p2), sqrt(m2))
}

/// Exact density of the sum of two independent dimidiated Gaussians.
#[derive(Debug, Clone, Copy)]
pub struct DimidiatedSum {
    centre: f64,
    first: (f64, f64),
    second: (f64, f64),
}

/// The density of `x + y` for dimidiated `x` and `y`, in closed form.
///
/// # Errors
/// [`Error::MixedFamilies`] unless both models are dimidiated.
pub fn convolve_dimidiated_exact(m1: &PdfModel, m2: &PdfModel) -> Result<DimidiatedSum> {
    if m1.family() != PdfFamily::Dimidiated || m2.family() != PdfFamily::Dimidiated {
        return Err(Error::MixedFamilies);
    }
    let (q1, q2) = (m1.quantiles(), m2.quantiles());
    Ok(DimidiatedSum {
        centre: q1.median + q2.median,
        first: (q1.sigma_plus, q1.sigma_minus),
        second: (q2.sigma_plus, q2.sigma_minus),
    })
}

impl DimidiatedSum {
    /// Each input is an equal mixture of two half Gaussians, so the sum is
    /// a mixture of four half-Gaussian convolutions. For halves of widths
    /// `a` and `b` the integrand is a Gaussian in the first variable, and
    /// each term is `φ(u/s)/s` times the probability that this Gaussian
    /// falls where both halves are supported, with `s² = a² + b²`.
    pub fn density(&self, z: f64) -> f64 {
        let u = z - self.centre;
        let mut total = 0.0;
        for (s1, a) in [(1.0, self.first.0), (-1.0, self.first.1)] {
            for (s2, b) in [(1.0, self.second.0), (-1.0, self.second.1)] {
                let s = sqrt(a * a + b * b);
                let mu = u * a * a / (s * s);
                let tau = a * b / s;
                // Interval for the first variable: sign s1 and u − x1 of sign s2.
                let (lo, hi) = match (s1 > 0.0, s2 > 0.0) {
                    (true, true) => (0.0, u),
                    (false, false) => (u, 0.0),
                    (true, false) => (u.max(0.0), f64::INFINITY),
                    (false, true) => (f64::NEG_INFINITY, u.min(0.0)),
                };
                if hi <= lo {
                    continue;
                }
                let p = gauss_cdf((hi - mu) / tau) - gauss_cdf((lo - mu) / tau);
                total += gauss_pdf(u / s) / s * p;
            }
        }
        total
    }

    /// Sum of the two medians.
    pub fn centre(&self) -> f64 {
        self.centre
    }

    /// An interval holding all but a negligible fraction of the probability.
    pub fn range(&self) -> (f64, f64) {
        let w = |p: (f64, f64), q: (f64, f64)| 12.0 * sqrt(p.0 * p.0 + q.0 * q.0).max(sqrt(p.1 * p.1 + q.1 * q.1));
        let r = w(self.first, self.second);
        (self.centre - r, self.centre + r)
    }
}

/// Combines results for one quantity with inverse-variance weights on the
/// means, then fits the family of the first input to the combined moments.
///
/// # Errors
/// [`Error::Empty`]; [`Error::MixedFamilies`] when inputs differ in family
/// and `allow_mixed` is false.
pub fn combine_pdf_results(inputs: &[PdfModel], allow_mixed: bool) -> Result<CombinationReport> {
    let first = inputs.first().ok_or(Error::Empty)?;
    if !allow_mixed && inputs.iter().any(|m| m.family() != first.family()) {
        return Err(Error::MixedFamilies);
    }
    let inv: Vec<f64> = inputs.iter().map(|m| 1.0 / m.moments().variance).collect();
    let total: f64 = inv.iter().sum();
    let weights: Vec<f64> = inv.iter().map(|w| w / total).collect();
    let (mut mean, mut var, mut third) = (0.0, 0.0, 0.0);
    for (m, &w) in inputs.iter().zip(&weights) {
        let mo = m.moments();
        mean += w * mo.mean;
        var += w * w * mo.variance;
        third += w * w * w * mo.third;
    }
    let moments = MomentTriple::new(mean, var, third)?;
    let model = pdf_from_moments(first.family(), moments)?;
    Ok(CombinationReport {
        result: Estimate::Quantiles(model.quantiles()),
        moments: Some(moments),
        median_shift: None,
        weights,
        gof: None,
        model: Some(model),
    })
}

/// How far a value lies from a measurement, judged by the measurement's
/// density in the direction of the deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Compatibility {
    /// Twice the tail probability beyond `reference` on its side of the
    /// median.
    pub p_value: f64,
    /// The Gaussian deviation with the same two-sided probability.
    pub sigma: f64,
}

pub fn pdf_compatibility(measurement: &PdfModel, reference: f64) -> Compatibility {
    let f = measurement.cdf(reference);
    let tail = f.min(1.0 - f).max(0.0);
    let p_value = (2.0 * tail).min(1.0);
    let sigma = if tail <= 0.0 {
        f64::INFINITY
    } else {
        gauss_quantile(tail).map_or(f64::INFINITY, |z| fabs(z.min(0.0)))
    };
    Compatibility { p_value, sigma }
}

/// Sum of the squared equivalent deviations of every measurement from
/// `reference`, with `N − 1` degrees of freedom.
///
/// # Errors
/// [`Error::Empty`] with no measurements.
pub fn pdf_set_compatibility(measurements: &[PdfModel], reference: f64) -> Result<GoodnessOfFit> {
    if measurements.is_empty() {
        return Err(Error::Empty);
    }
    let chi2 = measurements.iter().map(|m| {
        let s = pdf_compatibility(m, reference).sigma;
        s * s
    });
    Ok(GoodnessOfFit::new(chi2.sum(), measurements.len() - 1))
}

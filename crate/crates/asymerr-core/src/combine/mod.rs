//! Combination of errors on one result and of several results for one
//! quantity, for both density and likelihood descriptions.

mod lnl;
mod pdf;

#[cfg(test)]
mod tests;

use alloc::vec::Vec;

use crate::lnl::{LnLModel, LnLTriple};
use crate::numeric::chi2_sf;
use crate::pdf::{MomentTriple, PdfModel, QuantileTriple};

pub use lnl::{combine_lnl_errors, combine_lnl_results, profile_lnl_errors, ProfilePoint};
pub use pdf::{
    combine_pdf_errors, combine_pdf_results, convolve_dimidiated_exact, naive_quadrature_combination,
    pdf_compatibility, pdf_set_compatibility, Compatibility, DimidiatedSum,
};

/// A density and the partial derivative of the output with respect to it.
#[derive(Debug, Clone)]
pub struct PdfTerm {
    pub model: PdfModel,
    pub coefficient: f64,
}

/// A likelihood curve and the partial derivative of the output with respect
/// to its parameter.
#[derive(Debug, Clone)]
pub struct LnLTerm {
    pub model: LnLModel,
    pub coefficient: f64,
}

impl PdfTerm {
    pub fn new(model: PdfModel, coefficient: f64) -> Self {
        Self { model, coefficient }
    }
}

impl LnLTerm {
    pub fn new(model: LnLModel, coefficient: f64) -> Self {
        Self { model, coefficient }
    }
}

/// The combined value with its errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Estimate {
    /// Median and the distances to the 15.87% and 84.13% points.
    Quantiles(QuantileTriple),
    /// Peak and the distances to the `Δln L = −½` points.
    LnL(LnLTriple),
}

impl Estimate {
    pub fn central(&self) -> f64 {
        match self {
            Estimate::Quantiles(q) => q.median,
            Estimate::LnL(t) => t.a_hat,
        }
    }

    pub fn sigma_plus(&self) -> f64 {
        match self {
            Estimate::Quantiles(q) => q.sigma_plus,
            Estimate::LnL(t) => t.sigma_plus,
        }
    }

    pub fn sigma_minus(&self) -> f64 {
        match self {
            Estimate::Quantiles(q) => q.sigma_minus,
            Estimate::LnL(t) => t.sigma_minus,
        }
    }
}

/// Wilks statistic `−2Δln L`, its degrees of freedom and upper-tail
/// probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoodnessOfFit {
    pub chi2: f64,
    pub ndof: usize,
    pub p_value: f64,
}

impl GoodnessOfFit {
    pub fn new(chi2: f64, ndof: usize) -> Self {
        let chi2 = chi2.max(0.0);
        let p_value = if ndof == 0 { 1.0 } else { chi2_sf(chi2, ndof as f64).clamp(0.0, 1.0) };
        Self { chi2, ndof, p_value }
    }
}

/// Outcome of a combination.
#[derive(Debug, Clone)]
pub struct CombinationReport {
    pub result: Estimate,
    /// Moments of the combination (density paths only).
    pub moments: Option<MomentTriple>,
    /// Combined median minus the sum of the scaled input medians (error
    /// combination of densities only).
    pub median_shift: Option<f64>,
    /// Normalized weights of the inputs (result combination only).
    pub weights: Vec<f64>,
    pub gof: Option<GoodnessOfFit>,
    /// The fitted output density (density paths only).
    pub model: Option<PdfModel>,
}

/// The goodness of fit carried by a likelihood result combination.
pub fn goodness_of_fit(report: &CombinationReport) -> Option<GoodnessOfFit> {
    report.gof
}

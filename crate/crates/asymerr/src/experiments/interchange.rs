//! The same pair of errors combined as densities and as likelihoods.

use asymerr_core::combine::{combine_lnl_errors, combine_pdf_errors, LnLTerm, PdfTerm};
use asymerr_core::lnl::{lnl_from_triple, LnLFamily, LnLTriple};
use asymerr_core::pdf::{pdf_from_quantiles, PdfFamily, QuantileTriple};
use asymerr_core::Result;

use super::{Check, ExperimentOutcome, ExperimentSpec, NumericTable};

type Input = (f64, f64, f64);

fn pdf_sum(family: PdfFamily, inputs: &[Input]) -> Result<(f64, f64, f64)> {
    let terms = inputs
        .iter()
        .map(|&(v, p, m)| Ok(PdfTerm::new(pdf_from_quantiles(family, QuantileTriple::new(v, p, m)?)?, 1.0)))
        .collect::<Result<Vec<_>>>()?;
    let e = combine_pdf_errors(&terms, family)?.result;
    Ok((e.central(), e.sigma_plus(), e.sigma_minus()))
}

fn lnl_sum(family: LnLFamily, inputs: &[Input]) -> Result<(f64, f64, f64)> {
    let terms = inputs
        .iter()
        .map(|&(v, p, m)| Ok(LnLTerm::new(lnl_from_triple(family, LnLTriple::new(v, p, m)?)?, 1.0)))
        .collect::<Result<Vec<_>>>()?;
    let e = combine_lnl_errors(&terms)?.result;
    Ok((e.central(), e.sigma_plus(), e.sigma_minus()))
}

fn row(r: Result<(f64, f64, f64)>) -> Vec<f64> {
    r.map_or(vec![f64::NAN; 3], |(v, p, m)| vec![v, p, m])
}

/// Every density and likelihood family applied to `inputs`; refused
/// combinations are NaN.
pub fn sum_table(name: &str, inputs: &[Input]) -> NumericTable {
    let mut t = NumericTable::new(name, &["value", "sigma+", "sigma-"]);
    for f in PdfFamily::ALL {
        t.push(format!("pdf {f}"), row(pdf_sum(f, inputs)));
    }
    for f in LnLFamily::ALL {
        t.push(format!("lnl {f}"), row(lnl_sum(f, inputs)));
    }
    let q = |k: usize| inputs.iter().map(|i| [i.1, i.2][k].powi(2)).sum::<f64>().sqrt();
    t.push("wrong: separate quadrature", vec![inputs.iter().map(|i| i.0).sum(), q(0), q(1)]);
    t
}

/// Mean of column `col` over finite rows whose label starts with `prefix`.
fn cluster_mean(t: &NumericTable, prefix: &str, col: usize) -> f64 {
    let v: Vec<f64> =
        t.rows.iter().filter(|(l, r)| l.starts_with(prefix) && r[col].is_finite()).map(|(_, r)| r[col]).collect();
    v.iter().sum::<f64>() / v.len() as f64
}

pub(super) fn run(_spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let mut out = ExperimentOutcome::new("interchange");
    let pair = sum_table("two errors +2 -1", &[(0.0, 2.0, 1.0), (0.0, 2.0, 1.0)]);
    let shifted = sum_table("results 1 +2 -1 and 2 +2 -1", &[(1.0, 2.0, 1.0), (2.0, 2.0, 1.0)]);
    let symmetric = sum_table("two errors +1 -1", &[(0.0, 1.0, 1.0), (0.0, 1.0, 1.0)]);

    let mut clusters = NumericTable::new("cluster means", &["sigma+", "sigma-"]);
    let (pp, pm) = (cluster_mean(&pair, "pdf ", 1), cluster_mean(&pair, "pdf ", 2));
    let (lp, lm) = (cluster_mean(&pair, "lnl ", 1), cluster_mean(&pair, "lnl ", 2));
    clusters.push("pdf families", vec![pp, pm]);
    clusters.push("lnl families", vec![lp, lm]);
    out.checks.push(Check::above("pdf minus lnl cluster mean, sigma+", pp - lp, 0.0));
    out.checks.push(Check::above("pdf minus lnl cluster mean, sigma-", pm - lm, 0.0));

    let refused = |label: &str| pair.get(label).is_some_and(|r| r[1].is_nan());
    out.checks.push(Check::holds("lnl edgeworth refuses +2 -1", refused("lnl edgeworth")));
    out.checks.push(Check::holds("pdf fechner refuses +2 -1", refused("pdf fechner")));

    let worst = symmetric
        .rows
        .iter()
        .filter(|(l, _)| !l.starts_with("wrong"))
        .map(|(_, r)| (r[1] - 2f64.sqrt()).abs().max((r[2] - 2f64.sqrt()).abs()))
        .fold(0.0, f64::max);
    out.checks.push(Check::below("symmetric pair: largest deviation from sqrt 2", worst, 1e-6));

    out.tables.extend([pair, shifted, symmetric, clusters]);
    Ok(out)
}

//! Poisson counts summed or averaged from their quoted errors alone, against
//! the exact likelihood of the total.

use asymerr_core::combine::{combine_lnl_errors, combine_lnl_results, LnLTerm};
use asymerr_core::lnl::{lnl_from_triple, LnLFamily, LnLModel};
use asymerr_core::Result;

use super::{Check, ExperimentOutcome, ExperimentSpec, NumericTable};
use crate::exact::poisson_triple;

fn model(family: LnLFamily, n: u64) -> Result<LnLModel> {
    lnl_from_triple(family, poisson_triple(n)?)
}

/// Linear-variance sum of the exact Poisson results for `counts`.
pub fn summed(counts: &[u64]) -> Result<(f64, f64, f64)> {
    let terms = counts
        .iter()
        .map(|&n| Ok(LnLTerm::new(model(LnLFamily::LinearVariance, n)?, 1.0)))
        .collect::<Result<Vec<_>>>()?;
    let e = combine_lnl_errors(&terms)?.result;
    Ok((e.central(), e.sigma_plus(), e.sigma_minus()))
}

pub(super) fn run(_spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let mut out = ExperimentOutcome::new("backgrounds");

    let mut sums = NumericTable::new("sum of counts (linear variance)", &["total", "sigma+", "sigma-"]);
    let exact = poisson_triple(9)?;
    sums.push("exact 9", vec![exact.a_hat, exact.sigma_plus, exact.sigma_minus]);
    for (label, counts, want) in [
        ("4 + 5", vec![4u64, 5], (3.333, 2.668)),
        ("3 + 3 + 3", vec![3; 3], (3.323, 2.659)),
        ("nine 1s", vec![1; 9], (3.269, 2.610)),
    ] {
        let (t, p, m) = summed(&counts)?;
        sums.push(label, vec![t, p, m]);
        out.checks.push(Check::near(&format!("{label}: sigma+"), p, want.0, 2e-3));
        out.checks.push(Check::near(&format!("{label}: sigma-"), m, want.1, 2e-3));
    }
    out.checks.push(Check::near("exact 9: sigma+", exact.sigma_plus, 3.342, 1e-3));
    out.checks.push(Check::near("exact 9: sigma-", exact.sigma_minus, 2.676, 1e-3));
    out.tables.push(sums);

    let ten = poisson_triple(10)?;
    let mut pairs = NumericTable::new(
        "average of two counts summing to 10",
        &["linear-sigma", "+", "-", "linear-variance", "+", "-", "skew-normal", "+", "-", "chi2", "p"],
    );
    pairs.push("ideal", [5.0, ten.sigma_plus / 2.0, ten.sigma_minus / 2.0].repeat(3).into_iter().chain([0.0, 1.0]).collect());
    for n1 in 5..=9u64 {
        let mut row = Vec::new();
        let mut gof = (f64::NAN, f64::NAN);
        for family in [LnLFamily::LinearSigma, LnLFamily::LinearVariance, LnLFamily::SkewNormal] {
            match model(family, n1).and_then(|a| combine_lnl_results(&[a, model(family, 10 - n1)?])) {
                Ok(rep) => {
                    row.extend([rep.result.central(), rep.result.sigma_plus(), rep.result.sigma_minus()]);
                    if family == LnLFamily::LinearVariance {
                        let g = rep.gof.expect("result combination carries a goodness of fit");
                        gof = (g.chi2, g.p_value);
                    }
                }
                Err(_) => row.extend([f64::NAN; 3]),
            }
        }
        row.extend([gof.0, gof.1]);
        if n1 == 5 {
            out.checks.push(Check::near("5 and 5, linear sigma: sigma+", row[1], 1.737, 1e-3));
            out.checks.push(Check::near("5 and 5, linear sigma: sigma-", row[2], 1.408, 1e-3));
            out.checks.push(Check::near("5 and 5, linear variance: sigma+", row[4], 1.747, 1e-3));
            out.checks.push(Check::near("5 and 5, linear variance: sigma-", row[5], 1.415, 1e-3));
        }
        pairs.push(format!("{n1} and {}", 10 - n1), row);
    }
    out.checks.push(Check::near("ideal average: sigma+", ten.sigma_plus / 2.0, 1.752, 1e-3));
    out.checks.push(Check::near("ideal average: sigma-", ten.sigma_minus / 2.0, 1.419, 1e-3));
    out.tables.push(pairs);
    Ok(out)
}

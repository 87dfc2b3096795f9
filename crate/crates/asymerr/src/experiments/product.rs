//! `N = L·σ·F` with a well-known luminosity and asymmetric errors on the
//! cross section and branching fraction, propagated to first order.

use asymerr_core::combine::{combine_lnl_errors, LnLTerm};
use asymerr_core::lnl::{lnl_from_triple, LnLFamily, LnLTriple};
use asymerr_core::Result;

use super::{Check, ExperimentOutcome, ExperimentSpec, NumericTable};

pub const LUMINOSITY: f64 = 1000.0;
pub const CROSS_SECTION: (f64, f64, f64) = (12.3, 0.4, 0.5);
pub const BRANCHING: (f64, f64, f64) = (0.12, 0.01, 0.02);

/// Expected events with the errors of `family`.
pub fn expected_events(family: LnLFamily) -> Result<(f64, f64, f64)> {
    let (s, sp, sm) = CROSS_SECTION;
    let (f, fp, fm) = BRANCHING;
    let terms = [
        LnLTerm::new(lnl_from_triple(family, LnLTriple::new(s, sp, sm)?)?, LUMINOSITY * f),
        LnLTerm::new(lnl_from_triple(family, LnLTriple::new(f, fp, fm)?)?, LUMINOSITY * s),
    ];
    let e = combine_lnl_errors(&terms)?.result;
    // The profile is built about the scaled peaks; the quoted value is the product.
    Ok((LUMINOSITY * s * f, e.sigma_plus(), e.sigma_minus()))
}

pub(super) fn run(_spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let mut out = ExperimentOutcome::new("product");
    let mut t = NumericTable::new("expected events", &["N", "sigma+", "sigma-"]);
    for (family, want) in [(LnLFamily::LinearSigma, (136.0, 250.0)), (LnLFamily::LinearVariance, (137.0, 251.0))] {
        let (n, p, m) = expected_events(family)?;
        t.push(family.name(), vec![n, p, m]);
        out.checks.push(Check::near(&format!("{}: N", family.name()), n, 1476.0, 1.0));
        out.checks.push(Check::near(&format!("{}: sigma+", family.name()), p, want.0, 1.0));
        out.checks.push(Check::near(&format!("{}: sigma-", family.name()), m, want.1, 1.0));
    }
    out.tables.push(t);
    Ok(out)
}

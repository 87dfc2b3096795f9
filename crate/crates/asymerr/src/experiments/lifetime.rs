//! Two lifetime results from three decays each, combined from their quoted
//! errors alone and compared with the answer from all six decay times.

use asymerr_core::combine::combine_lnl_results;
use asymerr_core::lnl::{lnl_from_triple, LnLFamily, LnLTriple};
use asymerr_core::Result;

use super::{Check, ExperimentOutcome, ExperimentSpec, NumericTable};
use crate::exact::lifetime_triple;

pub const FIRST: [f64; 3] = [1.241, 0.592, 0.988];
pub const SECOND: [f64; 3] = [0.834, 2.964, 0.176];

fn row(t: &LnLTriple) -> Vec<f64> {
    vec![t.a_hat, t.sigma_plus, t.sigma_minus]
}

pub(super) fn run(_spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let t1 = lifetime_triple(&FIRST)?;
    let t2 = lifetime_triple(&SECOND)?;
    let all: Vec<f64> = FIRST.iter().chain(&SECOND).copied().collect();
    let t12 = lifetime_triple(&all)?;

    let mut out = ExperimentOutcome::new("lifetime");
    let mut exact = NumericTable::new("exponential likelihood", &["tau", "sigma+", "sigma-"]);
    exact.push("first three", row(&t1));
    exact.push("second three", row(&t2));
    exact.push("all six", row(&t12));
    out.tables.push(exact);

    let mut table = NumericTable::new("combination of the two quoted results", &["tau", "sigma+", "sigma-"]);
    table.push("exact (all six)", row(&t12));
    for family in LnLFamily::ALL {
        let combined = lnl_from_triple(family, t1)
            .and_then(|a| Ok((a, lnl_from_triple(family, t2)?)))
            .and_then(|(a, b)| combine_lnl_results(&[a, b]));
        match combined {
            Ok(rep) => {
                let e = rep.result;
                table.push(family.to_string(), vec![e.central(), e.sigma_plus(), e.sigma_minus()]);
            }
            Err(_) => table.push(family.to_string(), vec![f64::NAN; 3]),
        }
    }
    let q = |a: f64, b: f64| (a * a + b * b).sqrt() / 2.0;
    table.push(
        "wrong: mean, errors in quadrature",
        vec![0.5 * (t1.a_hat + t2.a_hat), q(t1.sigma_plus, t2.sigma_plus), q(t1.sigma_minus, t2.sigma_minus)],
    );

    for (name, t, want) in [
        ("first three", &t1, [0.940, 0.841, 0.385]),
        ("second three", &t2, [1.325, 1.184, 0.542]),
        ("all six", &t12, [1.1325, 0.6225, 0.3598]),
    ] {
        for (what, got, w) in [("tau", t.a_hat, want[0]), ("sigma+", t.sigma_plus, want[1]), ("sigma-", t.sigma_minus, want[2])] {
            out.checks.push(Check::near(&format!("{name}: {what}"), got, w, 1e-3));
        }
    }
    for (family, want) in [
        (LnLFamily::LinearSigma, [1.1323, 0.6213, 0.3604]),
        (LnLFamily::LinearVariance, [1.1318, 0.6249, 0.3577]),
    ] {
        let got = table.get(family.name()).expect("row present");
        for (i, what) in ["tau", "sigma+", "sigma-"].iter().enumerate() {
            out.checks.push(Check::near(&format!("{}: {what}", family.name()), got[i], want[i], 1e-3));
        }
    }
    let refused = table.get(LnLFamily::Edgeworth.name()).is_some_and(|r| r[0].is_nan());
    out.checks.push(Check::holds("edgeworth refuses these asymmetries", refused));
    out.tables.push(table);
    Ok(out)
}

//! A point source seen by a disc counter of radius `r` at distance
//! `x ± σₓ`. The rate is `R = A(x)·n` with `A(x) = 2/(1 − x/√(r² + x²))`,
//! the inverse solid-angle fraction. The Poisson error on `n` and the
//! geometric error on `A` are combined as linear-sigma likelihoods, once
//! with the geometric errors as quoted and once with them interchanged, and
//! each toy checks whether the true rate lies inside the profiled
//! `Δln L = −½` region.

use asymerr_core::combine::{combine_lnl_errors, LnLTerm};
use asymerr_core::lnl::{lnl_from_triple, LnLFamily, LnLModel, LnLTriple};
use asymerr_core::numeric::{maximize, ONE_SIGMA_HIGH, ONE_SIGMA_LOW};
use asymerr_core::Result;

use super::{run_chunks, Check, ExperimentOutcome, ExperimentSpec, NumericTable};
use crate::exact::poisson_table;

const RADIUS: f64 = 1.0;
const DISTANCE: f64 = 5.0;
const DISTANCE_ERROR: f64 = 0.3;
const COUNTS: f64 = 50.0;

/// Inverse fraction of the full solid angle covered by the disc.
pub fn a_factor(x: f64) -> f64 {
    2.0 / (1.0 - x / (RADIUS * RADIUS + x * x).sqrt())
}

/// `A` at `x` with the shifts of `A` at `x ± σ`.
pub fn a_factor_triple(x: f64, sigma: f64) -> (f64, f64, f64) {
    let a = a_factor(x);
    (a, a_factor(x + sigma) - a, a - a_factor(x - sigma))
}

fn linear_sigma(sp: f64, sm: f64) -> Result<LnLModel> {
    lnl_from_triple(LnLFamily::LinearSigma, LnLTriple::new(0.0, sp, sm)?)
}

/// Whether `u` lies inside the `Δln L = −½` region of the sum of two curves
/// that both peak at zero.
fn covers(first: &LnLModel, second: &LnLModel, u: f64) -> bool {
    if u == 0.0 {
        return true;
    }
    let f = |a: f64| {
        let v = first.log_likelihood(a).and_then(|x| Ok(x + second.log_likelihood(u - a)?));
        v.unwrap_or(-1e300)
    };
    let tol = 1e-9 * u.abs();
    maximize(f, u.min(0.0), u.max(0.0), tol).value >= -0.5
}

#[derive(Default)]
struct Tally {
    n: u64,
    quoted: u64,
    interchanged: u64,
    distance: u64,
}

pub(super) fn run(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let (a0, ap, am) = a_factor_triple(DISTANCE, DISTANCE_ERROR);
    let poisson = poisson_table(400)?;
    let r_true = a0 * COUNTS;
    let stat0 = poisson[COUNTS as usize - 1];
    let (syst_p, syst_m) = (COUNTS * ap, COUNTS * am);

    let nominal = |sp: f64, sm: f64| -> Result<LnLTriple> {
        let terms = [
            LnLTerm::new(linear_sigma(a0 * stat0.sigma_plus, a0 * stat0.sigma_minus)?, 1.0),
            LnLTerm::new(linear_sigma(sp, sm)?, 1.0),
        ];
        match combine_lnl_errors(&terms)?.result {
            asymerr_core::combine::Estimate::LnL(t) => Ok(t),
            asymerr_core::combine::Estimate::Quantiles(q) => LnLTriple::new(q.median, q.sigma_plus, q.sigma_minus),
        }
    };
    let quoted = nominal(syst_p, syst_m)?;
    let swapped = nominal(syst_m, syst_p)?;

    let chunks = run_chunks(spec.seed, spec.replicas, |rng, count| -> Result<Tally> {
        let mut t = Tally::default();
        for _ in 0..count {
            // A zero count (probability e⁻⁵⁰) is read as one.
            let n = rng.next_poisson(COUNTS).max(1);
            let x = DISTANCE + DISTANCE_ERROR * rng.next_gaussian();
            let (a, p, m) = a_factor_triple(x, DISTANCE_ERROR);
            let s = poisson.get(n as usize - 1).copied().map_or_else(|| crate::exact::poisson_triple(n), Ok)?;
            let nf = n as f64;
            let stat = linear_sigma(a * s.sigma_plus, a * s.sigma_minus)?;
            let u = r_true - a * nf;
            t.n += 1;
            t.quoted += covers(&stat, &linear_sigma(nf * p, nf * m)?, u) as u64;
            t.interchanged += covers(&stat, &linear_sigma(nf * m, nf * p)?, u) as u64;
            t.distance += ((x - DISTANCE).abs() <= DISTANCE_ERROR) as u64;
        }
        Ok(t)
    });
    let mut tally = Tally::default();
    for c in chunks {
        let c = c?;
        tally.n += c.n;
        tally.quoted += c.quoted;
        tally.interchanged += c.interchanged;
        tally.distance += c.distance;
    }
    let frac = |k: u64| k as f64 / tally.n as f64;
    let se = |p: f64| (p * (1.0 - p) / tally.n as f64).sqrt();
    let (c1, c2, c0) = (frac(tally.quoted), frac(tally.interchanged), frac(tally.distance));

    let mut out = ExperimentOutcome::new("coverage");
    let mut inputs = NumericTable::new("nominal result", &["value", "sigma+", "sigma-"]);
    inputs.push("A", vec![a0, ap, am]);
    inputs.push("R statistical", vec![r_true, a0 * stat0.sigma_plus, a0 * stat0.sigma_minus]);
    inputs.push("R systematic", vec![r_true, syst_p, syst_m]);
    inputs.push("total, systematic as quoted", vec![quoted.a_hat, quoted.sigma_plus, quoted.sigma_minus]);
    inputs.push("total, systematic interchanged", vec![swapped.a_hat, swapped.sigma_plus, swapped.sigma_minus]);
    out.tables.push(inputs);
    let mut table = NumericTable::new("coverage (%)", &["coverage", "MC error"]);
    table.push("systematic as quoted", vec![100.0 * c1, 100.0 * se(c1)]);
    table.push("systematic interchanged", vec![100.0 * c2, 100.0 * se(c2)]);
    table.push("distance alone", vec![100.0 * c0, 100.0 * se(c0)]);
    out.tables.push(table);

    out.checks.push(Check::near("A", a0, 103.0, 0.1));
    out.checks.push(Check::near("A sigma+", ap, 12.4, 0.1));
    out.checks.push(Check::near("A sigma-", am, 11.6, 0.1));
    out.checks.push(Check::near("total sigma+, systematic as quoted", quoted.sigma_plus, 971.1, 0.1));
    out.checks.push(Check::near("total sigma-, systematic as quoted", quoted.sigma_minus, 915.6, 0.1));
    out.checks.push(Check::near("total sigma+, systematic interchanged", swapped.sigma_plus, 957.8, 0.1));
    out.checks.push(Check::near("total sigma-, systematic interchanged", swapped.sigma_minus, 931.4, 0.1));
    let gauss = ONE_SIGMA_HIGH - ONE_SIGMA_LOW;
    out.checks.push(Check::near("distance-only coverage (%)", 100.0 * c0, 100.0 * gauss, 100.0 * 4.0 * se(gauss)));
    out.checks.push(Check::near("coverage, systematic as quoted (%)", 100.0 * c1, 67.86, 0.15));
    out.checks.push(Check::near("coverage, systematic interchanged (%)", 100.0 * c2, 67.99, 0.15));
    Ok(out)
}

//! Groups of Poisson counts, each quoted with its `Δln L = −½` errors, are
//! combined with linear-variance likelihoods. If Wilks' theorem held, the
//! goodness-of-fit p-values would be uniform.

use asymerr_core::combine::combine_lnl_results;
use asymerr_core::lnl::{lnl_from_triple, LnLFamily, LnLModel};
use asymerr_core::numeric::chi2_sf;
use asymerr_core::Result;

use super::{run_chunks, Check, ExperimentOutcome, ExperimentSpec, NumericTable};
use crate::exact::poisson_triple;

const BINS: usize = 20;

struct Tally {
    hist: [u64; BINS],
    skipped: u64,
}

pub(super) fn run(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let mean = spec.param("mean", 5.0);
    let group = spec.param("group", 2.0).max(1.0) as usize;
    let top = (mean + 12.0 * mean.sqrt() + 20.0) as u64;
    let models: Vec<LnLModel> = (1..=top)
        .map(|n| poisson_triple(n).and_then(|t| lnl_from_triple(LnLFamily::LinearVariance, t)))
        .collect::<Result<_>>()?;
    let model = |n: u64| -> Result<LnLModel> {
        match models.get(n as usize - 1) {
            Some(m) => Ok(m.clone()),
            None => lnl_from_triple(LnLFamily::LinearVariance, poisson_triple(n)?),
        }
    };

    let chunks = run_chunks(spec.seed, spec.replicas, |rng, count| -> Result<Tally> {
        let mut t = Tally { hist: [0; BINS], skipped: 0 };
        let mut counts = vec![0u64; group];
        let mut inputs = Vec::with_capacity(group);
        for _ in 0..count {
            counts.iter_mut().for_each(|c| *c = rng.next_poisson(mean));
            // The curve of a zero count has no lower error.
            if counts.contains(&0) {
                t.skipped += 1;
                continue;
            }
            inputs.clear();
            for &c in &counts {
                inputs.push(model(c)?);
            }
            let p = combine_lnl_results(&inputs)?.gof.map_or(1.0, |g| g.p_value);
            t.hist[((p * BINS as f64) as usize).min(BINS - 1)] += 1;
        }
        Ok(t)
    });

    let mut hist = [0u64; BINS];
    let mut skipped = 0;
    for c in chunks {
        let c = c?;
        hist.iter_mut().zip(c.hist).for_each(|(h, x)| *h += x);
        skipped += c.skipped;
    }
    let used: u64 = hist.iter().sum();
    let expected = used as f64 / BINS as f64;
    let chi2: f64 = hist.iter().map(|&h| (h as f64 - expected).powi(2) / expected).sum();
    let p_flat = if used == 0 { f64::NAN } else { chi2_sf(chi2, (BINS - 1) as f64) };

    let mut out = ExperimentOutcome::new("wilks");
    let mut table = NumericTable::new("p-value histogram", &["count", "expected"]);
    for (i, &h) in hist.iter().enumerate() {
        let lo = i as f64 / BINS as f64;
        table.push(format!("[{lo:.2}, {:.2})", lo + 1.0 / BINS as f64), vec![h as f64, expected]);
    }
    out.tables.push(table);
    let mut summary = NumericTable::new("flatness", &["value"]);
    summary.push("replicas used", vec![used as f64]);
    summary.push("replicas with a zero count", vec![skipped as f64]);
    summary.push("uniformity chi2 (19 dof)", vec![chi2]);
    summary.push("uniformity p", vec![p_flat]);
    out.tables.push(summary);

    if group == 1 {
        out.checks.push(Check::holds("single results have p = 1", hist[BINS - 1] == used));
    } else if mean <= 5.0 {
        out.checks.push(Check::below("not flat at low mean (uniformity p)", p_flat, 0.01));
    } else if mean >= 20.0 && group >= 10 {
        out.checks.push(Check::above("flat at high mean (uniformity p)", p_flat, 0.01));
    }
    Ok(out)
}


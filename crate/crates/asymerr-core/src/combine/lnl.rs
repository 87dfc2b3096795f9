use alloc::vec;
use alloc::vec::Vec;
use libm::fabs;

use super::{CombinationReport, Estimate, GoodnessOfFit, LnLTerm};
use crate::lnl::{half_crossings, LnLFamily, LnLModel, LnLTriple};
use crate::numeric::{find_root, maximize};
use crate::{Error, Result, Side};

const MAX_ITER: usize = 200;

fn param(m: &LnLModel, name: &str) -> f64 {
    m.params().iter().find(|(k, _)| *k == name).map_or(0.0, |p| p.1)
}

fn typical_width(models: &[LnLModel]) -> f64 {
    let n = models.len() as f64;
    models.iter().map(|m| 0.5 * (m.triple().sigma_plus + m.triple().sigma_minus)).sum::<f64>() / n
}

/// Fixed-point iteration for the peak of a sum of Bartlett curves, halving
/// the step whenever successive corrections alternate in sign.
fn bartlett_peak(models: &[LnLModel], variance: bool, scale: f64) -> Result<(f64, Vec<f64>)> {
    let terms: Vec<(f64, f64, f64)> = models
        .iter()
        .map(|m| {
            let (s, ds) = if variance {
                (param(m, "variance"), param(m, "variance_prime"))
            } else {
                (param(m, "sigma"), param(m, "sigma_prime"))
            };
            (m.triple().a_hat, s, ds)
        })
        .collect();
    let weights = |a: f64| -> Vec<f64> {
        terms
            .iter()
            .map(|&(ah, s, ds)| {
                let d = s + ds * (a - ah);
                if variance {
                    s / (d * d)
                } else {
                    s / (d * d * d)
                }
            })
            .collect()
    };
    let mut a = terms.iter().map(|t| t.0).sum::<f64>() / terms.len() as f64;
    let mut last = 0.0f64;
    let mut damping = 1.0;
    for _ in 0..MAX_ITER {
        let w = weights(a);
        let total: f64 = w.iter().sum();
        let target = terms
            .iter()
            .zip(&w)
            .map(|(&(ah, s, ds), wi)| {
                let shift = if variance { ds / (2.0 * s) * (a - ah) * (a - ah) } else { 0.0 };
                wi * (ah - shift)
            })
            .sum::<f64>()
            / total;
        let delta = target - a;
        if !delta.is_finite() {
            break;
        }
        if delta * last < 0.0 {
            damping *= 0.5;
        }
        a += damping * delta;
        last = delta;
        if fabs(delta) <= 1e-14 * scale {
            let w = weights(a);
            let total: f64 = w.iter().sum();
            return Ok((a, w.into_iter().map(|x| x / total).collect()));
        }
    }
    Err(Error::NonConvergent { what: "combined peak iteration", iterations: MAX_ITER })
}

fn common_domain(models: &[LnLModel]) -> (f64, f64) {
    models.iter().fold((f64::NEG_INFINITY, f64::INFINITY), |(lo, hi), m| {
        let (l, h) = m.domain();
        (lo.max(l), hi.min(h))
    })
}

/// Grid scan, Brent maximization and a final root of the summed slope.
fn generic_peak(models: &[LnLModel], domain: (f64, f64), scale: f64) -> Result<f64> {
    let sum = |a: f64| models.iter().map(|m| m.value_or_neg_inf(a)).sum::<f64>();
    let lo = models.iter().map(|m| m.peak() - 8.0 * m.triple().sigma_minus).fold(f64::INFINITY, f64::min);
    let hi = models.iter().map(|m| m.peak() + 8.0 * m.triple().sigma_plus).fold(f64::NEG_INFINITY, f64::max);
    let lo = lo.max(domain.0);
    let hi = hi.min(domain.1);
    if lo >= hi || lo.is_nan() || hi.is_nan() {
        return Err(Error::NoMaximum);
    }
    let n = 800;
    let at = |i: usize| lo + (hi - lo) * i as f64 / n as f64;
    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..=n {
        let v = sum(at(i));
        if v > best.1 {
            best = (i, v);
        }
    }
    if best.1 == f64::NEG_INFINITY {
        return Err(Error::NoMaximum);
    }
    let (k, _) = best;
    if (k == 0 && lo == domain.0) || (k == n && hi == domain.1) {
        return Err(Error::NoMaximum);
    }
    let (a, b) = (at(k.saturating_sub(1)), at((k + 1).min(n)));
    let m = maximize(sum, a, b, 1e-13 * scale);
    let slope = |x: f64| models.iter().map(|m| m.slope(x).unwrap_or(f64::NAN)).sum::<f64>();
    let h = 1e-6 * scale;
    let (l, r) = ((m.x - h).max(a), (m.x + h).min(b));
    let polished = match find_root(slope, l, r, 1e-15 * scale) {
        Ok(root) if sum(root.value) >= m.value - 1e-12 => root.value,
        _ => m.x,
    };
    if polished <= domain.0 || polished >= domain.1 {
        return Err(Error::NoMaximum);
    }
    Ok(polished)
}

/// Local information `−d²ln L/da²` from the slope.
fn information(m: &LnLModel, a: f64, h: f64) -> f64 {
    let (lo, hi) = m.domain();
    let s = |x: f64| if x > lo && x < hi { m.slope(x).ok() } else { None };
    match (s(a - h), s(a + h)) {
        (Some(l), Some(r)) => (l - r) / (2.0 * h),
        (Some(l), None) => (l - s(a).unwrap_or(l)) / h,
        (None, Some(r)) => (s(a).unwrap_or(r) - r) / h,
        _ => 0.0,
    }
}

/// Combines results for one quantity by summing their log-likelihoods.
///
/// All-linear-sigma and all-linear-variance inputs are solved by weighted
/// iteration; anything else, including mixed families, by direct
/// maximization of the sum over the common domain. The errors are where the
/// sum falls by ½ from its peak.
///
/// # Errors
/// [`Error::Empty`], [`Error::NoMaximum`] when domain clipping leaves no
/// interior peak, [`Error::NonConvergent`] when direct maximization fails,
/// [`Error::NoCrossing`] when the sum never falls by ½.
pub fn combine_lnl_results(inputs: &[LnLModel]) -> Result<CombinationReport> {
    if inputs.is_empty() {
        return Err(Error::Empty);
    }
    let scale = typical_width(inputs);
    let domain = common_domain(inputs);
    let all = |f: LnLFamily| inputs.iter().all(|m| m.family() == f);
    let generic = || -> Result<(f64, Vec<f64>)> {
        let peak = generic_peak(inputs, domain, scale)?;
        let info: Vec<f64> = inputs.iter().map(|m| information(m, peak, 1e-5 * scale)).collect();
        let total: f64 = info.iter().sum();
        Ok((peak, info.into_iter().map(|w| w / total).collect()))
    };
    let (peak, weights) = if all(LnLFamily::LinearSigma) || all(LnLFamily::LinearVariance) {
        // The iteration starts from the mean peak, which can lie outside the
        // common domain when the inputs disagree badly.
        match bartlett_peak(inputs, all(LnLFamily::LinearVariance), scale) {
            Ok((p, w)) if p > domain.0 && p < domain.1 => (p, w),
            _ => generic()?,
        }
    } else {
        generic()?
    };
    if !(peak > domain.0 && peak < domain.1) {
        return Err(Error::NoMaximum);
    }
    let sum = |a: f64| inputs.iter().map(|m| m.value_or_neg_inf(a)).sum::<f64>();
    let (up, dn) = half_crossings(sum, peak, scale / libm::sqrt(inputs.len() as f64), domain)?;
    let best_each: f64 = inputs.iter().map(|m| m.value_or_neg_inf(m.peak())).sum();
    let gof = GoodnessOfFit::new(-2.0 * (sum(peak) - best_each), inputs.len() - 1);
    Ok(CombinationReport {
        result: Estimate::LnL(LnLTriple { a_hat: peak, sigma_plus: up, sigma_minus: dn }),
        moments: None,
        median_shift: None,
        weights,
        gof: Some(gof),
        model: None,
    })
}

/// One point of the profile likelihood of `u = Σ cᵢaᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePoint {
    pub u: f64,
    /// Profile `Δln L` at `u`.
    pub value: f64,
    /// The profiled `cᵢaᵢ`.
    pub parts: Vec<f64>,
}

struct Profiler {
    models: Vec<LnLModel>,
    peaks: Vec<f64>,
    scale: f64,
    min_width: f64,
}

impl Profiler {
    fn new(terms: &[LnLTerm]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Empty);
        }
        let models = terms.iter().map(|t| t.model.rescaled(t.coefficient)).collect::<Result<Vec<_>>>()?;
        let peaks = models.iter().map(|m| m.peak()).collect();
        let scale = typical_width(&models);
        let min_width = models
            .iter()
            .map(|m| m.triple().sigma_plus.min(m.triple().sigma_minus))
            .fold(f64::INFINITY, f64::min);
        Ok(Self { models, peaks, scale, min_width })
    }

    fn centre(&self) -> f64 {
        self.peaks.iter().sum()
    }

    /// `−x/L′(x)` for the `i`th curve at offset `x` from its peak.
    fn weight(&self, i: usize, x: f64) -> Option<f64> {
        let s = self.models[i].slope(self.peaks[i] + x).ok()?;
        let w = -x / s;
        (w.is_finite() && w > 0.0).then_some(w)
    }

    /// Weights just off the peak on the side of `dir`.
    fn initial_weights(&self, dir: f64) -> Vec<f64> {
        (0..self.models.len())
            .map(|i| {
                let t = self.models[i].triple();
                let w = if dir > 0.0 { t.sigma_plus } else { t.sigma_minus };
                self.weight(i, dir * 1e-6 * w).unwrap_or(w * w)
            })
            .collect()
    }

    /// Maximizes `Σ ln Lᵢ` subject to `Σ xᵢ = delta` by iterating
    /// `xᵢ = delta·wᵢ/Σw` with `wᵢ = −xᵢ/L′ᵢ(xᵢ)`, which holds where all
    /// slopes are equal. `w` is both the starting point and the result.
    fn solve(&self, delta: f64, w: &mut Vec<f64>) -> Result<(f64, Vec<f64>)> {
        let n = self.models.len();
        let split = |w: &[f64]| {
            let t: f64 = w.iter().sum();
            w.iter().map(|wi| delta * wi / t).collect::<Vec<f64>>()
        };
        let mut x = split(w);
        let mut last_change: Option<Vec<f64>> = None;
        for _ in 0..MAX_ITER {
            let mut next_w = Vec::with_capacity(n);
            for (i, &xi) in x.iter().enumerate() {
                next_w.push(if xi == 0.0 { w[i] } else { self.weight(i, xi).ok_or(Error::Domain { what: "profiled term", value: xi })? });
            }
            let mut next_x = split(&next_w);
            let change: Vec<f64> = next_x.iter().zip(&x).map(|(a, b)| a - b).collect();
            if let Some(prev) = &last_change {
                let dot: f64 = prev.iter().zip(&change).map(|(a, b)| a * b).sum();
                if dot < 0.0 {
                    for (nw, ow) in next_w.iter_mut().zip(w.iter()) {
                        *nw = 0.5 * (*nw + ow);
                    }
                    next_x = split(&next_w);
                }
            }
            let size = change.iter().fold(0.0f64, |m, c| m.max(fabs(*c)));
            *w = next_w;
            x = next_x;
            if size <= 1e-13 * self.scale {
                let value = (0..n).map(|i| self.models[i].value_or_neg_inf(self.peaks[i] + x[i])).sum();
                return Ok((value, x));
            }
            last_change = Some(change);
        }
        Err(Error::NonConvergent { what: "profile weight iteration", iterations: MAX_ITER })
    }

    fn point(&self, u: f64) -> Result<ProfilePoint> {
        let delta = u - self.centre();
        let dir = if delta >= 0.0 { 1.0 } else { -1.0 };
        let mut w = self.initial_weights(dir);
        let (value, x) = if delta == 0.0 { (0.0, vec![0.0; self.models.len()]) } else { self.solve(delta, &mut w)? };
        let parts = x.iter().zip(&self.peaks).map(|(xi, p)| p + xi).collect();
        Ok(ProfilePoint { u, value, parts })
    }

    /// Steps outwards by `0.05·min σ`, warm-starting each solve, and refines
    /// the first step past `−½`.
    fn crossing(&self, dir: f64) -> Result<f64> {
        let step = 0.05 * self.min_width;
        let mut w = self.initial_weights(dir);
        let mut inner = 0.0;
        for k in 1..=20_000 {
            let delta = dir * step * k as f64;
            let mut trial = w.clone();
            let below = match self.solve(delta, &mut trial) {
                Ok((v, _)) => v <= -0.5,
                Err(Error::Domain { .. }) => true,
                Err(e) => return Err(e),
            };
            if below {
                let warm = w.clone();
                let g = |d: f64| {
                    let mut ww = warm.clone();
                    match self.solve(d, &mut ww) {
                        Ok((v, _)) => v + 0.5,
                        Err(_) => f64::NAN,
                    }
                };
                let g = |d: f64| {
                    let v = g(d);
                    if v.is_nan() {
                        -1.0
                    } else {
                        v
                    }
                };
                // A step can land on the crossing itself, where the two warm
                // starts may round to opposite sides of −½.
                if g(inner) <= 0.0 {
                    return Ok(fabs(inner));
                }
                let r = find_root(g, inner, delta, 1e-12 * self.scale)?;
                return Ok(fabs(r.value));
            }
            w = trial;
            inner = delta;
        }
        Err(Error::NoCrossing { side: if dir > 0.0 { Side::Upper } else { Side::Lower } })
    }
}

/// Errors on `u = Σ cᵢaᵢ` from the profile of the summed log-likelihoods,
/// by Lagrange multipliers.
///
/// # Errors
/// [`Error::Empty`], [`Error::InvalidParameter`] for a zero coefficient,
/// [`Error::NonConvergent`] from the inner iteration, [`Error::NoCrossing`]
/// if the profile never falls by ½.
pub fn combine_lnl_errors(terms: &[LnLTerm]) -> Result<CombinationReport> {
    let p = Profiler::new(terms)?;
    let up = p.crossing(1.0)?;
    let dn = p.crossing(-1.0)?;
    Ok(CombinationReport {
        result: Estimate::LnL(LnLTriple { a_hat: p.centre(), sigma_plus: up, sigma_minus: dn }),
        moments: None,
        median_shift: None,
        weights: Vec::new(),
        gof: None,
        model: None,
    })
}

/// The profile likelihood of `u = Σ cᵢaᵢ` at the given totals.
///
/// # Errors
/// As [`combine_lnl_errors`].
pub fn profile_lnl_errors(terms: &[LnLTerm], totals: &[f64]) -> Result<Vec<ProfilePoint>> {
    let p = Profiler::new(terms)?;
    totals.iter().map(|&u| p.point(u)).collect()
}

#[cfg(test)]
pub(super) fn generic_peak_for_tests(models: &[LnLModel]) -> Result<f64> {
    generic_peak(models, common_domain(models), typical_width(models))
}

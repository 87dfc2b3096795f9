//! Likelihoods known in closed form, used as references.

use asymerr_core::lnl::{half_crossings, LnLTriple};
use asymerr_core::Result;

/// `Δln L = −½` triple of a Poisson mean after observing `n ≥ 1` counts.
pub fn poisson_triple(n: u64) -> Result<LnLTriple> {
    let n = n as f64;
    let f = |mu: f64| if mu > 0.0 { n * (mu / n).ln() - (mu - n) } else { f64::NEG_INFINITY };
    let (up, down) = half_crossings(f, n, n.sqrt(), (0.0, f64::INFINITY))?;
    LnLTriple::new(n, up, down)
}

/// `Δln L = −½` triple of an exponential lifetime from decay times.
pub fn lifetime_triple(times: &[f64]) -> Result<LnLTriple> {
    let n = times.len() as f64;
    let sum: f64 = times.iter().sum();
    let tau = sum / n;
    let f = |t: f64| if t > 0.0 { -n * t.ln() - sum / t } else { f64::NEG_INFINITY };
    let (up, down) = half_crossings(f, tau, tau / n.sqrt(), (0.0, f64::INFINITY))?;
    LnLTriple::new(tau, up, down)
}

/// Every `Δln L = −½` Poisson triple for counts `1..=max`.
pub fn poisson_table(max: u64) -> Result<Vec<LnLTriple>> {
    (1..=max).map(poisson_triple).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_five() {
        // Independent bisection of 5 ln(1 + x/5) − x = −½.
        let t = poisson_triple(5).unwrap();
        assert!((t.sigma_plus - 2.581_105_807_125_11).abs() < 1e-9, "{t:?}");
        assert!((t.sigma_minus - 1.915_915_841_041_474).abs() < 1e-9, "{t:?}");
    }

    #[test]
    fn crossings_are_at_minus_half() {
        for n in [1, 3, 9, 40] {
            let t = poisson_triple(n).unwrap();
            let n = n as f64;
            let f = |mu: f64| n * (mu / n).ln() - (mu - n);
            assert!((f(n + t.sigma_plus) + 0.5).abs() < 1e-9);
            assert!((f(n - t.sigma_minus) + 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn lifetime_peak_is_the_mean() {
        let t = lifetime_triple(&[1.0, 2.0, 3.0]).unwrap();
        assert!((t.a_hat - 2.0).abs() < 1e-15);
        assert!(t.sigma_plus > t.sigma_minus);
    }
}

use libm::{exp, log, sqrt};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Seeded, reproducible source of uniform and Gaussian variates.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), spare: None }
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn next_uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal variate (Marsaglia polar method).
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.next_uniform() - 1.0;
            let v = 2.0 * self.next_uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let k = sqrt(-2.0 * log(s) / s);
                self.spare = Some(v * k);
                return u * k;
            }
        }
    }

    /// Poisson variate by sequential inversion; intended for means up to a
    /// few hundred.
    pub fn next_poisson(&mut self, mean: f64) -> u64 {
        if mean <= 0.0 {
            return 0;
        }
        let u = self.next_uniform();
        let mut k = 0u64;
        let mut p = exp(-mean);
        let mut cdf = p;
        while u >= cdf {
            k += 1;
            p *= mean / k as f64;
            cdf += p;
            if p < 1e-300 && k as f64 > mean {
                break;
            }
        }
        k
    }
}

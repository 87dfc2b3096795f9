//! Logarithmic, generalized Poisson and log logistic-beta curves.

use alloc::vec;
use alloc::vec::Vec;
use libm::{exp, expm1, fabs, log, log1p};

use crate::numeric::{find_root, maximize};
use crate::{Error, Result};

/// `ln(1 + y) − y`, accurate for small `y`.
pub(super) fn log1p_minus(y: f64) -> f64 {
    if fabs(y) < 0.1 {
        let mut term = -y;
        let mut sum = 0.0;
        for k in 2..32 {
            term *= -y;
            sum += term / k as f64;
        }
        -sum
    } else {
        log1p(y) - y
    }
}

/// `−½(ln(1 + γx)/ln β)²`, or the parabola when the errors are equal.
#[derive(Debug, Clone, Copy)]
pub(super) struct Logarithmic {
    gamma: f64,
    log_beta: f64,
    sigma: f64,
}

impl Logarithmic {
    pub(super) fn new(sp: f64, sm: f64) -> Self {
        Self { gamma: (sp - sm) / (sp * sm), log_beta: log1p((sp - sm) / sm), sigma: sp }
    }

    pub(super) fn value(&self, x: f64) -> f64 {
        if self.gamma == 0.0 {
            return -0.5 * x * x / (self.sigma * self.sigma);
        }
        let u = log1p(self.gamma * x) / self.log_beta;
        -0.5 * u * u
    }

    pub(super) fn slope(&self, x: f64) -> f64 {
        if self.gamma == 0.0 {
            return -x / (self.sigma * self.sigma);
        }
        let w = 1.0 + self.gamma * x;
        -log(w) / (self.log_beta * self.log_beta) * self.gamma / w
    }

    pub(super) fn domain(&self) -> (f64, f64) {
        if self.gamma > 0.0 {
            (-1.0 / self.gamma, f64::INFINITY)
        } else if self.gamma < 0.0 {
            (f64::NEG_INFINITY, -1.0 / self.gamma)
        } else {
            (f64::NEG_INFINITY, f64::INFINITY)
        }
    }

    pub(super) fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("beta", exp(self.log_beta)), ("gamma", self.gamma)]
    }
}

/// `𝒩(ln(1 + γy) − γy)` with `y = ±x`, the sign chosen so that the longer
/// tail is on the side of the larger error.
#[derive(Debug, Clone, Copy)]
pub(super) struct Poisson {
    n: f64,
    gamma: f64,
    flip: f64,
    sigma: f64,
}

impl Poisson {
    pub(super) fn new(sp: f64, sm: f64) -> Result<Self> {
        let (p, m, flip) = if sp >= sm { (sp, sm, 1.0) } else { (sm, sp, -1.0) };
        if (p - m) / (p + m) < 1e-9 {
            return Ok(Self { n: 0.0, gamma: 0.0, flip, sigma: sp });
        }
        // h(γ)/γ² where h(γ) = γ(p+m) + ln(1−γm) − ln(1+γp); its root in
        // (0, 1/m) is the solution.
        let reduced = |g: f64| {
            if g * p < 0.1 {
                let mut sum = 0.0;
                let (mut pk, mut mk) = (p * p, m * m);
                let mut gk = 1.0;
                for k in 2..40 {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    sum += (sign * pk - mk) * gk / k as f64;
                    pk *= p;
                    mk *= m;
                    gk *= g;
                }
                sum
            } else {
                (g * (p + m) + log1p(-g * m) - log1p(g * p)) / (g * g)
            }
        };
        let hi = (1.0 - 1e-15) / m;
        let gamma = find_root(reduced, 0.0, hi, 1e-15 * hi)?.value;
        let n = -0.5 / log1p_minus(gamma * p);
        Ok(Self { n, gamma, flip, sigma: sp })
    }

    pub(super) fn value(&self, x: f64) -> f64 {
        if self.gamma == 0.0 {
            return -0.5 * x * x / (self.sigma * self.sigma);
        }
        self.n * log1p_minus(self.gamma * self.flip * x)
    }

    pub(super) fn slope(&self, x: f64) -> f64 {
        if self.gamma == 0.0 {
            return -x / (self.sigma * self.sigma);
        }
        let y = self.flip * x;
        -self.flip * self.n * self.gamma * self.gamma * y / (1.0 + self.gamma * y)
    }

    pub(super) fn domain(&self) -> (f64, f64) {
        if self.gamma == 0.0 {
            (f64::NEG_INFINITY, f64::INFINITY)
        } else if self.flip > 0.0 {
            (-1.0 / self.gamma, f64::INFINITY)
        } else {
            (f64::NEG_INFINITY, 1.0 / self.gamma)
        }
    }

    pub(super) fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("n", self.n), ("gamma", self.gamma), ("sign", self.flip)]
    }
}

/// Shape function `f(u) = c²[(1+A)t − 2 ln(1 + q(eᵗ − 1))]` with `t = u/c`
/// and `q = (1+A)/2`; `ln L = g·f(±x)`.
#[derive(Debug, Clone, Copy)]
struct Logistic {
    a: f64,
    c: f64,
}

impl Logistic {
    fn f(&self, u: f64) -> f64 {
        let t = u / self.c;
        let q = 0.5 * (1.0 + self.a);
        if fabs(t) < 1e-2 {
            // ln(1 + q(eᵗ − 1)) is the Bernoulli cumulant generating function;
            // its series avoids cancelling the linear term when c is large.
            let k2 = q * (1.0 - q);
            let k3 = k2 * (1.0 - 2.0 * q);
            let k4 = k2 * (1.0 - 6.0 * k2);
            let k5 = k3 * (1.0 - 12.0 * k2);
            let k6 = k2 * (1.0 - 30.0 * k2 + 120.0 * k2 * k2);
            return -u * u * (k2 + t * (k3 / 3.0 + t * (k4 / 12.0 + t * (k5 / 60.0 + t * k6 / 360.0))));
        }
        let l = if t > 30.0 { log(q) + t + log1p((1.0 - q) * exp(-t) / q) } else { log1p(q * expm1(t)) };
        self.c * self.c * ((1.0 + self.a) * t - 2.0 * l)
    }

    fn df(&self, u: f64) -> f64 {
        let t = u / self.c;
        let q = 0.5 * (1.0 + self.a);
        let r = if t > 0.0 {
            let e = exp(-t);
            (1.0 - e) / (q + (1.0 - q) * e)
        } else {
            let e = expm1(t);
            e / (1.0 + q * e)
        };
        -0.5 * self.c * (1.0 - self.a * self.a) * r
    }
}

#[derive(Debug, Clone, Copy)]
pub(super) struct LogLogistic {
    shape: Logistic,
    g: f64,
    flip: f64,
    sigma: f64,
}

impl LogLogistic {
    /// Chooses `A` and `c` to make `|f(σ⁺)|` as large as possible (hence
    /// `g` as small as possible) subject to `f(σ⁺) = f(−σ⁻)`.
    pub(super) fn new(sp: f64, sm: f64) -> Result<Self> {
        let (p, m, flip) = if sp >= sm { (sp, sm, 1.0) } else { (sm, sp, -1.0) };
        let a_in = (p - m) / (p + m);
        if a_in < 1e-10 {
            return Ok(Self { shape: Logistic { a: 0.0, c: 1.0 }, g: 0.0, flip, sigma: sp });
        }
        let s = 0.5 * (p + m);
        let (up, um) = (p / s, m / s);
        let c_for = |a: f64| -> Option<f64> {
            let d = |lc: f64| {
                let sh = Logistic { a, c: exp(lc) };
                sh.f(up) - sh.f(-um)
            };
            find_root(d, -30.0, 30.0, 1e-13).ok().map(|r| exp(r.value))
        };
        let objective = |a: f64| match c_for(a) {
            Some(c) => -Logistic { a, c }.f(up),
            None => -1.0,
        };
        let best = maximize(objective, a_in + 1e-9, 1.0 - 1e-9, 1e-10);
        let a = best.x;
        let c = c_for(a).ok_or(Error::NonConvergent { what: "log logistic-beta shape", iterations: 0 })?;
        let unit = Logistic { a, c };
        let g = -0.5 / unit.f(up);
        Ok(Self { shape: Logistic { a, c: c * s }, g: g / (s * s), flip, sigma: sp })
    }

    pub(super) fn value(&self, x: f64) -> f64 {
        if self.g == 0.0 {
            return -0.5 * x * x / (self.sigma * self.sigma);
        }
        self.g * self.shape.f(self.flip * x)
    }

    pub(super) fn slope(&self, x: f64) -> f64 {
        if self.g == 0.0 {
            return -x / (self.sigma * self.sigma);
        }
        self.flip * self.g * self.shape.df(self.flip * x)
    }

    pub(super) fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("g", self.g), ("c", self.shape.c), ("A", self.flip * self.shape.a)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log1p_minus_matches_direct_form() {
        for y in [-0.5, -0.09, -1e-3, 1e-6, 0.05, 0.099, 0.2, 3.0] {
            let direct = log1p(y) - y;
            assert!((log1p_minus(y) - direct).abs() < 1e-15 + 1e-12 * direct.abs(), "{y}");
        }
    }

    #[test]
    fn poisson_five_is_reproduced() {
        // Five counts: ln L = 5 ln(1 + x/5) − x, so γ = 1/5 and 𝒩 = 5.
        let p = Poisson::new(2.5811, 1.9159).unwrap();
        assert!((p.gamma - 0.2).abs() < 1e-4, "{}", p.gamma);
        assert!((p.n - 5.0).abs() < 1e-2, "{}", p.n);
    }

    #[test]
    fn log_logistic_parameters() {
        // Values from an independent bounded search over A with an inner
        // root in ln c.
        for ((sp, sm), (a, c, g)) in [
            ((0.7, 0.5), (0.4232, 0.2250, 8.590)),
            ((0.6, 0.8), (-0.3947, 0.2921, 5.907)),
            ((0.5, 0.4), (0.3519, 0.2211, 13.11)),
        ] {
            let l = LogLogistic::new(sp, sm).unwrap();
            let pr = l.params();
            assert!((pr[2].1 - a).abs() < 2e-4, "A {}", pr[2].1);
            assert!((pr[1].1 - c).abs() < 2e-4, "c {}", pr[1].1);
            assert!((pr[0].1 - g).abs() < 2e-3 * g, "g {}", pr[0].1);
            assert!((l.value(sp) + 0.5).abs() < 1e-10);
            assert!((l.value(-sm) + 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn log_logistic_series_matches_closed_form() {
        for a in [-0.6, 0.0, 0.3] {
            let l = Logistic { a, c: 1.0 };
            for u in [-0.0099, 0.004, 0.0099] {
                let t = u;
                let q = 0.5 * (1.0 + a);
                let direct = (1.0 + a) * t - 2.0 * log1p(q * expm1(t));
                assert!((l.f(u) - direct).abs() < 1e-11 * direct.abs(), "{a} {u}");
            }
        }
    }

    #[test]
    fn log_logistic_near_symmetric_errors_are_anchored() {
        for (sp, sm) in [(2.184_257_813_192_708, 2.186_364_276_447_092), (1.0, 1.0001), (1.0, 1.000_000_1), (1.3, 1.2)] {
            let l = LogLogistic::new(sp, sm).unwrap();
            assert!((l.value(sp) + 0.5).abs() < 1e-10, "{sp} {sm}: {}", l.value(sp));
            assert!((l.value(-sm) + 0.5).abs() < 1e-10, "{sp} {sm}: {}", l.value(-sm));
        }
    }

    #[test]
    fn log_logistic_slope_matches_difference() {
        let l = LogLogistic::new(0.7, 0.5).unwrap();
        for x in [-3.0, -0.4, 0.0, 0.3, 2.0, 40.0] {
            let h = 1e-6;
            let fd = (l.value(x + h) - l.value(x - h)) / (2.0 * h);
            assert!((fd - l.slope(x)).abs() < 1e-6 * (1.0 + fd.abs()), "{x}");
        }
    }
}

//! Shifted log-normal `x = M + s·C·(exp(s·z/δ) − 1)` with `s = ±1`, so the
//! standard normal point `z = 0` maps onto the median `M`.

use libm::{expm1, log, log1p, sqrt};

use crate::numeric::{find_root, gauss_cdf, gauss_pdf};
use crate::Result;

#[derive(Debug, Clone, Copy)]
pub(crate) struct LogNormal {
    m: f64,
    c: f64,
    delta: f64,
    sign: f64,
}

/// Positive root of `y(y+3)² = s²`, where `y = ω − 1`.
pub(crate) fn omega_minus_one(s: f64) -> Result<f64> {
    let s2 = s * s;
    // y(y+3)² exceeds both 9y and y³, which bounds the root from above.
    let hi = (s2 / 9.0).min(libm::cbrt(s2)) * (1.0 + 1e-12);
    Ok(find_root(|y| y * (y + 3.0) * (y + 3.0) - s2, 0.0, hi, 1e-16 * hi)?.value)
}

impl LogNormal {
    /// `None` for a symmetric triple.
    pub(crate) fn from_quantiles(m: f64, sp: f64, sm: f64) -> Option<Self> {
        if sp == sm {
            return None;
        }
        let (big, small, sign) = if sp > sm { (sp, sm, 1.0) } else { (sm, sp, -1.0) };
        let r = big / small;
        Some(LogNormal { m, c: big / (r - 1.0), delta: 1.0 / log(r), sign })
    }

    pub(crate) fn from_moments(mu: f64, v: f64, g: f64) -> Result<Option<Self>> {
        if g == 0.0 {
            return Ok(None);
        }
        let s = g / (v * sqrt(v));
        let y = omega_minus_one(s)?;
        let omega = 1.0 + y;
        let delta = 1.0 / sqrt(log1p(y));
        let c = sqrt(v / (omega * y));
        let sign = s.signum();
        Ok(Some(LogNormal { m: mu - sign * c * (sqrt(omega) - 1.0), c, delta, sign }))
    }

    pub(crate) fn at_z(&self, z: f64) -> f64 {
        self.m + self.sign * self.c * expm1(self.sign * z / self.delta)
    }

    fn z_of(&self, x: f64) -> Option<f64> {
        let u = self.sign * (x - self.m) / self.c;
        if u <= -1.0 {
            return None;
        }
        Some(self.sign * self.delta * log1p(u))
    }

    pub(crate) fn moments(&self) -> (f64, f64, f64) {
        let y = expm1(1.0 / (self.delta * self.delta));
        let omega = 1.0 + y;
        let v = self.c * self.c * omega * y;
        let s = sqrt(y) * (y + 3.0);
        (self.m + self.sign * self.c * (sqrt(omega) - 1.0), v, self.sign * s * v * sqrt(v))
    }

    pub(crate) fn params(&self) -> [(&'static str, f64); 4] {
        [("median", self.m), ("scale", self.c), ("delta", self.delta), ("sign", self.sign)]
    }

    pub(crate) fn quantile_triple(&self) -> (f64, f64, f64) {
        (self.m, self.at_z(1.0) - self.m, self.m - self.at_z(-1.0))
    }

    pub(crate) fn support(&self) -> (f64, f64) {
        let edge = self.m - self.sign * self.c;
        if self.sign > 0.0 { (edge, f64::INFINITY) } else { (f64::NEG_INFINITY, edge) }
    }

    pub(crate) fn density(&self, x: f64) -> f64 {
        match self.z_of(x) {
            Some(z) => {
                let u = 1.0 + self.sign * (x - self.m) / self.c;
                gauss_pdf(z) * self.delta / (self.c * u)
            }
            None => 0.0,
        }
    }

    pub(crate) fn cdf(&self, x: f64) -> f64 {
        match self.z_of(x) {
            Some(z) => gauss_cdf(z),
            None => if self.sign > 0.0 { 0.0 } else { 1.0 },
        }
    }
}

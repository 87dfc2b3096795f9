//! Curves of the form `−½(x/σ(x))²` with a width that depends on `x`.

use alloc::vec;
use alloc::vec::Vec;
use libm::{exp, log};

use crate::numeric::{gauss_cdf, gauss_pdf, gauss_sf, maximize};

#[derive(Debug, Clone)]
pub(super) enum VarSigma {
    /// `σ + σ′x`.
    Linear { s: f64, ds: f64 },
    /// `σ² = V + V′x`.
    Variance { v: f64, dv: f64 },
    /// Linear between `−σ⁻` and `σ⁺`, constant outside.
    Pdg { s: f64, ds: f64, sp: f64, sm: f64 },
    /// `ln σ = αQ(x) + β` with `Q` the split-normal distribution function.
    FechnerLog { alpha: f64, beta: f64, sp: f64, sm: f64 },
    /// Cubic halves in `ln σ`, flat beyond the error points.
    DoubleCubicLog { sp: f64, sm: f64, s0: f64 },
    /// Quintic smoothstep in `ln σ` between the error points.
    QuinticLog { sp: f64, sm: f64 },
}

/// Split normal with mode 0, left width `sm` and right width `sp`.
fn fechner_cdf(x: f64, sp: f64, sm: f64) -> f64 {
    let t = sp + sm;
    if x < 0.0 {
        2.0 * sm / t * gauss_cdf(x / sm)
    } else {
        1.0 - 2.0 * sp / t * gauss_sf(x / sp)
    }
}

fn fechner_density(x: f64, sp: f64, sm: f64) -> f64 {
    let s = if x < 0.0 { sm } else { sp };
    2.0 / (sp + sm) * gauss_pdf(x / s)
}

fn smoothstep(t: f64) -> (f64, f64) {
    let t = t.clamp(0.0, 1.0);
    let s = t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
    let ds = 30.0 * t * t * (1.0 - t) * (1.0 - t);
    (s, ds)
}

impl VarSigma {
    pub(super) fn linear(sp: f64, sm: f64) -> Self {
        VarSigma::Linear { s: 2.0 * sp * sm / (sp + sm), ds: (sp - sm) / (sp + sm) }
    }

    pub(super) fn variance(sp: f64, sm: f64) -> Self {
        VarSigma::Variance { v: sp * sm, dv: sp - sm }
    }

    pub(super) fn pdg(sp: f64, sm: f64) -> Self {
        VarSigma::Pdg { s: 2.0 * sp * sm / (sp + sm), ds: (sp - sm) / (sp + sm), sp, sm }
    }

    pub(super) fn fechner_log(sp: f64, sm: f64) -> Self {
        let (qp, qm) = (fechner_cdf(sp, sp, sm), fechner_cdf(-sm, sp, sm));
        let alpha = (log(sp) - log(sm)) / (qp - qm);
        let beta = log(sm) - alpha * qm;
        VarSigma::FechnerLog { alpha, beta, sp, sm }
    }

    pub(super) fn double_cubic_log(sp: f64, sm: f64) -> Self {
        if sp == sm {
            return VarSigma::DoubleCubicLog { sp, sm, s0: sp };
        }
        // σ₀ minimizes the width-weighted squared distance to the broken
        // parabola over [−σ⁻, σ⁺].
        let nodes = crate::numeric::gauss_legendre_unit(24);
        let mismatch = |ls0: f64| {
            let c = VarSigma::DoubleCubicLog { sp, sm, s0: exp(ls0) };
            let mut total = 0.0;
            for (s, sign) in [(sp, 1.0), (sm, -1.0)] {
                let mut acc = 0.0;
                for &(u, w) in &nodes {
                    let x = sign * 0.5 * s * (u + 1.0);
                    let d = c.value(x) + 0.5 * x * x / (s * s);
                    acc += 0.5 * w * d * d;
                }
                total += acc;
            }
            -total
        };
        let (lo, hi) = (log(sp.min(sm)), log(sp.max(sm)));
        let m = maximize(mismatch, lo - 0.5, hi + 0.5, 1e-11);
        VarSigma::DoubleCubicLog { sp, sm, s0: exp(m.x) }
    }

    pub(super) fn quintic_log(sp: f64, sm: f64) -> Self {
        VarSigma::QuinticLog { sp, sm }
    }

    /// `(ln σ(x), d ln σ/dx)`.
    fn log_sigma(&self, x: f64) -> (f64, f64) {
        match *self {
            VarSigma::Linear { s, ds } => {
                let w = s + ds * x;
                (log(w), ds / w)
            }
            VarSigma::Variance { v, dv } => {
                let w = v + dv * x;
                (0.5 * log(w), 0.5 * dv / w)
            }
            VarSigma::Pdg { s, ds, sp, sm } => {
                if x >= sp {
                    (log(sp), 0.0)
                } else if x <= -sm {
                    (log(sm), 0.0)
                } else {
                    let w = s + ds * x;
                    (log(w), ds / w)
                }
            }
            VarSigma::FechnerLog { alpha, beta, sp, sm } => {
                (alpha * fechner_cdf(x, sp, sm) + beta, alpha * fechner_density(x, sp, sm))
            }
            VarSigma::DoubleCubicLog { sp, sm, s0 } => {
                let ls0 = log(s0);
                let (s, t) = if x >= 0.0 { (sp, 1.0 - x / sp) } else { (sm, 1.0 + x / sm) };
                if t <= 0.0 {
                    return (log(s), 0.0);
                }
                let ls = log(s);
                let d = ls0 - ls;
                let slope = if x >= 0.0 { -3.0 * d * t * t / sp } else { 3.0 * d * t * t / sm };
                (ls + d * t * t * t, slope)
            }
            VarSigma::QuinticLog { sp, sm } => {
                let (s, ds) = smoothstep((x + sm) / (sp + sm));
                let d = log(sp) - log(sm);
                (log(sm) + d * s, d * ds / (sp + sm))
            }
        }
    }

    pub(super) fn value(&self, x: f64) -> f64 {
        let (ls, _) = self.log_sigma(x);
        -0.5 * x * x * exp(-2.0 * ls)
    }

    pub(super) fn slope(&self, x: f64) -> f64 {
        let (ls, dls) = self.log_sigma(x);
        let inv = exp(-2.0 * ls);
        -x * inv + x * x * inv * dls
    }

    pub(super) fn domain(&self) -> (f64, f64) {
        let edge = |w: f64, dw: f64| {
            if dw > 0.0 {
                (-w / dw, f64::INFINITY)
            } else if dw < 0.0 {
                (f64::NEG_INFINITY, -w / dw)
            } else {
                (f64::NEG_INFINITY, f64::INFINITY)
            }
        };
        match *self {
            VarSigma::Linear { s, ds } => edge(s, ds),
            VarSigma::Variance { v, dv } => edge(v, dv),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub(super) fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            VarSigma::Linear { s, ds } => vec![("sigma", s), ("sigma_prime", ds)],
            VarSigma::Variance { v, dv } => vec![("variance", v), ("variance_prime", dv)],
            VarSigma::Pdg { s, ds, .. } => vec![("sigma", s), ("sigma_prime", ds)],
            VarSigma::FechnerLog { alpha, beta, .. } => vec![("alpha", alpha), ("beta", beta)],
            VarSigma::DoubleCubicLog { s0, .. } => vec![("sigma0", s0)],
            VarSigma::QuinticLog { sp, sm } => vec![("log_sigma_minus", log(sm)), ("log_sigma_plus", log(sp))],
        }
    }
}

//! Families defined by a transformation `x = R(ν)` of a standard normal `ν`.
//!
//! Density and distribution function are obtained by splitting the real
//! line into intervals on which `R` is monotone and solving `R(ν) = x` on
//! each of them.

use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::{fabs, sqrt};

use super::shape_solve::{invert_cdf, solve_shape};
use super::PdfFamily;
use crate::numeric::{
    find_root, gauss_cdf, gauss_legendre_unit, gauss_pdf, gauss_sf, integrate_with_breaks,
    solve_cubic_real, ONE_SIGMA_HIGH,
};
use crate::{Error, Result};

/// Beyond this |ν| the normal density underflows to zero.
const NU_MAX: f64 = 38.0;
/// Range used for moment integrals.
const NU_MOMENTS: f64 = 14.0;

#[derive(Debug, Clone)]
enum Kind {
    Distorted { a: f64, b: f64 },
    Railway { a: f64, b: f64, hl: f64, hr: f64 },
    DoubleCubic { sp: f64, sm: f64 },
    SymBeta { amp: f64, k: f64, p: u32, h: f64, rule: Vec<(f64, f64)> },
    Qvw { s0: f64, a: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    r_lo: f64,
    r_hi: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct Curve {
    m: f64,
    kind: Kind,
    segments: Vec<Segment>,
}

/// `Φ(hi) − Φ(lo)` without cancellation in either tail.
fn normal_mass(lo: f64, hi: f64) -> f64 {
    if lo >= 0.0 {
        gauss_sf(lo) - gauss_sf(hi)
    } else {
        gauss_cdf(hi) - gauss_cdf(lo)
    }
}

fn railway_default_h(fp: f64, fpp: f64) -> f64 {
    if fpp == 0.0 {
        return 10.0;
    }
    fabs(fp / fpp).clamp(0.1, 10.0)
}

impl Kind {
    fn offset(&self, nu: f64) -> f64 {
        match *self {
            Kind::Distorted { a, b } => a * nu + b * nu * nu,
            Kind::Railway { a, b, hl, hr } => {
                if nu > 1.0 {
                    railway_arm(a + b, a + 2.0 * b, 2.0 * b, hr, nu - 1.0)
                } else if nu < -1.0 {
                    railway_arm(b - a, a - 2.0 * b, 2.0 * b, -hl, nu + 1.0)
                } else {
                    a * nu + b * nu * nu
                }
            }
            Kind::DoubleCubic { sp, sm } => {
                if nu <= -1.0 {
                    (5.0 * sm - sp) * (nu + 1.0) / 4.0 - sm
                } else if nu <= 0.0 {
                    nu * ((nu * nu + 3.0 * nu + 2.0) * (sp - sm) / 4.0 + sm)
                } else if nu <= 1.0 {
                    nu * ((nu * nu - 3.0 * nu + 2.0) * (sm - sp) / 4.0 + sp)
                } else {
                    (5.0 * sp - sm) * (nu - 1.0) / 4.0 + sp
                }
            }
            Kind::SymBeta { amp, k, .. } => amp * self.beta_double_integral(nu) + k * nu,
            Kind::Qvw { s0, a } => s0 * (1.0 + a * (gauss_cdf(nu) - 0.5)) * nu,
        }
    }

    fn slope(&self, nu: f64) -> f64 {
        match *self {
            Kind::Distorted { a, b } => a + 2.0 * b * nu,
            Kind::Railway { a, b, hl, hr } => {
                if nu > 1.0 {
                    railway_arm_slope(a + 2.0 * b, 2.0 * b, hr, nu - 1.0)
                } else if nu < -1.0 {
                    railway_arm_slope(a - 2.0 * b, 2.0 * b, -hl, nu + 1.0)
                } else {
                    a + 2.0 * b * nu
                }
            }
            Kind::DoubleCubic { sp, sm } => {
                if nu <= -1.0 {
                    (5.0 * sm - sp) / 4.0
                } else if nu <= 0.0 {
                    (3.0 * nu * nu + 6.0 * nu + 2.0) * (sp - sm) / 4.0 + sm
                } else if nu <= 1.0 {
                    (3.0 * nu * nu - 6.0 * nu + 2.0) * (sm - sp) / 4.0 + sp
                } else {
                    (5.0 * sp - sm) / 4.0
                }
            }
            Kind::SymBeta { amp, k, .. } => amp * self.beta_integral(nu) + k,
            Kind::Qvw { s0, a } => s0 * (1.0 + a * (gauss_cdf(nu) - 0.5) + a * nu * gauss_pdf(nu)),
        }
    }

    /// Points where the piecewise definition changes.
    fn joins(&self) -> Vec<f64> {
        match *self {
            Kind::Distorted { .. } | Kind::Qvw { .. } => Vec::new(),
            Kind::Railway { hl, hr, .. } => alloc::vec![-1.0 - hl, -1.0, 1.0, 1.0 + hr],
            Kind::DoubleCubic { .. } => alloc::vec![-1.0, 0.0, 1.0],
            Kind::SymBeta { h, .. } => alloc::vec![-h, h],
        }
    }

    fn kernel(p: u32, h: f64, x: f64) -> f64 {
        let u = 1.0 - (x / h) * (x / h);
        if u <= 0.0 {
            return 0.0;
        }
        let mut r = 1.0;
        for _ in 0..p {
            r *= u;
        }
        r
    }

    /// `∫₀^ν b(x) dx`, odd in ν.
    fn beta_integral(&self, nu: f64) -> f64 {
        let Kind::SymBeta { p, h, ref rule, .. } = *self else { return 0.0 };
        let t = fabs(nu).min(h);
        let s: f64 = rule.iter().map(|&(x, w)| w * Self::kernel(p, h, t * x)).sum::<f64>() * t;
        s.copysign(nu)
    }

    /// `∫₀^ν ∫₀^y b(x) dx dy = ∫₀^|ν| (|ν| − x) b(x) dx`, even in ν.
    fn beta_double_integral(&self, nu: f64) -> f64 {
        let Kind::SymBeta { p, h, ref rule, .. } = *self else { return 0.0 };
        let n = fabs(nu);
        let t = n.min(h);
        let inner: f64 = rule.iter().map(|&(x, w)| w * (t - t * x) * Self::kernel(p, h, t * x)).sum::<f64>() * t;
        if n <= h {
            inner
        } else {
            inner + self.beta_integral(h) * (n - h)
        }
    }
}

/// Cubic transition `T(t) = f + f′t + (f″/2)t²(1 − t/(3h))` continued by a
/// straight line once `|t| > |h|`; `h` is negative on the left arm.
fn railway_arm(f: f64, fp: f64, fpp: f64, h: f64, t: f64) -> f64 {
    if fabs(t) <= fabs(h) {
        f + fp * t + 0.5 * fpp * t * t * (1.0 - t / (3.0 * h))
    } else {
        let end = f + fp * h + fpp * h * h / 3.0;
        end + (fp + 0.5 * fpp * h) * (t - h)
    }
}

fn railway_arm_slope(fp: f64, fpp: f64, h: f64, t: f64) -> f64 {
    if fabs(t) <= fabs(h) {
        fp + fpp * t - fpp * t * t / (2.0 * h)
    } else {
        fp + 0.5 * fpp * h
    }
}

impl Curve {
    fn new(m: f64, kind: Kind) -> Result<Self> {
        let mut c = Curve { m, kind, segments: Vec::new() };
        c.segments = c.monotone_segments()?;
        Ok(c)
    }

    pub(crate) fn from_quantiles(family: PdfFamily, m: f64, sp: f64, sm: f64) -> Result<Self> {
        let a = 0.5 * (sp + sm);
        let b = 0.5 * (sp - sm);
        let kind = match family {
            PdfFamily::Distorted => Kind::Distorted { a, b },
            PdfFamily::Railway { h_left, h_right } => Kind::Railway {
                a,
                b,
                hl: h_left.unwrap_or_else(|| railway_default_h(a - 2.0 * b, 2.0 * b)),
                hr: h_right.unwrap_or_else(|| railway_default_h(a + 2.0 * b, 2.0 * b)),
            },
            PdfFamily::DoubleCubic => Kind::DoubleCubic { sp, sm },
            PdfFamily::SymmetricBeta { p, h } => {
                let mut kind = Kind::SymBeta { amp: 1.0, k: 0.0, p, h, rule: gauss_legendre_unit(24) };
                let i1 = kind.beta_double_integral(1.0);
                if let Kind::SymBeta { amp, k, .. } = &mut kind {
                    *amp = (sp - sm) / (2.0 * i1);
                    *k = a;
                }
                kind
            }
            PdfFamily::Qvw => {
                let p1 = ONE_SIGMA_HIGH - 0.5;
                let asym = b / a;
                if fabs(asym) >= 2.0 * p1 {
                    return Err(Error::UnrepresentableAsymmetry {
                        family: "qvw",
                        measure: "|A| = |σ⁺−σ⁻|/(σ⁺+σ⁻)",
                        value: fabs(asym),
                        bound: 2.0 * p1,
                    });
                }
                Kind::Qvw { s0: a, a: asym / p1 }
            }
            _ => unreachable!("not a transformation family"),
        };
        Curve::new(m, kind)
    }

    pub(crate) fn from_moments(family: PdfFamily, mu: f64, v: f64, g: f64) -> Result<Self> {
        let skew = g / (v * sqrt(v));
        if let PdfFamily::Distorted = family {
            // 4b³ − 6Vb + γ = 0, root nearest zero; a² = V − 2b².
            let bound = 2.0 * core::f64::consts::SQRT_2;
            if fabs(skew) > bound {
                return Err(Error::UnrepresentableSkewness { family: "distorted", value: skew, bound });
            }
            let roots = solve_cubic_real([g, -6.0 * v, 0.0, 4.0])?;
            let b = roots
                .iter()
                .copied()
                .fold(f64::INFINITY, |best, r| if fabs(r) < fabs(best) { r } else { best });
            let a = sqrt((v - 2.0 * b * b).max(0.0));
            return Curve::new(mu - b, Kind::Distorted { a, b });
        }
        // Below quadrature noise in the unit skewness.
        if fabs(skew) < 1e-12 {
            let sigma = sqrt(v);
            let unit = Curve::from_quantiles(family, 0.0, 1.0, 1.0)?;
            let (um, uv, _) = unit.moments()?;
            let c = sigma / sqrt(uv);
            return Curve::from_quantiles(family, mu - c * um, c, c);
        }
        let unit_skew = |asym: f64| -> Result<f64> {
            let c = Curve::from_quantiles(family, 0.0, 1.0 + asym, 1.0 - asym)?;
            let (_, uv, ug) = c.moments()?;
            Ok(ug / (uv * sqrt(uv)))
        };
        let limit = if let PdfFamily::Qvw = family { 2.0 * (ONE_SIGMA_HIGH - 0.5) - 1e-6 } else { 0.98 };
        let (lo, hi) = if skew > 0.0 { (0.0, limit) } else { (-limit, 0.0) };
        let asym = match solve_shape(unit_skew, skew, lo, hi, 0.0, 49)? {
            Some(a) => a,
            None => {
                let edge = if skew > 0.0 { hi } else { lo };
                return Err(Error::UnrepresentableSkewness {
                    family: family.name(),
                    value: skew,
                    bound: fabs(unit_skew(edge)?),
                });
            }
        };
        let unit = Curve::from_quantiles(family, 0.0, 1.0 + asym, 1.0 - asym)?;
        let (um, uv, _) = unit.moments()?;
        let c = sqrt(v / uv);
        Curve::from_quantiles(family, mu - c * um, c * (1.0 + asym), c * (1.0 - asym))
    }

    pub(crate) fn at(&self, nu: f64) -> f64 {
        self.m + self.kind.offset(nu)
    }

    pub(crate) fn params(&self) -> Vec<(&'static str, f64)> {
        let mut out = alloc::vec![("median", self.m)];
        match &self.kind {
            Kind::Distorted { a, b } => out.extend([("a", *a), ("b", *b)]),
            Kind::Railway { a, b, hl, hr } => out.extend([("a", *a), ("b", *b), ("h_left", *hl), ("h_right", *hr)]),
            Kind::DoubleCubic { sp, sm } => out.extend([("sigma_plus", *sp), ("sigma_minus", *sm)]),
            Kind::SymBeta { amp, k, p, h, .. } => out.extend([("amplitude", *amp), ("slope", *k), ("p", *p as f64), ("h", *h)]),
            Kind::Qvw { s0, a } => out.extend([("sigma0", *s0), ("a", *a)]),
        }
        out
    }

    pub(crate) fn quantile_triple(&self) -> (f64, f64, f64) {
        let m = self.at(0.0);
        (m, self.at(1.0) - m, m - self.at(-1.0))
    }

    fn monotone_segments(&self) -> Result<Vec<Segment>> {
        let mut grid: Vec<f64> = Vec::new();
        let mut x = -NU_MAX;
        while x < NU_MAX {
            grid.push(x);
            x += if fabs(x) < 10.0 { 0.02 } else { 0.5 };
        }
        grid.push(NU_MAX);
        grid.extend(self.kind.joins());
        grid.sort_by(|a, b| a.total_cmp(b));
        grid.dedup();
        let mut cuts = alloc::vec![-NU_MAX];
        for w in grid.windows(2) {
            let (s0, s1) = (self.kind.slope(w[0]), self.kind.slope(w[1]));
            if s0 != 0.0 && s1 != 0.0 && (s0 > 0.0) != (s1 > 0.0) {
                let r = find_root(|t| self.kind.slope(t), w[0], w[1], 1e-13)?;
                cuts.push(r.value);
            }
        }
        cuts.push(NU_MAX);
        Ok(cuts
            .windows(2)
            .map(|w| Segment { lo: w[0], hi: w[1], r_lo: self.at(w[0]), r_hi: self.at(w[1]) })
            .collect())
    }

    pub(crate) fn density(&self, x: f64) -> f64 {
        let mut total = 0.0;
        for s in &self.segments {
            let (lo, hi) = if s.r_lo < s.r_hi { (s.r_lo, s.r_hi) } else { (s.r_hi, s.r_lo) };
            if !(x > lo && x < hi) {
                continue;
            }
            if let Ok(r) = find_root(|t| self.at(t) - x, s.lo, s.hi, 1e-14) {
                let d = fabs(self.kind.slope(r.value));
                if d > 0.0 {
                    total += gauss_pdf(r.value) / d;
                }
            }
        }
        total
    }

    pub(crate) fn cdf(&self, x: f64) -> f64 {
        let mut total = 0.0;
        for s in &self.segments {
            let increasing = s.r_hi >= s.r_lo;
            let (rmin, rmax) = if increasing { (s.r_lo, s.r_hi) } else { (s.r_hi, s.r_lo) };
            if x >= rmax {
                total += normal_mass(s.lo, s.hi);
            } else if x > rmin {
                let Ok(r) = find_root(|t| self.at(t) - x, s.lo, s.hi, 1e-14) else { continue };
                total += if increasing { normal_mass(s.lo, r.value) } else { normal_mass(r.value, s.hi) };
            }
        }
        total.clamp(0.0, 1.0)
    }

    pub(crate) fn quantile(&self, p: f64) -> Result<f64> {
        let z = crate::numeric::gauss_quantile(p)?;
        if self.segments.len() == 1 && self.segments[0].r_hi > self.segments[0].r_lo {
            return Ok(self.at(z));
        }
        let (_, sp, sm) = self.quantile_triple();
        invert_cdf(|x| self.cdf(x), p, self.at(z), 0.5 * (fabs(sp) + fabs(sm)))
    }

    pub(crate) fn support(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for s in &self.segments[1..] {
            lo = lo.min(s.r_lo);
            hi = hi.max(s.r_lo);
        }
        for (nu, end) in [(-NU_MAX, self.at(-NU_MAX)), (NU_MAX, self.at(NU_MAX))] {
            let slope = self.kind.slope(nu);
            let heading = if nu > 0.0 { slope } else { -slope };
            if heading > 0.0 {
                hi = f64::INFINITY;
            } else if heading < 0.0 {
                lo = f64::NEG_INFINITY;
            } else {
                lo = lo.min(end);
                hi = hi.max(end);
            }
        }
        (lo, hi)
    }

    /// Mean, variance and third central moment by quadrature in ν.
    pub(crate) fn moments(&self) -> Result<(f64, f64, f64)> {
        if let Kind::Distorted { a, b } = self.kind {
            return Ok((self.m + b, a * a + 2.0 * b * b, 2.0 * b * (3.0 * a * a + 4.0 * b * b)));
        }
        if let Kind::Qvw { s0, a } = self.kind {
            return Ok(qvw_moments(self.m, s0, a));
        }
        // Work in units of the quantile half-width so that tolerances are relative.
        let (_, sp, sm) = self.quantile_triple();
        let scale = 0.5 * (fabs(sp) + fabs(sm));
        let joins = self.kind.joins();
        let raw = |k: i32, c: f64| {
            integrate_with_breaks(
                |t| libm::pow(self.kind.offset(t) / scale - c, k as f64) * gauss_pdf(t),
                -NU_MOMENTS,
                NU_MOMENTS,
                &joins,
                1e-13,
            )
        };
        let c = raw(1, 0.0)?;
        let var = raw(2, c)?;
        let third = raw(3, c)?;
        Ok((self.m + c * scale, var * scale * scale, third * scale * scale * scale))
    }
}

const M11: f64 = 0.282_094_791_773_878_14; // 1/(2√π)
#[allow(clippy::excessive_precision)]
const M33: f64 = 0.675_106_426_094_598_067_428_498_3;

/// Closed-form moments of the QVW Gaussian with `M_kn = ∫ x^k Φ(x)^n φ(x) dx`.
fn qvw_moments(mu0: f64, s0: f64, a: f64) -> (f64, f64, f64) {
    let m22 = (sqrt(3.0) + 2.0 * PI) / (6.0 * PI);
    let m31 = 5.0 / (4.0 * sqrt(PI));
    let m32 = m31;
    let mean = mu0 + a * s0 * M11;
    let var = s0 * s0 * (1.0 + a * a * (m22 - M11 * M11 - 0.25));
    let third = a * s0 * s0 * s0 / 4.0
        * (8.0 * a * a * M11 * M11 * M11 - 3.0 * M11 * (4.0 + a * a * (4.0 * m22 - 1.0))
            + 3.0 * (a - 2.0) * (a - 2.0) * m31
            - 6.0 * (a - 2.0) * a * m32
            + 4.0 * a * a * M33);
    (mean, var, third)
}

#![allow(clippy::excessive_precision)]

use alloc::vec::Vec;
use libm::fabs;

use crate::{Error, Result};

// 15-point Kronrod rule and its embedded 7-point Gauss rule, at the
// published precision.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_PANELS: usize = 4000;

pub(crate) struct Estimate {
    pub value: f64,
    pub converged: bool,
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, fabs((k - g) * h))
}

/// Globally adaptive Gauss–Kronrod integration: the panel with the largest
/// error estimate is bisected until the total estimate is below
/// `tol·max(1, |I|)`.
pub(crate) fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Estimate {
    if a == b {
        return Estimate {
            value: 0.0,
            converged: true,
        };
    }
    let (v, e) = panel(f, a, b);
    let mut panels: Vec<(f64, f64, f64, f64)> = alloc::vec![(a, b, v, e)];
    let mut value = v;
    let mut error = e;
    while error > tol * fabs(value).max(1.0) {
        if panels.len() >= MAX_PANELS {
            return Estimate {
                value,
                converged: false,
            };
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best });
        let (lo, hi, pv, pe) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // Panel cannot be split further in floating point.
            return Estimate {
                value,
                converged: false,
            };
        }
        let (v1, e1) = panel(f, lo, mid);
        let (v2, e2) = panel(f, mid, hi);
        value += v1 + v2 - pv;
        error += e1 + e2 - pe;
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
    // Resum to shed accumulated rounding from the running totals.
    let value = panels.iter().map(|p| p.2).sum();
    Estimate {
        value,
        converged: true,
    }
}

/// Integrates `f` over `[a, b]` to a tolerance `tol` that is absolute for
/// results below one and relative above.
///
/// # Errors
/// [`Error::NonConvergent`] when the panel budget is exhausted.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let est = adaptive(&f, a, b, tol);
    if est.converged {
        Ok(est.value)
    } else {
        Err(Error::NonConvergent {
            what: "adaptive quadrature",
            iterations: MAX_PANELS,
        })
    }
}

/// Like [`integrate`] but splits the range at the given interior points
/// first, which helps with kinks and discontinuities.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
) -> Result<f64> {
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    pts.sort_by(|x, y| x.total_cmp(y));
    pts.dedup();
    let mut total = 0.0;
    let mut lo = a;
    for &x in pts.iter().chain(core::iter::once(&b)) {
        total += integrate(&f, lo, x, tol)?;
        lo = x;
    }
    Ok(total)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[0, 1]`.
pub(crate) fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-like starting value, then Newton on P_n.
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if fabs(dx) < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (1.0 - x), 0.5 * w));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use libm::{exp, sqrt};

    #[test]
    fn gauss_legendre_rule() {
        let rule = gauss_legendre_unit(12);
        let sum: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((sum - 1.0).abs() < 1e-14);
        let m: f64 = rule.iter().map(|&(x, w)| w * x.powi(23)).sum();
        assert!((m - 1.0 / 24.0).abs() < 1e-14);
    }

    #[test]
    fn polynomials_exact() {
        let v = integrate(|x| x.powi(7) - 3.0 * x * x, -1.0, 2.0, 1e-12).unwrap();
        let exact = (256.0 - 1.0) / 8.0 - (8.0 + 1.0);
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn gaussian_mass() {
        let v = integrate(|x| exp(-0.5 * x * x), -12.0, 12.0, 1e-12).unwrap();
        assert!((v - super::super::SQRT_2PI).abs() < 1e-12);
    }

    #[test]
    fn endpoint_singularity() {
        let v = integrate(|x| 1.0 / sqrt(x), 0.0, 1.0, 1e-9).unwrap();
        assert!((v - 2.0).abs() < 1e-8);
    }

    #[test]
    fn kink_with_breaks() {
        let v = integrate_with_breaks(|x: f64| x.abs(), -1.0, 3.0, &[0.0], 1e-12).unwrap();
        assert!((v - 5.0).abs() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_reported() {
        let r = integrate(|x: f64| libm::sin(1.0 / x) / x, 1e-8, 1.0, 1e-14);
        assert!(matches!(r, Err(Error::NonConvergent { .. })));
    }
}

use alloc::vec::Vec;
use libm::{acos, cbrt, cos, fabs, sqrt};

use crate::{Error, Result};

/// Real roots of `c0 + c1·x + c2·x²`, ascending.
///
/// # Errors
/// [`Error::DegeneratePolynomial`] if every coefficient is zero.
pub fn solve_quadratic_real(c: [f64; 3]) -> Result<Vec<f64>> {
    let [c0, c1, c2] = c;
    let scale = fabs(c0).max(fabs(c1)).max(fabs(c2));
    if scale == 0.0 {
        return Err(Error::DegeneratePolynomial);
    }
    if fabs(c2) <= 1e-15 * scale {
        if fabs(c1) <= 1e-15 * scale {
            return Ok(Vec::new());
        }
        return Ok(alloc::vec![-c0 / c1]);
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc < 0.0 {
        return Ok(Vec::new());
    }
    // Cancellation-free form.
    let q = -0.5 * (c1 + sqrt(disc).copysign(c1));
    let mut r = if q == 0.0 {
        alloc::vec![0.0, 0.0]
    } else {
        alloc::vec![q / c2, c0 / q]
    };
    r.sort_by(|a, b| a.total_cmp(b));
    Ok(r)
}

/// Real roots of `c0 + c1·x + c2·x² + c3·x³`, ascending.
///
/// Cardano's formula (trigonometric form for three real roots) gives the
/// starting points; each root is then polished by Newton's method. A
/// vanishing leading coefficient falls back to the quadratic.
///
/// # Errors
/// [`Error::DegeneratePolynomial`] if every coefficient is zero.
pub fn solve_cubic_real(c: [f64; 4]) -> Result<Vec<f64>> {
    let [c0, c1, c2, c3] = c;
    let scale = fabs(c0).max(fabs(c1)).max(fabs(c2)).max(fabs(c3));
    if scale == 0.0 {
        return Err(Error::DegeneratePolynomial);
    }
    if fabs(c3) <= 1e-14 * scale {
        return solve_quadratic_real([c0, c1, c2]);
    }
    let (a, b, d) = (c2 / c3, c1 / c3, c0 / c3);
    // Depressed cubic t³ + p t + q with x = t − a/3.
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
    let shift = -a / 3.0;
    let disc = 0.25 * q * q + p * p * p / 27.0;
    let mut roots: Vec<f64> = if p == 0.0 && q == 0.0 {
        alloc::vec![shift]
    } else if disc > 0.0 {
        let s = sqrt(disc);
        alloc::vec![cbrt(-0.5 * q + s) + cbrt(-0.5 * q - s) + shift]
    } else {
        let r = sqrt(-p / 3.0);
        let arg = (-0.5 * q / (r * r * r)).clamp(-1.0, 1.0);
        let phi = acos(arg);
        (0..3)
            .map(|k| 2.0 * r * cos((phi - 2.0 * core::f64::consts::PI * k as f64) / 3.0) + shift)
            .collect()
    };
    let f = |x: f64| ((c3 * x + c2) * x + c1) * x + c0;
    let df = |x: f64| (3.0 * c3 * x + 2.0 * c2) * x + c1;
    for r in roots.iter_mut() {
        for _ in 0..8 {
            let d = df(*r);
            if d == 0.0 {
                break;
            }
            let step = f(*r) / d;
            let next = *r - step;
            if fabs(f(next)) >= fabs(f(*r)) {
                break;
            }
            *r = next;
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup_by(|a, b| fabs(*a - *b) <= 1e-12 * fabs(*a).max(1.0));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(c: [f64; 4], x: f64) -> f64 {
        ((c[3] * x + c[2]) * x + c[1]) * x + c[0]
    }

    #[test]
    fn three_roots() {
        let c = [-6.0, 11.0, -6.0, 1.0];
        let r = solve_cubic_real(c).unwrap();
        assert_eq!(r.len(), 3);
        for (x, e) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - e).abs() < 1e-12);
        }
    }

    #[test]
    fn one_real_root() {
        let c = [1.0, 1.0, 0.0, 1.0];
        let r = solve_cubic_real(c).unwrap();
        assert_eq!(r.len(), 1);
        assert!(eval(c, r[0]).abs() < 1e-14);
    }

    #[test]
    fn degenerate() {
        assert!(matches!(solve_cubic_real([0.0; 4]), Err(Error::DegeneratePolynomial)));
        let r = solve_cubic_real([-4.0, 0.0, 1.0, 0.0]).unwrap();
        assert_eq!(r, alloc::vec![-2.0, 2.0]);
    }

    #[test]
    fn dimidiated_width_equation_against_scan() {
        // c3·D³ + 3V·D − √(2π)γ = 0 with V = 2, γ = −1.
        let c3 = 2.5 / core::f64::consts::PI - 1.0;
        let c = [super::super::SQRT_2PI, 6.0, 0.0, c3];
        let roots = solve_cubic_real(c).unwrap();
        let small = roots.iter().copied().fold(f64::INFINITY, |m, x| if x.abs() < m.abs() { x } else { m });
        // Oracle: sign-change scan on a 1e-6 grid.
        let mut x = -2.0;
        let mut oracle = f64::NAN;
        while x < 2.0 {
            if eval(c, x) * eval(c, x + 1e-6) <= 0.0 {
                oracle = x + 5e-7;
                break;
            }
            x += 1e-6;
        }
        assert!((small - oracle).abs() < 1e-6);
    }
}

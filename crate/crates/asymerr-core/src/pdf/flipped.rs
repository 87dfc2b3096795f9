//! Results whose two one-at-a-time deviations point the same way.
//!
//! The dimidiated reading of such a result is a pair of half-Gaussians
//! sharing the extreme value. It is replaced by an ordinary dimidiated
//! model with the same first three moments.

use core::f64::consts::PI;

use super::{pdf_from_moments, MomentTriple, PdfFamily, PdfModel};
use crate::numeric::INV_SQRT_2PI;
use crate::{Error, Result};

/// Which side of the extreme both deviations lie on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipDirection {
    Up,
    Down,
}

impl FlipDirection {
    fn sign(self) -> f64 {
        match self {
            FlipDirection::Up => 1.0,
            FlipDirection::Down => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlippedSpec {
    /// The cut-off value both half-Gaussians start from.
    pub extreme: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub direction: FlipDirection,
}

/// Mean, variance and third central moment of the half-Gaussian pair.
pub fn flipped_moments(fs: &FlippedSpec) -> Result<MomentTriple> {
    let (s1, s2) = (fs.sigma1, fs.sigma2);
    if !(s1 >= 0.0 && s2 >= 0.0) || s1 + s2 == 0.0 {
        return Err(Error::InvalidParameter { what: "flipped widths", value: s1.min(s2) });
    }
    let m1 = (s1 + s2) * INV_SQRT_2PI;
    let m2 = 0.5 * (s1 * s1 + s2 * s2);
    let m3 = 2.0 * (s1 * s1 * s1 + s2 * s2 * s2) * INV_SQRT_2PI;
    let var = m2 - (s1 + s2) * (s1 + s2) / (2.0 * PI);
    let third = m3 - 3.0 * m2 * m1 + 2.0 * m1 * m1 * m1;
    let sign = fs.direction.sign();
    MomentTriple::new(fs.extreme + sign * m1, var, sign * third)
}

/// The dimidiated model with the moments of [`flipped_moments`].
///
/// # Errors
/// [`Error::UnrepresentableSkewness`] if the pair is more skewed than any
/// dimidiated Gaussian.
pub fn flipped_to_dimidiated(fs: &FlippedSpec) -> Result<PdfModel> {
    pdf_from_moments(PdfFamily::Dimidiated, flipped_moments(fs)?)
}

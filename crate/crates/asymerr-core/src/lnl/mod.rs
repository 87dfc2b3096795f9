//! Log-likelihood curves for a result quoted with asymmetric errors.
//!
//! A curve is built from a triple `(â, σ⁺, σ⁻)`. Every family except the
//! symmetrized parabola passes exactly through `(â, 0)`, `(â+σ⁺, −½)` and
//! `(â−σ⁻, −½)` and has its only maximum at `â`. Curves are evaluated as
//! `Δln L` relative to that maximum.

mod piecewise;
mod poly;
mod shape;
mod sigma;
mod special;
mod spline;

use alloc::vec::Vec;
use core::fmt;
use libm::fabs;

use crate::numeric::find_root;
use crate::{Error, Result, Side};

use piecewise::Piecewise;
use shape::ShapeCurve;
use sigma::VarSigma;
use special::{LogLogistic, Logarithmic, Poisson};

pub use spline::Kappa;

/// Maximum-likelihood estimate with the distances to the two `Δln L = −½`
/// points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnLTriple {
    pub a_hat: f64,
    pub sigma_plus: f64,
    pub sigma_minus: f64,
}

impl LnLTriple {
    /// # Errors
    /// [`Error::InvalidParameter`] unless both widths are positive and finite.
    pub fn new(a_hat: f64, sigma_plus: f64, sigma_minus: f64) -> Result<Self> {
        if !a_hat.is_finite() {
            return Err(Error::InvalidParameter { what: "a_hat", value: a_hat });
        }
        for (what, v) in [("sigma_plus", sigma_plus), ("sigma_minus", sigma_minus)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter { what, value: v });
            }
        }
        Ok(Self { a_hat, sigma_plus, sigma_minus })
    }

    /// `(σ⁺ − σ⁻)/(σ⁺ + σ⁻)`.
    pub fn asymmetry(&self) -> f64 {
        (self.sigma_plus - self.sigma_minus) / (self.sigma_plus + self.sigma_minus)
    }

    /// The larger width over the smaller.
    pub fn ratio(&self) -> f64 {
        self.sigma_plus.max(self.sigma_minus) / self.sigma_plus.min(self.sigma_minus)
    }

    /// The triple of `c·a`: widths scale by `|c|` and swap when `c < 0`.
    pub fn scaled(&self, c: f64) -> Self {
        let (p, m) = if c < 0.0 { (self.sigma_minus, self.sigma_plus) } else { (self.sigma_plus, self.sigma_minus) };
        Self { a_hat: c * self.a_hat, sigma_plus: fabs(c) * p, sigma_minus: fabs(c) * m }
    }
}

/// Families of log-likelihood curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LnLFamily {
    /// Gaussian whose width varies linearly with `a`.
    LinearSigma,
    /// Gaussian whose variance varies linearly with `a`.
    LinearVariance,
    /// Cubic, cut off at its second turning point.
    Cubic,
    /// Two half parabolas joined at the peak.
    BrokenParabola,
    /// Parabola with the mean and width of the split normal built on the
    /// broken parabola; its peak is not at `â`.
    SymmetrizedParabola,
    /// Quartic whose second derivative is a perfect square.
    ConstrainedQuartic,
    /// Quartic closest in the least-squares sense to the broken parabola.
    MoldedQuartic,
    /// Quintic core with parabolic tails, continuous to the second derivative.
    MatchedQuintic,
    /// Seventh-degree core matching the broken parabola to second order.
    Interpolated7th,
    /// Quartic halves with `σ₀ = √(σ⁺σ⁻)`.
    SimpleDoubleQuartic,
    /// Quartic halves with `σ₀` fitted to the broken parabola.
    MoldedDoubleQuartic,
    /// Quintic halves with `σ₀ = √(σ⁺σ⁻)`.
    SimpleDoubleQuintic,
    /// Quintic halves with `σ₀` fitted to the broken parabola.
    MoldedDoubleQuintic,
    /// Cubic core with parabolic tails whose curvature stays within a factor
    /// `κ` of the broken parabola's.
    ConservativeSpline(Kappa),
    /// Log density of the type IV generalized logistic with the smallest
    /// peak curvature.
    LogLogisticBeta,
    /// Parabola in `ln(1 + γa)`.
    Logarithmic,
    /// Poisson likelihood with a continuous count.
    GeneralizedPoisson,
    /// Width interpolated linearly in log space against a split-normal
    /// distribution function.
    LinearSigmaLog,
    /// Log width built from two cubics meeting at the peak.
    DoubleCubicLogSigma,
    /// Log width following a quintic smoothstep between the two errors.
    QuinticLogSigma,
    /// Linear width between the error points, constant outside.
    Pdg,
    /// Log of the first Edgeworth correction to a Gaussian.
    Edgeworth,
    /// Log of the skew-normal density.
    SkewNormal,
}

impl LnLFamily {
    /// Every family, with the default `κ` for the conservative spline.
    pub const ALL: [LnLFamily; 23] = [
        LnLFamily::LinearSigma,
        LnLFamily::LinearVariance,
        LnLFamily::Cubic,
        LnLFamily::BrokenParabola,
        LnLFamily::SymmetrizedParabola,
        LnLFamily::ConstrainedQuartic,
        LnLFamily::MoldedQuartic,
        LnLFamily::MatchedQuintic,
        LnLFamily::Interpolated7th,
        LnLFamily::SimpleDoubleQuartic,
        LnLFamily::MoldedDoubleQuartic,
        LnLFamily::SimpleDoubleQuintic,
        LnLFamily::MoldedDoubleQuintic,
        LnLFamily::ConservativeSpline(Kappa::Max),
        LnLFamily::LogLogisticBeta,
        LnLFamily::Logarithmic,
        LnLFamily::GeneralizedPoisson,
        LnLFamily::LinearSigmaLog,
        LnLFamily::DoubleCubicLogSigma,
        LnLFamily::QuinticLogSigma,
        LnLFamily::Pdg,
        LnLFamily::Edgeworth,
        LnLFamily::SkewNormal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            LnLFamily::LinearSigma => "linear-sigma",
            LnLFamily::LinearVariance => "linear-variance",
            LnLFamily::Cubic => "cubic",
            LnLFamily::BrokenParabola => "broken-parabola",
            LnLFamily::SymmetrizedParabola => "symmetrized-parabola",
            LnLFamily::ConstrainedQuartic => "constrained-quartic",
            LnLFamily::MoldedQuartic => "molded-quartic",
            LnLFamily::MatchedQuintic => "matched-quintic",
            LnLFamily::Interpolated7th => "interpolated-7th",
            LnLFamily::SimpleDoubleQuartic => "simple-double-quartic",
            LnLFamily::MoldedDoubleQuartic => "molded-double-quartic",
            LnLFamily::SimpleDoubleQuintic => "simple-double-quintic",
            LnLFamily::MoldedDoubleQuintic => "molded-double-quintic",
            LnLFamily::ConservativeSpline(_) => "conservative-spline",
            LnLFamily::LogLogisticBeta => "log-logistic-beta",
            LnLFamily::Logarithmic => "logarithmic",
            LnLFamily::GeneralizedPoisson => "generalized-poisson",
            LnLFamily::LinearSigmaLog => "linear-sigma-log",
            LnLFamily::DoubleCubicLogSigma => "double-cubic-log-sigma",
            LnLFamily::QuinticLogSigma => "quintic-log-sigma",
            LnLFamily::Pdg => "pdg",
            LnLFamily::Edgeworth => "edgeworth",
            LnLFamily::SkewNormal => "skew-normal",
        }
    }

    /// Looks a family up by [`name`](Self::name), with default options.
    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.name() == name)
    }

    /// Same family, ignoring options.
    pub fn same_kind(&self, other: &LnLFamily) -> bool {
        core::mem::discriminant(self) == core::mem::discriminant(other)
    }

    /// Largest admissible `max(σ⁺,σ⁻)/min(σ⁺,σ⁻)`, where the family has one.
    pub fn ratio_bound(&self) -> Option<f64> {
        Some(match self {
            LnLFamily::Cubic => 2.0,
            LnLFamily::ConstrainedQuartic => poly::CONSTRAINED_QUARTIC_BOUND,
            LnLFamily::MoldedQuartic => 3.40804,
            LnLFamily::MatchedQuintic => 2.426419,
            LnLFamily::Interpolated7th => 2.744405,
            LnLFamily::SimpleDoubleQuartic => 68.0 / 11.0,
            LnLFamily::SimpleDoubleQuintic => 13.5,
            LnLFamily::LinearSigmaLog => 5.338453,
            LnLFamily::QuinticLogSigma => 4.107184572,
            _ => return None,
        })
    }
}

impl fmt::Display for LnLFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LnLFamily::ConservativeSpline(k) => write!(f, "conservative-spline({k})"),
            _ => f.write_str(self.name()),
        }
    }
}

/// The curve as a function of `x = a − â`.
#[derive(Debug, Clone)]
enum Form {
    Piecewise(Piecewise),
    Sigma(VarSigma),
    Logarithmic(Logarithmic),
    Poisson(Poisson),
    LogLogistic(LogLogistic),
    /// `−(x − centre)²/(2·variance)`.
    Gauss { centre: f64, variance: f64 },
    Shape(ShapeCurve),
}

impl Form {
    fn value(&self, x: f64) -> f64 {
        match self {
            Form::Piecewise(p) => p.value(x),
            Form::Sigma(s) => s.value(x),
            Form::Logarithmic(l) => l.value(x),
            Form::Poisson(p) => p.value(x),
            Form::LogLogistic(l) => l.value(x),
            Form::Gauss { centre, variance } => -0.5 * (x - centre) * (x - centre) / variance,
            Form::Shape(s) => s.value(x),
        }
    }

    fn slope(&self, x: f64) -> f64 {
        match self {
            Form::Piecewise(p) => p.slope(x),
            Form::Sigma(s) => s.slope(x),
            Form::Logarithmic(l) => l.slope(x),
            Form::Poisson(p) => p.slope(x),
            Form::LogLogistic(l) => l.slope(x),
            Form::Gauss { centre, variance } => -(x - centre) / variance,
            Form::Shape(s) => s.slope(x),
        }
    }

    /// Open interval of `x` where the curve is defined.
    fn domain(&self) -> (f64, f64) {
        match self {
            Form::Piecewise(p) => p.domain(),
            Form::Sigma(s) => s.domain(),
            Form::Logarithmic(l) => l.domain(),
            Form::Poisson(p) => p.domain(),
            Form::Shape(s) => s.domain(),
            Form::LogLogistic(_) | Form::Gauss { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        match self {
            Form::Piecewise(p) => p.params(),
            Form::Sigma(s) => s.params(),
            Form::Logarithmic(l) => l.params(),
            Form::Poisson(p) => p.params(),
            Form::LogLogistic(l) => l.params(),
            Form::Gauss { centre, variance } => alloc::vec![("centre", *centre), ("variance", *variance)],
            Form::Shape(s) => s.params(),
        }
    }
}

/// A fitted log-likelihood curve.
#[derive(Debug, Clone)]
pub struct LnLModel {
    family: LnLFamily,
    triple: LnLTriple,
    form: Form,
}

/// Builds the curve of `family` through the triple `t`.
///
/// # Errors
/// [`Error::UnrepresentableAsymmetry`] when `σ⁺/σ⁻` is beyond the family's
/// limit, [`Error::InvalidParameter`] for a conservative spline with `κ < 1`.
pub fn lnl_from_triple(family: LnLFamily, t: LnLTriple) -> Result<LnLModel> {
    let t = LnLTriple::new(t.a_hat, t.sigma_plus, t.sigma_minus)?;
    if let Some(bound) = family.ratio_bound() {
        let r = t.ratio();
        if r > bound {
            return Err(Error::UnrepresentableAsymmetry {
                family: family.name(),
                measure: "max(σ⁺,σ⁻)/min(σ⁺,σ⁻)",
                value: r,
                bound,
            });
        }
    }
    let (sp, sm) = (t.sigma_plus, t.sigma_minus);
    let form = match family {
        LnLFamily::LinearSigma => Form::Sigma(VarSigma::linear(sp, sm)),
        LnLFamily::LinearVariance => Form::Sigma(VarSigma::variance(sp, sm)),
        LnLFamily::Pdg => Form::Sigma(VarSigma::pdg(sp, sm)),
        LnLFamily::LinearSigmaLog => Form::Sigma(VarSigma::fechner_log(sp, sm)),
        LnLFamily::DoubleCubicLogSigma => Form::Sigma(VarSigma::double_cubic_log(sp, sm)),
        LnLFamily::QuinticLogSigma => Form::Sigma(VarSigma::quintic_log(sp, sm)),
        LnLFamily::Cubic => Form::Piecewise(poly::cubic(sp, sm)),
        LnLFamily::BrokenParabola => Form::Piecewise(poly::broken_parabola(sp, sm)),
        LnLFamily::ConstrainedQuartic => Form::Piecewise(poly::constrained_quartic(sp, sm)?),
        LnLFamily::MoldedQuartic => Form::Piecewise(poly::molded_quartic(sp, sm)),
        LnLFamily::MatchedQuintic => Form::Piecewise(poly::matched_quintic(sp, sm)),
        LnLFamily::Interpolated7th => Form::Piecewise(poly::interpolated_7th(sp, sm)),
        LnLFamily::SimpleDoubleQuartic => Form::Piecewise(poly::double_quartic(sp, sm, poly::simple_sigma0(sp, sm))),
        LnLFamily::MoldedDoubleQuartic => Form::Piecewise(poly::double_quartic(sp, sm, poly::molded_sigma0(sp, sm))),
        LnLFamily::SimpleDoubleQuintic => Form::Piecewise(poly::double_quintic(sp, sm, poly::simple_sigma0(sp, sm))),
        LnLFamily::MoldedDoubleQuintic => Form::Piecewise(poly::double_quintic(sp, sm, poly::molded_sigma0(sp, sm))),
        LnLFamily::ConservativeSpline(kappa) => Form::Piecewise(spline::conservative_spline(sp, sm, kappa)?),
        LnLFamily::SymmetrizedParabola => {
            let d = sp - sm;
            let centre = libm::sqrt(core::f64::consts::FRAC_2_PI) * d;
            let variance = (1.0 - core::f64::consts::FRAC_2_PI) * d * d + sp * sm;
            Form::Gauss { centre, variance }
        }
        LnLFamily::LogLogisticBeta => Form::LogLogistic(LogLogistic::new(sp, sm)?),
        LnLFamily::Logarithmic => Form::Logarithmic(Logarithmic::new(sp, sm)),
        LnLFamily::GeneralizedPoisson => Form::Poisson(Poisson::new(sp, sm)?),
        LnLFamily::Edgeworth => Form::Shape(ShapeCurve::edgeworth(sp, sm)?),
        LnLFamily::SkewNormal => Form::Shape(ShapeCurve::skew_normal(sp, sm)?),
    };
    Ok(LnLModel { family, triple: t, form })
}

impl LnLModel {
    pub fn family(&self) -> LnLFamily {
        self.family
    }

    /// The triple the curve was built from.
    pub fn triple(&self) -> LnLTriple {
        self.triple
    }

    /// Named family parameters, for display. Lengths are in units of `a`
    /// and positions are relative to `â`.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        self.form.params()
    }

    /// Open interval of `a` where the curve is defined.
    pub fn domain(&self) -> (f64, f64) {
        let (lo, hi) = self.form.domain();
        (self.triple.a_hat + lo, self.triple.a_hat + hi)
    }

    fn check(&self, a: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        if a > lo && a < hi {
            Ok(a - self.triple.a_hat)
        } else {
            Err(Error::OutOfDomain { a, lo, hi })
        }
    }

    /// `Δln L` at `a`.
    ///
    /// # Errors
    /// [`Error::OutOfDomain`] outside [`domain`](Self::domain).
    pub fn log_likelihood(&self, a: f64) -> Result<f64> {
        let x = self.check(a)?;
        Ok(self.form.value(x))
    }

    /// `d ln L/da` at `a`.
    ///
    /// # Errors
    /// [`Error::OutOfDomain`] outside [`domain`](Self::domain).
    pub fn slope(&self, a: f64) -> Result<f64> {
        let x = self.check(a)?;
        Ok(self.form.slope(x))
    }

    /// `ln L` at `a`, `−∞` outside the domain.
    pub(crate) fn value_or_neg_inf(&self, a: f64) -> f64 {
        match self.check(a) {
            Ok(x) => self.form.value(x),
            Err(_) => f64::NEG_INFINITY,
        }
    }

    /// Position of the maximum; `â` for every family but the symmetrized
    /// parabola.
    pub fn peak(&self) -> f64 {
        match &self.form {
            Form::Gauss { centre, .. } => self.triple.a_hat + centre,
            _ => self.triple.a_hat,
        }
    }

    /// The curve of the same family for the variable `c·a`.
    ///
    /// # Errors
    /// As [`lnl_from_triple`]; [`Error::InvalidParameter`] for `c = 0`.
    pub fn rescaled(&self, c: f64) -> Result<LnLModel> {
        if c == 0.0 || !c.is_finite() {
            return Err(Error::InvalidParameter { what: "coefficient", value: c });
        }
        lnl_from_triple(self.family, self.triple.scaled(c))
    }

    /// Distances from the peak to the points where the curve has fallen by
    /// one half, as `(σ⁺, σ⁻)`.
    ///
    /// # Errors
    /// [`Error::NoCrossing`] if a side never falls that far.
    pub fn solve_delta_half(&self) -> Result<(f64, f64)> {
        let p = self.peak();
        let scale = 0.5 * (self.triple.sigma_plus + self.triple.sigma_minus);
        half_crossings(|a| self.value_or_neg_inf(a), p, scale, self.domain())
    }
}

/// Finds where `f` has fallen by ½ below `f(peak)` on each side, stepping
/// outwards from `peak` with a step that starts at `scale/2` and doubles.
/// Returns the distances `(upper, lower)`.
///
/// `f` must return `−∞` outside `domain`.
pub fn half_crossings<F: Fn(f64) -> f64>(f: F, peak: f64, scale: f64, domain: (f64, f64)) -> Result<(f64, f64)> {
    let top = f(peak);
    let g = |a: f64| f(a) - top + 0.5;
    let mut out = [0.0; 2];
    for (k, dir) in [1.0f64, -1.0].into_iter().enumerate() {
        let side = if dir > 0.0 { Side::Upper } else { Side::Lower };
        let edge = if dir > 0.0 { domain.1 } else { domain.0 };
        let mut inner = peak;
        let mut step = 0.5 * scale;
        let mut outer = None;
        for _ in 0..200 {
            let mut next = inner + dir * step;
            let past_edge = (next - edge) * dir >= 0.0;
            if past_edge {
                // Creep up on the edge by halving the remaining gap.
                next = 0.5 * (inner + edge);
            }
            let v = g(next);
            if v.is_nan() || v <= 0.0 {
                outer = Some(next);
                break;
            }
            if past_edge && fabs(edge - next) < 1e-12 * scale {
                break;
            }
            inner = next;
            step *= 2.0;
        }
        let Some(outer) = outer else { return Err(Error::NoCrossing { side }) };
        let r = find_root(|a| { let v = g(a); if v.is_nan() { -1.0 } else { v } }, inner, outer, 1e-13 * scale)?;
        out[k] = fabs(r.value - peak);
    }
    Ok((out[0], out[1]))
}

#[cfg(test)]
mod tests;

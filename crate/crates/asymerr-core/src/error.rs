use core::fmt;

/// Which side of the central value a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        })
    }
}

/// Errors reported by the numeric kernel, the models and the combiners.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of a function.
    Domain { what: &'static str, value: f64 },
    /// A parameter violates a precondition (non-positive width and similar).
    InvalidParameter { what: &'static str, value: f64 },
    /// The bracket handed to a root finder has no sign change.
    NoSignChange { lo: f64, f_lo: f64, hi: f64, f_hi: f64 },
    /// An iterative procedure did not converge.
    NonConvergent { what: &'static str, iterations: usize },
    /// All polynomial coefficients vanish.
    DegeneratePolynomial,
    /// The asymmetry of a quantile or likelihood triple is outside what the
    /// family can represent. `measure` names the quantity that `bound` limits.
    UnrepresentableAsymmetry {
        family: &'static str,
        measure: &'static str,
        value: f64,
        bound: f64,
    },
    /// The normalized skewness is outside what the family can represent.
    UnrepresentableSkewness {
        family: &'static str,
        value: f64,
        bound: f64,
    },
    /// Sampling was refused because the density is negative somewhere.
    NegativeDensity { family: &'static str },
    /// A log-likelihood was evaluated outside the interval where it is defined.
    OutOfDomain { a: f64, lo: f64, hi: f64 },
    /// The curve never drops by one half on the given side.
    NoCrossing { side: Side },
    /// The summed log-likelihood has no maximum inside the common domain.
    NoMaximum,
    /// Results from different families were combined without permission.
    MixedFamilies,
    /// A combination was requested with no terms.
    Empty,
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::InvalidParameter { .. } => "invalid-parameter",
            Error::NoSignChange { .. } => "no-sign-change",
            Error::NonConvergent { .. } => "non-convergent",
            Error::DegeneratePolynomial => "degenerate-polynomial",
            Error::UnrepresentableAsymmetry { .. } => "unrepresentable-asymmetry",
            Error::UnrepresentableSkewness { .. } => "unrepresentable-skewness",
            Error::NegativeDensity { .. } => "negative-density",
            Error::OutOfDomain { .. } => "out-of-domain",
            Error::NoCrossing { .. } => "no-crossing",
            Error::NoMaximum => "no-maximum",
            Error::MixedFamilies => "mixed-families",
            Error::Empty => "empty",
        }
    }

    /// True for failures of an iterative method rather than of the input.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(self, Error::NonConvergent { .. } | Error::NoSignChange { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} is outside its domain: {value}"),
            Error::InvalidParameter { what, value } => write!(f, "invalid {what}: {value}"),
            Error::NoSignChange { lo, f_lo, hi, f_hi } => write!(
                f,
                "no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}"
            ),
            Error::NonConvergent { what, iterations } => {
                write!(f, "{what} did not converge after {iterations} iterations")
            }
            Error::DegeneratePolynomial => f.write_str("all polynomial coefficients are zero"),
            Error::UnrepresentableAsymmetry {
                family,
                measure,
                value,
                bound,
            } => write!(
                f,
                "the {family} model cannot represent {measure} = {value}; the limit is {bound}"
            ),
            Error::UnrepresentableSkewness {
                family,
                value,
                bound,
            } => write!(
                f,
                "the {family} model cannot represent normalized skewness {value}; the limit is {bound}"
            ),
            Error::NegativeDensity { family } => {
                write!(f, "the {family} density is negative somewhere; sampling refused")
            }
            Error::OutOfDomain { a, lo, hi } => {
                write!(f, "a = {a} is outside the domain ({lo}, {hi})")
            }
            Error::NoCrossing { side } => {
                write!(f, "the curve never falls by 1/2 on the {side} side")
            }
            Error::NoMaximum => f.write_str("the summed log-likelihood has no interior maximum"),
            Error::MixedFamilies => f.write_str("results use different model families"),
            Error::Empty => f.write_str("nothing to combine"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

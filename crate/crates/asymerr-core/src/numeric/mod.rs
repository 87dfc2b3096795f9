//! Special functions, root finding, quadrature and random numbers.

mod optimize;
mod owen;
mod poly;
mod quad;
mod rng;
mod roots;
mod special;

pub use optimize::{fixed_point, maximize, Maximum};
pub use owen::owens_t;
pub use poly::{solve_cubic_real, solve_quadratic_real};
pub(crate) use quad::gauss_legendre_unit;
pub use quad::{integrate, integrate_with_breaks};
pub use rng::RandomSource;
pub use roots::{find_root, find_root_default, BracketedRoot};
pub use special::{
    chi2_sf, gauss_cdf, gauss_pdf, gauss_quantile, gauss_sf, ln_gauss_cdf, ONE_SIGMA_HIGH,
    ONE_SIGMA_LOW,
};

/// Default absolute tolerance on the argument of a root.
pub const ROOT_TOL: f64 = 1e-10;
/// Default tolerance for adaptive quadrature.
pub const QUAD_TOL: f64 = 1e-9;

/// √(2π)
pub const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
/// 1/√(2π)
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

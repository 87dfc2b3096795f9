use super::*;
use crate::lnl::{lnl_from_triple, Kappa, LnLFamily};
use crate::numeric::integrate;
use crate::Error;
use crate::pdf::{pdf_from_quantiles, PdfFamily};

fn pdf(f: PdfFamily, m: f64, sp: f64, sm: f64) -> PdfModel {
    pdf_from_quantiles(f, QuantileTriple::new(m, sp, sm).unwrap()).unwrap()
}

fn lnl(f: LnLFamily, a: f64, sp: f64, sm: f64) -> LnLModel {
    lnl_from_triple(f, LnLTriple::new(a, sp, sm).unwrap()).unwrap()
}

fn close(got: f64, want: f64, tol: f64, what: &str) {
    assert!((got - want).abs() <= tol, "{what}: got {got}, want {want}");
}

#[test]
fn pdf_error_combination_first_block() {
    for (f, want) in [
        (PdfFamily::Dimidiated, (1.3183, 1.5178, 0.0800)),
        (PdfFamily::Distorted, (1.3334, 1.5367, 0.0984)),
    ] {
        let terms = [PdfTerm::new(pdf(f, 0.0, 1.0, 1.0), 1.0), PdfTerm::new(pdf(f, 0.0, 1.2, 0.8), 1.0)];
        let r = combine_pdf_errors(&terms, f).unwrap();
        close(r.result.sigma_minus(), want.0, 2e-4, "σ⁻");
        close(r.result.sigma_plus(), want.1, 2e-4, "σ⁺");
        close(r.median_shift.unwrap(), want.2, 2e-4, "Δ");
    }
}

#[test]
fn pdf_error_combination_bottom_block() {
    let d = pdf(PdfFamily::Dimidiated, 0.0, 1.5, 0.5);
    let terms = [PdfTerm::new(d.clone(), 1.0), PdfTerm::new(d, 1.0)];
    let r = combine_pdf_errors(&terms, PdfFamily::Dimidiated).unwrap();
    close(r.result.sigma_minus(), 0.9652, 2e-4, "σ⁻");
    close(r.result.sigma_plus(), 1.9309, 2e-4, "σ⁺");
    close(r.median_shift.unwrap(), 0.4126, 2e-4, "Δ");
    assert!(r.result.sigma_plus() / r.result.sigma_minus() < 3.0);
    let naive = naive_quadrature_combination(&terms).unwrap();
    close(naive.sigma_plus, 2.121_320_343_559_642, 1e-12, "naive σ⁺");
    close(naive.sigma_minus, 0.707_106_781_186_547_5, 1e-12, "naive σ⁻");
}

#[test]
fn identical_symmetric_terms_add_in_quadrature() {
    let g = pdf(PdfFamily::Dimidiated, 1.0, 0.3, 0.3);
    let terms: Vec<PdfTerm> = (0..9).map(|_| PdfTerm::new(g.clone(), 1.0)).collect();
    let r = combine_pdf_errors(&terms, PdfFamily::Dimidiated).unwrap();
    close(r.result.sigma_plus(), 0.9, 1e-12, "σ⁺");
    close(r.result.sigma_minus(), 0.9, 1e-12, "σ⁻");
    close(r.median_shift.unwrap(), 0.0, 1e-12, "Δ");
    let naive = naive_quadrature_combination(&terms).unwrap();
    close(naive.sigma_plus, 0.9, 1e-12, "naive");
}

#[test]
fn negative_coefficient_mirrors_the_errors() {
    let d = pdf(PdfFamily::Dimidiated, 2.0, 1.5, 0.5);
    let r = combine_pdf_errors(&[PdfTerm::new(d, -1.0)], PdfFamily::Dimidiated).unwrap();
    close(r.result.central(), -2.0, 1e-9, "median");
    close(r.result.sigma_plus(), 0.5, 1e-9, "σ⁺");
    close(r.result.sigma_minus(), 1.5, 1e-9, "σ⁻");
    assert!(combine_pdf_errors(&[], PdfFamily::Dimidiated).is_err());
}

#[test]
fn dimidiated_convolution_matches_a_grid_sum() {
    let a = pdf(PdfFamily::Dimidiated, 0.3, 1.5, 0.5);
    let b = pdf(PdfFamily::Dimidiated, -0.1, 0.7, 1.1);
    let c = convolve_dimidiated_exact(&a, &b).unwrap();
    // Midpoint-rule convolution with step 2⁻¹², the grid split at the two
    // points where an input density jumps.
    let h = 1.0 / 4096.0;
    for z in [-3.0, -1.0, 0.0, 0.2, 0.5, 1.3, 4.0] {
        let (j1, j2) = (0.3f64, z + 0.1);
        let cuts = [-12.0, j1.min(j2), j1.max(j2), 12.0];
        let mut s = 0.0;
        for w in cuts.windows(2) {
            let n = ((w[1] - w[0]) / h).ceil().max(1.0) as usize;
            let step = (w[1] - w[0]) / n as f64;
            for i in 0..n {
                let x = w[0] + (i as f64 + 0.5) * step;
                s += a.density(x) * b.density(z - x) * step;
            }
        }
        close(c.density(z), s, 1e-6, "density");
    }
    let (lo, hi) = c.range();
    let norm = integrate(|z| c.density(z), lo, hi, 1e-12).unwrap();
    close(norm, 1.0, 1e-8, "norm");
    let mean = integrate(|z| z * c.density(z), lo, hi, 1e-12).unwrap();
    close(mean, a.moments().mean + b.moments().mean, 1e-6, "mean");
    let var = integrate(|z| (z - mean) * (z - mean) * c.density(z), lo, hi, 1e-12).unwrap();
    close(var, a.moments().variance + b.moments().variance, 1e-6, "variance");
}

#[test]
fn symmetric_dimidiated_convolution_is_gaussian() {
    let a = pdf(PdfFamily::Dimidiated, 0.0, 1.0, 1.0);
    let c = convolve_dimidiated_exact(&a, &a).unwrap();
    let s = libm::sqrt(2.0);
    for z in [-2.0, 0.0, 0.7, 3.0] {
        close(c.density(z), crate::numeric::gauss_pdf(z / s) / s, 1e-15, "gauss");
    }
    let other = pdf(PdfFamily::Distorted, 0.0, 1.2, 1.0);
    assert_eq!(convolve_dimidiated_exact(&a, &other).unwrap_err(), Error::MixedFamilies);
}

#[test]
fn pdf_result_combination_of_the_squared_example() {
    for (f, want) in [
        (PdfFamily::Dimidiated, (25.6996, 5.25206, 4.75240)),
        (PdfFamily::Distorted, (25.7504, 5.26206, 4.76289)),
    ] {
        let inputs = [pdf(f, 32.571, 7.571, 6.571), pdf(f, 18.429, 7.571, 6.571)];
        let r = combine_pdf_results(&inputs, false).unwrap();
        close(r.result.central(), want.0, 1e-4, "median");
        close(r.result.sigma_plus(), want.1, 1e-4, "σ⁺");
        close(r.result.sigma_minus(), want.2, 1e-4, "σ⁻");
        close(r.weights.iter().sum::<f64>(), 1.0, 1e-15, "weights");
    }
}

#[test]
fn pdf_result_combination_rules() {
    let inputs = [pdf(PdfFamily::Dimidiated, 1.0, 0.5, 0.5), pdf(PdfFamily::Dimidiated, 3.0, 0.5, 0.5)];
    let r = combine_pdf_results(&inputs, false).unwrap();
    close(r.result.central(), 2.0, 1e-12, "mean");
    close(r.result.sigma_plus(), 0.5 / libm::sqrt(2.0), 1e-12, "σ");
    let g = [pdf(PdfFamily::Dimidiated, 0.0, 1.0, 1.0), pdf(PdfFamily::Dimidiated, 1.0, 2.0, 2.0)];
    let r = combine_pdf_results(&g, false).unwrap();
    close(r.weights[0], 0.8, 1e-12, "inverse-square weight");
    let mixed = [pdf(PdfFamily::Dimidiated, 0.0, 1.0, 0.9), pdf(PdfFamily::Distorted, 0.0, 1.0, 0.9)];
    assert_eq!(combine_pdf_results(&mixed, false).unwrap_err(), Error::MixedFamilies);
    assert!(combine_pdf_results(&mixed, true).is_ok());
}

#[test]
fn compatibility_follows_the_side_of_the_deviation() {
    let m = pdf(PdfFamily::Dimidiated, 12.7, 0.1, 0.2);
    close(pdf_compatibility(&m, 12.2).sigma, 2.5, 1e-9, "below");
    close(pdf_compatibility(&m, 12.95).sigma, 2.5, 1e-9, "above");
    let at = pdf_compatibility(&m, 12.7);
    close(at.p_value, 1.0, 1e-15, "p at median");
    close(at.sigma, 0.0, 1e-12, "σ at median");
    let set = pdf_set_compatibility(&[m.clone(), m], 12.2).unwrap();
    assert_eq!(set.ndof, 1);
    close(set.chi2, 12.5, 1e-8, "χ²");
}

const THREE: [(f64, f64, f64); 3] = [(1.9, 0.7, 0.5), (2.4, 0.6, 0.8), (3.1, 0.5, 0.4)];

fn three(f: LnLFamily) -> CombinationReport {
    let inputs: Vec<LnLModel> = THREE.iter().map(|&(a, p, m)| lnl(f, a, p, m)).collect();
    combine_lnl_results(&inputs).unwrap_or_else(|e| panic!("{f}: {e}"))
}

#[test]
#[allow(clippy::approx_constant)]
fn three_result_combination_table() {
    use LnLFamily::*;
    let table = [
        (LinearVariance, (2.754, 0.286, 0.263)),
        (LinearSigma, (2.758, 0.293, 0.272)),
        (BrokenParabola, (2.703, 0.301, 0.301)),
        (SymmetrizedParabola, (2.666, 0.321, 0.321)),
        (ConstrainedQuartic, (2.765, 0.303, 0.285)),
        (MoldedQuartic, (2.721, 0.246, 0.240)),
        (MatchedQuintic, (2.728, 0.290, 0.300)),
        (Interpolated7th, (2.702, 0.301, 0.296)),
        (SimpleDoubleQuartic, (2.720, 0.289, 0.299)),
        (MoldedDoubleQuartic, (2.718, 0.286, 0.298)),
        (SimpleDoubleQuintic, (2.702, 0.301, 0.298)),
        (MoldedDoubleQuintic, (2.701, 0.302, 0.297)),
        (Logarithmic, (2.755, 0.288, 0.266)),
        (GeneralizedPoisson, (2.753, 0.283, 0.258)),
        (LinearSigmaLog, (2.743, 0.289, 0.291)),
        (DoubleCubicLogSigma, (2.702, 0.301, 0.297)),
        (QuinticLogSigma, (2.702, 0.301, 0.296)),
        (Pdg, (2.726, 0.273, 0.309)),
        (SkewNormal, (2.749, 0.293, 0.285)),
        (ConservativeSpline(Kappa::Stretch(0.05)), (2.720, 0.291, 0.292)),
        (ConservativeSpline(Kappa::Stretch(0.1)), (2.732, 0.285, 0.287)),
        (ConservativeSpline(Kappa::Stretch(0.15)), (2.738, 0.285, 0.281)),
        (ConservativeSpline(Kappa::Max), (2.742, 0.287, 0.282)),
        (LogLogisticBeta, (2.763, 0.336, 0.366)),
    ];
    for (f, (a, p, m)) in table {
        let r = three(f);
        let what = alloc::format!("{f}");
        close(r.result.central(), a, 1.5e-3, &what);
        close(r.result.sigma_plus(), p, 1.5e-3, &what);
        close(r.result.sigma_minus(), m, 1.5e-3, &what);
        close(r.weights.iter().sum::<f64>(), 1.0, 1e-12, &what);
    }
}

#[test]
fn fast_and_generic_paths_agree() {
    for f in [LnLFamily::LinearSigma, LnLFamily::LinearVariance] {
        let fast = three(f);
        let inputs: Vec<LnLModel> = THREE.iter().map(|&(a, p, m)| lnl(f, a, p, m)).collect();
        let peak = super::lnl::generic_peak_for_tests(&inputs).unwrap();
        close(peak, fast.result.central(), 1e-9, "peak");
    }
}

#[test]
fn lifetime_partials_combine() {
    let inputs = [lnl(LnLFamily::LinearSigma, 0.940, 0.841, 0.385), lnl(LnLFamily::LinearSigma, 1.325, 1.184, 0.542)];
    let r = combine_lnl_results(&inputs).unwrap();
    close(r.result.central(), 1.1323, 1e-3, "â");
    close(r.result.sigma_plus(), 0.6213, 1e-3, "σ⁺");
    close(r.result.sigma_minus(), 0.3604, 1e-3, "σ⁻");
}

#[test]
fn identical_results_give_a_perfect_fit() {
    let m = lnl(LnLFamily::LinearVariance, 1.0, 0.5, 0.5);
    let r = combine_lnl_results(&[m.clone(), m.clone(), m.clone(), m]).unwrap();
    close(r.result.central(), 1.0, 1e-12, "â");
    close(r.result.sigma_plus(), 0.25, 1e-10, "σ");
    let g = goodness_of_fit(&r).unwrap();
    close(g.chi2, 0.0, 1e-20, "χ²");
    close(g.p_value, 1.0, 1e-12, "p");
    assert_eq!(g.ndof, 3);
}

#[test]
fn separated_poisson_results_fit_badly() {
    // 9 and 1 counts, each from its exact Poisson Δln L = −½ points.
    let inputs = [
        lnl(LnLFamily::GeneralizedPoisson, 9.0, 3.3422, 2.6763),
        lnl(LnLFamily::GeneralizedPoisson, 1.0, 1.3577, 0.6983),
    ];
    let r = combine_lnl_results(&inputs).unwrap();
    let g = r.gof.unwrap();
    assert!(g.chi2 > 5.0 && g.p_value < 0.02, "{g:?}");
}

#[test]
fn background_sum_by_profiling() {
    let terms = [
        LnLTerm::new(lnl(LnLFamily::LinearVariance, 4.0, 2.346, 1.682), 1.0),
        LnLTerm::new(lnl(LnLFamily::LinearVariance, 5.0, 2.581, 1.916), 1.0),
    ];
    let r = combine_lnl_errors(&terms).unwrap();
    close(r.result.central(), 9.0, 1e-12, "total");
    close(r.result.sigma_plus(), 3.333, 2e-3, "σ⁺");
    close(r.result.sigma_minus(), 2.668, 2e-3, "σ⁻");
}

#[test]
fn profiling_gaussians_adds_in_quadrature() {
    let terms = [
        LnLTerm::new(lnl(LnLFamily::BrokenParabola, 1.0, 0.3, 0.3), 1.0),
        LnLTerm::new(lnl(LnLFamily::LinearSigma, 2.0, 0.4, 0.4), 1.0),
    ];
    let r = combine_lnl_errors(&terms).unwrap();
    close(r.result.sigma_plus(), 0.5, 1e-9, "σ⁺");
    close(r.result.sigma_minus(), 0.5, 1e-9, "σ⁻");
}

#[test]
fn product_example() {
    for (f, want) in [(LnLFamily::LinearSigma, (136.0, 250.0)), (LnLFamily::LinearVariance, (137.0, 251.0))] {
        let terms = [LnLTerm::new(lnl(f, 12.3, 0.4, 0.5), 120.0), LnLTerm::new(lnl(f, 0.12, 0.01, 0.02), 12_300.0)];
        let r = combine_lnl_errors(&terms).unwrap();
        close(r.result.sigma_plus(), want.0, 1.0, "σ⁺");
        close(r.result.sigma_minus(), want.1, 1.0, "σ⁻");
    }
}

#[test]
fn profile_points_sum_to_the_total() {
    let terms = [
        LnLTerm::new(lnl(LnLFamily::LinearVariance, 4.0, 2.346, 1.682), 1.0),
        LnLTerm::new(lnl(LnLFamily::LinearVariance, 5.0, 2.581, 1.916), 2.0),
    ];
    let pts = profile_lnl_errors(&terms, &[10.0, 14.0, 17.0]).unwrap();
    close(pts[1].value, 0.0, 1e-12, "peak");
    for p in &pts {
        close(p.parts.iter().sum::<f64>(), p.u, 1e-9, "parts");
    }
    assert!(pts[0].value < 0.0 && pts[2].value < 0.0);
}

#[test]
fn crossing_on_a_profile_step_is_found() {
    // Twenty steps of 0.05σ land on σ itself.
    let s = 3.591_317_461_176_876_3;
    let r = combine_lnl_errors(&[LnLTerm::new(lnl(LnLFamily::LinearSigma, 1.0, s, s), 1.0)]).unwrap();
    close(r.result.sigma_plus(), s, 1e-9, "σ⁺");
    close(r.result.sigma_minus(), s, 1e-9, "σ⁻");
}

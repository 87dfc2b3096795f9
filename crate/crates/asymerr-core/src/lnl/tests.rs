use super::*;
use alloc::vec;

const CASES: [(f64, f64); 6] = [(0.7, 0.5), (0.6, 0.8), (0.5, 0.4), (1.0, 1.3), (2.0, 1.5), (1.0, 1.0)];

fn families() -> Vec<LnLFamily> {
    let mut v = LnLFamily::ALL.to_vec();
    for l in [0.05, 0.1, 0.15] {
        v.push(LnLFamily::ConservativeSpline(Kappa::Stretch(l)));
    }
    v
}

/// Error pairs for `f`; the Edgeworth curve only reaches small asymmetries.
fn cases(f: LnLFamily) -> Vec<(f64, f64)> {
    if f == LnLFamily::Edgeworth {
        vec![(1.0, 0.9), (0.95, 1.0), (0.5, 0.47), (1.0, 1.0)]
    } else {
        CASES.to_vec()
    }
}

/// Asserts the curve rises up to its peak and falls after it on a grid of
/// `n` points over `[lo, hi]`.
fn assert_unimodal(m: &LnLModel, lo: f64, hi: f64, n: usize, what: &str) {
    let peak = m.peak();
    let top = m.value_or_neg_inf(peak);
    assert!(top >= -1e-12, "{what}: peak value {top}");
    let mut prev = f64::NEG_INFINITY;
    let mut past = false;
    for i in 1..n {
        let a = lo + (hi - lo) * i as f64 / n as f64;
        if a > peak && !past {
            past = true;
            prev = top;
        }
        let v = m.value_or_neg_inf(a);
        if past {
            assert!(v <= prev + 1e-12, "{what}: rises at {a}");
            assert!(v <= top + 1e-12, "{what}: above the peak at {a}");
        } else {
            assert!(v >= prev - 1e-12, "{what}: falls at {a}");
        }
        prev = v;
    }
}

fn model(f: LnLFamily, a: f64, sp: f64, sm: f64) -> LnLModel {
    lnl_from_triple(f, LnLTriple::new(a, sp, sm).unwrap()).unwrap_or_else(|e| panic!("{f} {sp} {sm}: {e}"))
}

#[test]
fn every_family_passes_through_its_anchors() {
    for f in families() {
        if f == LnLFamily::SymmetrizedParabola {
            continue;
        }
        for (sp, sm) in cases(f) {
            let m = model(f, 3.0, sp, sm);
            let at = |a: f64| m.log_likelihood(a).unwrap();
            assert!(at(3.0).abs() < 1e-9, "{f} {sp} {sm} peak {}", at(3.0));
            assert!((at(3.0 + sp) + 0.5).abs() < 1e-9, "{f} {sp} {sm} upper {}", at(3.0 + sp));
            assert!((at(3.0 - sm) + 0.5).abs() < 1e-9, "{f} {sp} {sm} lower {}", at(3.0 - sm));
        }
    }
}

#[test]
fn every_family_has_a_single_maximum_at_the_peak() {
    for f in families() {
        for (sp, sm) in cases(f) {
            let m = model(f, 0.0, sp, sm);
            let (dlo, dhi) = m.domain();
            let lo = dlo.max(-6.0 * sm);
            let hi = dhi.min(6.0 * sp);
            assert_unimodal(&m, lo, hi, 10_000, &alloc::format!("{f} {sp} {sm}"));
        }
    }
}

#[test]
fn symmetric_errors_give_the_parabola() {
    for f in families() {
        let m = model(f, 1.0, 0.8, 0.8);
        for i in 0..41 {
            let a = 1.0 - 2.0 + 4.0 * i as f64 / 40.0;
            let want = -0.5 * (a - 1.0) * (a - 1.0) / 0.64;
            let got = m.log_likelihood(a).unwrap();
            assert!((got - want).abs() < 1e-8 * (1.0 + want.abs()), "{f} {a}: {got} vs {want}");
        }
    }
}

#[test]
fn delta_half_recovers_the_errors() {
    for f in families() {
        if f == LnLFamily::SymmetrizedParabola {
            continue;
        }
        for (sp, sm) in cases(f) {
            let m = model(f, -2.0, sp, sm);
            let (up, dn) = m.solve_delta_half().unwrap();
            assert!((up - sp).abs() < 1e-9 && (dn - sm).abs() < 1e-9, "{f} {sp} {sm}: {up} {dn}");
        }
    }
}

#[test]
fn slopes_match_differences() {
    for f in families() {
        for (sp, sm) in cases(f) {
            let m = model(f, 0.0, sp, sm);
            for x in [-0.9 * sm, -0.31 * sm, 0.17 * sp, 0.8 * sp, 1.7 * sp] {
                let h = 1e-6;
                let fd = (m.log_likelihood(x + h).unwrap() - m.log_likelihood(x - h).unwrap()) / (2.0 * h);
                let s = m.slope(x).unwrap();
                assert!((fd - s).abs() < 1e-5 * (1.0 + s.abs()), "{f} {sp} {sm} {x}: {s} vs {fd}");
            }
        }
    }
}

#[test]
fn bounded_families_refuse_just_past_their_limit() {
    for f in LnLFamily::ALL {
        let Some(b) = f.ratio_bound() else { continue };
        let over = lnl_from_triple(f, LnLTriple::new(0.0, 1.0, b * 1.001).unwrap());
        assert!(matches!(over, Err(Error::UnrepresentableAsymmetry { .. })), "{f}");
        let under = lnl_from_triple(f, LnLTriple::new(0.0, b * 0.999, 1.0).unwrap()).unwrap();
        let (lo, hi) = under.domain();
        assert_unimodal(&under, lo.max(-8.0), hi.min(8.0 * b), 4000, f.name());
    }
}

#[test]
fn edgeworth_reports_its_limit() {
    match lnl_from_triple(LnLFamily::Edgeworth, LnLTriple::new(0.0, 0.7, 0.5).unwrap()) {
        // The largest reachable |A| is about 0.0622, near α = 0.1.
        Err(Error::UnrepresentableAsymmetry { bound, .. }) => assert!((bound - 0.0622).abs() < 1e-3, "{bound}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn skew_normal_reaches_large_asymmetries() {
    let m = model(LnLFamily::SkewNormal, 0.0, 1.0, 40.0);
    let (up, dn) = m.solve_delta_half().unwrap();
    assert!((up - 1.0).abs() < 1e-8 && (dn - 40.0).abs() < 1e-6, "{up} {dn}");
}

#[test]
fn linear_variance_parameters() {
    // V = σ⁺σ⁻ and V′ = σ⁺ − σ⁻.
    let m = model(LnLFamily::LinearVariance, 0.0, 2.5811, 1.9159);
    let p = m.params();
    assert!((p[0].1 - 4.9451).abs() < 1e-4, "{}", p[0].1);
    assert!((p[1].1 - 0.6652).abs() < 1e-4, "{}", p[1].1);
    // V = 6, V′ = 1, so at a = 4 the curve is −½·16/10.
    let m = model(LnLFamily::LinearVariance, 0.0, 3.0, 2.0);
    assert!((m.log_likelihood(4.0).unwrap() + 0.8).abs() < 1e-12);
}

#[test]
fn generalized_poisson_matches_the_poisson_curve() {
    // Five events: ln L(μ) − ln L(5) = 5 ln(μ/5) − μ + 5.
    let m = model(LnLFamily::GeneralizedPoisson, 5.0, 2.5811, 1.9159);
    for i in 0..=110 {
        let mu = 1.0 + 11.0 * i as f64 / 110.0;
        let want = 5.0 * libm::log(mu / 5.0) - mu + 5.0;
        let got = m.log_likelihood(mu).unwrap();
        assert!((got - want).abs() < 1e-3 * (1.0 + want.abs()), "{mu}: {got} vs {want}");
    }
}

#[test]
fn symmetrized_parabola_peak_is_shifted() {
    let m = model(LnLFamily::SymmetrizedParabola, 1.0, 0.7, 0.5);
    let shift = libm::sqrt(2.0 / core::f64::consts::PI) * 0.2;
    assert!((m.peak() - 1.0 - shift).abs() < 1e-14);
    assert!(m.log_likelihood(m.peak()).unwrap().abs() < 1e-14);
}

#[test]
fn smooth_families_are_twice_differentiable_at_their_joins() {
    let second = |m: &LnLModel, a: f64, h: f64| {
        (m.log_likelihood(a + h).unwrap() - 2.0 * m.log_likelihood(a).unwrap() + m.log_likelihood(a - h).unwrap()) / (h * h)
    };
    let h = 1e-4;
    for f in [
        LnLFamily::MatchedQuintic,
        LnLFamily::Interpolated7th,
        LnLFamily::ConservativeSpline(Kappa::Max),
        LnLFamily::ConservativeSpline(Kappa::Stretch(0.1)),
        LnLFamily::SimpleDoubleQuintic,
        LnLFamily::MoldedDoubleQuintic,
    ] {
        let m = model(f, 0.0, 0.7, 0.5);
        for a in [-0.5, -0.25, 0.0, 0.25, 0.7] {
            let l = second(&m, a - 3.0 * h, h);
            let r = second(&m, a + 3.0 * h, h);
            assert!((l - r).abs() < 0.05 * (1.0 + l.abs()), "{f} at {a}: {l} vs {r}");
        }
    }
    // The broken parabola and the PDG width jump in curvature.
    let bp = model(LnLFamily::BrokenParabola, 0.0, 0.7, 0.5);
    let (l, r) = (second(&bp, -3.0 * h, h), second(&bp, 3.0 * h, h));
    assert!((l + 4.0).abs() < 1e-3 && (r + 1.0 / 0.49).abs() < 1e-3, "{l} {r}");
}

#[test]
fn rescaling_swaps_errors_for_negative_factors() {
    let m = model(LnLFamily::LinearVariance, 2.0, 0.7, 0.5);
    let r = m.rescaled(-3.0).unwrap();
    let t = r.triple();
    assert!(t.a_hat == -6.0 && (t.sigma_plus - 1.5).abs() < 1e-15 && (t.sigma_minus - 2.1).abs() < 1e-15);
    for a in [1.6, 2.0, 2.4] {
        let d = r.log_likelihood(-3.0 * a).unwrap() - m.log_likelihood(a).unwrap();
        assert!(d.abs() < 1e-12);
    }
    assert!(m.rescaled(0.0).is_err());
}

#[test]
fn names_round_trip() {
    for f in LnLFamily::ALL {
        assert_eq!(LnLFamily::from_name(f.name()), Some(f));
    }
    assert!(LnLFamily::from_name("nope").is_none());
}

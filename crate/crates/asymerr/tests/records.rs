use asymerr::output::sig;
use asymerr::record::{parse, parse_record, Format, Kind};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = (&'static str, &'static str)> {
    prop::sample::select(vec![
        ("pdf", "dimidiated"),
        ("pdf", "distorted"),
        ("pdf", "johnson-su"),
        ("lnl", "linear-variance"),
        ("lnl", "pdg"),
        ("lnl", "generalized-poisson"),
    ])
}

proptest! {
    #[test]
    fn written_records_parse_back(
        label in "[a-z][a-z0-9_]{0,8}", (kind, fam) in family(),
        value in -1e6..1e6f64, sp in 1e-6..1e3f64, sm in 1e-6..1e3f64, coeff in -5.0..5.0f64,
    ) {
        let line = format!("{label} {kind} {fam} {value:e} +{sp:e} -{sm:e} coeff={coeff:e}");
        let r = parse_record(&line).unwrap();
        prop_assert_eq!(&r.label, &label);
        prop_assert_eq!(r.kind, if kind == "pdf" { Kind::Pdf } else { Kind::Lnl });
        prop_assert_eq!(r.family.as_str(), fam);
        prop_assert_eq!((r.value, r.sigma_plus, r.sigma_minus, r.coefficient), (value, sp, sm, coeff));
    }

    #[test]
    fn json_and_lines_agree(value in -100.0..100.0f64, sp in 0.01..10.0f64, sm in 0.01..10.0f64) {
        let lines = format!("# comment\n\nx lnl linear-sigma {value:e} +{sp:e} -{sm:e}\n");
        let json = format!(r#"[{{"label":"x","kind":"lnl","family":"linear-sigma","value":{value:e},"sigma_plus":{sp:e},"sigma_minus":{sm:e}}}]"#);
        prop_assert_eq!(parse(&lines, Format::Line).unwrap(), parse(&json, Format::Json).unwrap());
    }

    #[test]
    fn printed_numbers_keep_their_digits(x in -1e12..1e12f64, digits in 1usize..12) {
        let s = sig(x, digits);
        let back: f64 = s.parse().unwrap();
        let tol = if x == 0.0 { 0.0 } else { x.abs() * 10f64.powi(1 - digits as i32) };
        prop_assert!((back - x).abs() <= tol, "{x} -> {s}");
    }
}

#[test]
fn errors_carry_line_numbers() {
    let e = parse("a pdf dimidiated 1 +1 -1\n# fine\nb pdf dimidiated 1 +1\n", Format::Line).unwrap_err();
    assert_eq!(e.line, 3);
    let e = parse("a pdf nonsense 1 +1 -1\n", Format::Line).unwrap_err();
    assert_eq!(e.line, 1);
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn asymerr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asymerr")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

/// The numbers following `key` on the first line that starts with it; the
/// signs written before errors (`+σ⁺ −σ⁻`) are dropped after the first.
fn numbers_after(text: &str, key: &str) -> Vec<f64> {
    let line = text.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no `{key}` in\n{text}"));
    let mut out: Vec<f64> = Vec::new();
    for w in line[key.len()..].split_whitespace() {
        let w = if out.is_empty() { w } else { w.trim_start_matches(['+', '-']) };
        if let Ok(x) = w.parse() {
            out.push(x);
        }
    }
    out
}

#[test]
fn convert_prints_every_parametrization() {
    let o = asymerr(&["convert", "--kind", "pdf", "dimidiated", "5", "1.1", "0.9"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for key in ["quantiles:", "moments:", "params:", "round trip"] {
        assert!(out.contains(key), "{key} missing in\n{out}");
    }
    // μ = M + (σ⁺ − σ⁻)/√(2π).
    let mean = 5.0 + 0.2 / (2.0 * std::f64::consts::PI).sqrt();
    let got = numbers_after(&out, "moments: mean")[0];
    assert!((got - mean).abs() < 1e-5, "{out}");
}

#[test]
fn symmetric_conversion_has_no_skew() {
    let out = stdout(&asymerr(&["convert", "--kind", "pdf", "skew-normal", "2", "0.5", "0.5"]));
    let m = numbers_after(&out, "moments: mean");
    assert!((m[0] - 2.0).abs() < 1e-9, "{out}");
    assert!(out.contains("third 0 "), "{out}");
}

#[test]
fn unrepresentable_asymmetry_exits_2_and_names_the_bound() {
    let o = asymerr(&["convert", "--kind", "pdf", "fechner", "0", "1.3", "0.7"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.starts_with("error-code: unrepresentable-asymmetry\n"), "{err}");
    assert!(err.contains("0.21564027"), "{err}");
}

#[test]
fn usage_errors_exit_1_with_a_code_line() {
    let o = asymerr(&["convert", "dimidiated"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error-code: usage\n"));
}

#[test]
fn parse_errors_report_the_line() {
    let f = write("bad.txt", "# header\na pdf dimidiated 1 +1 -1\nbroken line\n");
    let o = asymerr(&["combine", f.to_str().unwrap(), "--mode", "pdf-errors"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.starts_with("error-code: parse\n"), "{err}");
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn background_errors_sum() {
    let f = write("bg.txt", "b1 lnl linear-variance 4 +2.346 -1.682\nb2 lnl linear-variance 5 +2.581 -1.916\n");
    let o = asymerr(&["combine", f.to_str().unwrap(), "--mode", "lnl-errors"]);
    assert!(o.status.success());
    let r = numbers_after(&stdout(&o), "result:");
    assert!((r[0] - 9.0).abs() < 1e-9);
    assert!((r[1] - 3.333).abs() < 2e-3 && (r[2] - 2.668).abs() < 2e-3, "{r:?}");
}

#[test]
fn three_results_combine() {
    let f = write(
        "three.txt",
        "r1 lnl linear-variance 1.9 +0.7 -0.5\nr2 lnl linear-variance 2.4 +0.6 -0.8\nr3 lnl linear-variance 3.1 +0.5 -0.4\n",
    );
    let out = stdout(&asymerr(&["combine", f.to_str().unwrap(), "--mode", "lnl-results"]));
    let r = numbers_after(&out, "result:");
    for (got, want) in r.iter().zip([2.754, 0.286, 0.263]) {
        assert!((got - want).abs() < 2e-3, "{r:?}");
    }
    assert!(out.contains("goodness of fit"), "{out}");
}

#[test]
fn single_record_is_echoed() {
    let f = write("one.txt", "one pdf distorted 3 +1.2 -0.8\n");
    let out = stdout(&asymerr(&["combine", f.to_str().unwrap(), "--mode", "pdf-errors"]));
    assert_eq!(numbers_after(&out, "result:"), vec![3.0, 1.2, 0.8]);
}

#[test]
fn naive_row_is_labelled_and_json_round_trips() {
    let f = write("pe.txt", "a pdf dimidiated 0 +1 -1\nb pdf dimidiated 0 +1.2 -0.8\n");
    let json = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("pe.json");
    let o = asymerr(&["combine", f.to_str().unwrap(), "--mode", "pdf-errors", "--also-naive", "--out", json.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("naive quadrature (NOT RECOMMENDED)"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["mode"], "pdf-errors");
    assert_eq!(v["naive"]["note"], "NOT RECOMMENDED");
    let sp = v["result"]["sigma_plus"].as_f64().unwrap();
    assert!((sp - 1.5178).abs() < 1e-3, "{sp}");
    let printed = numbers_after(&out, "result:");
    assert!((printed[1] - sp).abs() < 1e-5 * sp);
}

#[test]
fn json_input_matches_line_input() {
    let lines = write("three-l.txt", "a lnl pdg 1.9 +0.7 -0.5\nb lnl pdg 2.4 +0.6 -0.8\nc lnl pdg 3.1 +0.5 -0.4\n");
    let json = write(
        "three.json",
        r#"[{"label":"a","kind":"lnl","family":"pdg","value":1.9,"sigma_plus":0.7,"sigma_minus":0.5},
            {"label":"b","kind":"lnl","family":"pdg","value":2.4,"sigma_plus":0.6,"sigma_minus":0.8},
            {"label":"c","kind":"lnl","family":"pdg","value":3.1,"sigma_plus":0.5,"sigma_minus":0.4}]"#,
    );
    let a = stdout(&asymerr(&["combine", lines.to_str().unwrap(), "--mode", "lnl-results"]));
    let b = stdout(&asymerr(&["combine", json.to_str().unwrap(), "--mode", "lnl-results", "--format", "json"]));
    assert_eq!(a, b);
    let r = numbers_after(&a, "result:");
    assert!((r[0] - 2.726).abs() < 2e-3, "{r:?}");
}

#[test]
fn mixed_kinds_are_rejected() {
    let f = write("mixed.txt", "a pdf dimidiated 1 +1 -1\nb lnl linear-sigma 1 +1 -1\n");
    let o = asymerr(&["combine", f.to_str().unwrap(), "--mode", "lnl-results"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn curve_hits_the_anchors() {
    let o = asymerr(&["curve", "--kind", "lnl", "linear-variance", "0", "1.5", "0.5", "--lo", "-0.5", "--hi", "1.5", "--points", "3"]);
    assert!(o.status.success());
    let rows: Vec<Vec<f64>> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(|w| w.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    let at = |x: f64| rows.iter().find(|r| (r[0] - x).abs() < 1e-12).unwrap()[1];
    assert!((at(-0.5) + 0.5).abs() < 1e-6);
    assert!((at(1.5) + 0.5).abs() < 1e-6);

    let o = asymerr(&["curve", "--kind", "lnl", "linear-variance", "0", "1.5", "0.5", "--lo", "0", "--hi", "0", "--points", "2"]);
    let peak: Vec<f64> = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap()).collect();
    assert!(peak.iter().all(|v| v.abs() < 1e-12), "{peak:?}");
}

#[test]
fn curve_clips_to_the_domain_or_refuses() {
    let clipped = asymerr(&["curve", "--kind", "lnl", "logarithmic", "0", "1.5", "0.5", "--lo", "-10", "--hi", "2", "--points", "5"]);
    assert!(clipped.status.success());
    assert!(stderr(&clipped).contains("clipped"));
    let empty = asymerr(&["curve", "--kind", "lnl", "logarithmic", "0", "1.5", "0.5", "--lo", "-10", "--hi", "-5"]);
    assert_eq!(empty.status.code(), Some(2));
    assert!(stderr(&empty).starts_with("error-code: empty-domain\n"));
}

#[test]
fn unknown_experiment_lists_the_registry() {
    let o = asymerr(&["experiment", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.starts_with("error-code: unknown-experiment\n"));
    assert!(err.contains("lifetime") && err.contains("coverage"), "{err}");
}

#[test]
fn experiments_pass_and_repeat_byte_for_byte() {
    let first = asymerr(&["experiment", "lhcb"]);
    assert!(first.status.success(), "{}", stdout(&first));
    assert!(stdout(&first).contains("PASS dimidiated: sigma+"));
    assert_eq!(first.stdout, asymerr(&["experiment", "lhcb"]).stdout);

    let args = ["experiment", "wilks", "--replicas", "2000", "--seed", "7"];
    let a = asymerr(&args);
    assert_eq!(a.stdout, asymerr(&args).stdout);
    assert!(stdout(&a).contains("not flat at low mean"), "{}", stdout(&a));
}

#[test]
fn failing_checks_exit_4_and_keep_the_tables() {
    // One replica cannot show a non-flat histogram, so the low-mean check fails.
    let o = asymerr(&["experiment", "wilks", "--replicas", "1", "--mean", "5", "--group", "2"]);
    assert_eq!(o.status.code(), Some(4), "{}", stdout(&o));
    assert!(stdout(&o).contains("p-value histogram"));
    assert!(stderr(&o).starts_with("error-code: check-failed\n"));
}

#[test]
fn list_models_names_every_family() {
    let out = stdout(&asymerr(&["list-models"]));
    for name in ["dimidiated", "johnson-su", "linear-variance", "log-logistic-beta", "generalized-poisson", "coverage"] {
        assert!(out.contains(name), "{name}");
    }
}

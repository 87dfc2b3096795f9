//! Number formatting, aligned text tables and JSON documents.

use asymerr_core::combine::{CombinationReport, Estimate};
use asymerr_core::pdf::QuantileTriple;
use serde_json::{json, Value};

/// `x` rounded to `digits` significant figures. Plain decimal notation is
/// used for magnitudes in `[1e-4, 1e(digits+3))`, scientific otherwise.
pub fn sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if e < -4 || e >= digits as i32 + 3 {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i32 - 1 - e).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (9.99 → 10.0).
    if decimals > 0 && s.trim_start_matches('-').replace('.', "").trim_start_matches('0').len() > digits {
        return format!("{:.*}", decimals - 1, x);
    }
    s
}

/// A table of strings with a title and a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct TextTable {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new(title: &str, header: &[&str]) -> Self {
        Self { title: title.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Left-aligned first column, right-aligned numbers.
    pub fn render(&self) -> String {
        let ncol = self.rows.iter().map(Vec::len).chain([self.header.len()]).max().unwrap_or(0);
        let mut width = vec![0; ncol];
        for row in std::iter::once(&self.header).chain(&self.rows) {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |row: &[String]| {
            let mut s = String::new();
            for (i, w) in width.iter().enumerate() {
                let cell = row.get(i).map(String::as_str).unwrap_or("");
                let pad = w - cell.chars().count();
                if i > 0 {
                    s.push_str("  ");
                }
                if i == 0 {
                    s.push_str(cell);
                    s.push_str(&" ".repeat(pad));
                } else {
                    s.push_str(&" ".repeat(pad));
                    s.push_str(cell);
                }
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = String::new();
        if !self.title.is_empty() {
            out.push_str(&self.title);
            out.push('\n');
        }
        out.push_str(&line(&self.header));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

/// `v +p -m` with the given significant digits.
pub fn triple(v: f64, p: f64, m: f64, digits: usize) -> String {
    format!("{} +{} -{}", sig(v, digits), sig(p, digits), sig(m, digits))
}

/// JSON number, or null when not finite.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn estimate_json(e: &Estimate) -> Value {
    let kind = match e {
        Estimate::Quantiles(_) => "quantiles",
        Estimate::LnL(_) => "lnl",
    };
    json!({
        "kind": kind,
        "central": num(e.central()),
        "sigma_plus": num(e.sigma_plus()),
        "sigma_minus": num(e.sigma_minus()),
    })
}

/// Mirror of a [`CombinationReport`] for structured output.
pub fn report_json(mode: &str, report: &CombinationReport, naive: Option<&QuantileTriple>) -> Value {
    let moments = report.moments.map(|m| {
        json!({ "mean": num(m.mean), "variance": num(m.variance), "third": num(m.third), "skewness": num(m.skewness()) })
    });
    let gof = report
        .gof
        .map(|g| json!({ "chi2": num(g.chi2), "ndof": g.ndof, "p_value": num(g.p_value) }));
    let model = report.model.as_ref().map(|m| {
        let params: serde_json::Map<String, Value> = m.params().into_iter().map(|(k, v)| (k.to_string(), num(v))).collect();
        json!({ "family": m.family().to_string(), "params": params })
    });
    let naive = naive.map(|q| {
        json!({ "central": num(q.median), "sigma_plus": num(q.sigma_plus), "sigma_minus": num(q.sigma_minus), "note": "NOT RECOMMENDED" })
    });
    json!({
        "mode": mode,
        "result": estimate_json(&report.result),
        "moments": moments,
        "median_shift": report.median_shift.map(num),
        "weights": report.weights.iter().map(|w| num(*w)).collect::<Vec<_>>(),
        "goodness_of_fit": gof,
        "model": model,
        "naive": naive,
    })
}

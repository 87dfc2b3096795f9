//! Measurement files.
//!
//! The line format holds one record per line:
//!
//! ```text
//! # label kind family value +sigma_plus -sigma_minus [key=value ...]
//! stat  lnl linear-variance 4.5 +3.3 -2.5
//! syst  pdf dimidiated      0.0 +0.4 -0.2 coeff=2
//! beta  pdf symmetric-beta  1.0 +0.5 -0.3 p=2 h=1.5
//! odd   pdf dimidiated      3.0 +0.4 -0.1 flipped=+1
//! ```
//!
//! `σ⁻` is a magnitude; the leading `-` is optional decoration. Recognized
//! options are `coeff`, `flipped` (`+1` or `-1`: both one-at-a-time
//! deviations lie above or below `value`), `p` and `h` (symmetric beta),
//! `h_left` and `h_right` (railway), `kappa` and `stretch` (conservative
//! spline). The same records can be given as a JSON array of objects with
//! the fields of [`MeasurementRecord`].

use std::collections::BTreeMap;
use std::fmt;

use asymerr_core::combine::{LnLTerm, PdfTerm};
use asymerr_core::lnl::{lnl_from_triple, Kappa, LnLFamily, LnLModel, LnLTriple};
use asymerr_core::pdf::{
    flipped_moments, pdf_from_moments, pdf_from_quantiles, FlipDirection, FlippedSpec, PdfFamily, PdfModel,
    QuantileTriple,
};
use serde::{Deserialize, Serialize};

const OPTIONS: [&str; 8] = ["coeff", "flipped", "p", "h", "h_left", "h_right", "kappa", "stretch"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Pdf,
    Lnl,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Pdf => "pdf",
            Kind::Lnl => "lnl",
        })
    }
}

/// One quoted result with the model to read it through.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub label: String,
    pub kind: Kind,
    pub family: String,
    pub value: f64,
    pub sigma_plus: f64,
    pub sigma_minus: f64,
    #[serde(default = "one")]
    pub coefficient: f64,
    #[serde(default)]
    pub options: BTreeMap<String, String>,
}

fn one() -> f64 {
    1.0
}

/// A malformed record, with its 1-based line number.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Input file syntax.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Line,
    Json,
}

pub fn parse(text: &str, format: Format) -> Result<Vec<MeasurementRecord>, ParseError> {
    match format {
        Format::Line => parse_lines(text),
        Format::Json => parse_json(text),
    }
}

pub fn parse_lines(text: &str) -> Result<Vec<MeasurementRecord>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rec = parse_record(line).map_err(|message| ParseError { line: i + 1, message })?;
        out.push(rec);
    }
    Ok(out)
}

pub fn parse_json(text: &str) -> Result<Vec<MeasurementRecord>, ParseError> {
    #[derive(Deserialize)]
    struct Raw {
        label: String,
        kind: Kind,
        family: String,
        value: f64,
        sigma_plus: f64,
        sigma_minus: f64,
        #[serde(default = "one")]
        coefficient: f64,
        #[serde(default)]
        options: BTreeMap<String, serde_json::Value>,
    }
    let raw: Vec<Raw> =
        serde_json::from_str(text).map_err(|e| ParseError { line: e.line(), message: e.to_string() })?;
    let mut out = Vec::with_capacity(raw.len());
    for (i, r) in raw.into_iter().enumerate() {
        let options = r
            .options
            .into_iter()
            .map(|(k, v)| {
                let v = match v {
                    serde_json::Value::String(s) => s,
                    other => other.to_string(),
                };
                (k, v)
            })
            .collect();
        let rec = MeasurementRecord {
            label: r.label,
            kind: r.kind,
            family: r.family,
            value: r.value,
            sigma_plus: r.sigma_plus,
            sigma_minus: r.sigma_minus.abs(),
            coefficient: r.coefficient,
            options,
        };
        rec.validate().map_err(|message| ParseError { line: i + 1, message: format!("record {}: {message}", i + 1) })?;
        out.push(rec);
    }
    Ok(out)
}

fn number(tok: &str, what: &str) -> Result<f64, String> {
    tok.parse::<f64>().map_err(|_| format!("{what} is not a number: {tok:?}"))
}

/// Parses one non-empty, comment-free line.
pub fn parse_record(line: &str) -> Result<MeasurementRecord, String> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() < 6 {
        return Err(format!(
            "expected `label kind family value +sigma_plus -sigma_minus [key=value ...]`, found {} fields",
            toks.len()
        ));
    }
    let kind = match toks[1] {
        "pdf" => Kind::Pdf,
        "lnl" => Kind::Lnl,
        k => return Err(format!("kind must be pdf or lnl, found {k:?}")),
    };
    let value = number(toks[3], "value")?;
    let sigma_plus = number(toks[4].strip_prefix('+').unwrap_or(toks[4]), "sigma_plus")?;
    let sigma_minus = number(toks[5].strip_prefix('-').unwrap_or(toks[5]), "sigma_minus")?;
    let mut options = BTreeMap::new();
    let mut coefficient = 1.0;
    for tok in &toks[6..] {
        let (k, v) = tok.split_once('=').ok_or_else(|| format!("option {tok:?} is not key=value"))?;
        if k == "coeff" {
            coefficient = number(v, "coeff")?;
        } else {
            options.insert(k.to_string(), v.to_string());
        }
    }
    let rec = MeasurementRecord {
        label: toks[0].to_string(),
        kind,
        family: toks[2].to_string(),
        value,
        sigma_plus,
        sigma_minus,
        coefficient,
        options,
    };
    rec.validate()?;
    Ok(rec)
}

impl MeasurementRecord {
    pub fn new(label: &str, kind: Kind, family: &str, value: f64, sigma_plus: f64, sigma_minus: f64) -> Self {
        Self {
            label: label.to_string(),
            kind,
            family: family.to_string(),
            value,
            sigma_plus,
            sigma_minus,
            coefficient: 1.0,
            options: BTreeMap::new(),
        }
    }

    fn option(&self, key: &str) -> Result<Option<f64>, String> {
        self.options.get(key).map(|v| number(v, key)).transpose()
    }

    /// Checks everything that does not need a model fit.
    pub fn validate(&self) -> Result<(), String> {
        if let Some(k) = self.options.keys().find(|k| !OPTIONS.contains(&k.as_str())) {
            return Err(format!("unknown option {k:?}; known options: {}", OPTIONS.join(", ")));
        }
        for (what, x) in [("value", self.value), ("sigma_plus", self.sigma_plus), ("sigma_minus", self.sigma_minus)] {
            if !x.is_finite() {
                return Err(format!("{what} must be finite"));
            }
        }
        if !(self.coefficient.is_finite() && self.coefficient != 0.0) {
            return Err(format!("coeff must be finite and nonzero, found {}", self.coefficient));
        }
        let flipped = self.flip()?;
        if flipped.is_some() {
            if self.kind != Kind::Pdf {
                return Err("flipped applies to pdf records only".into());
            }
            if self.sigma_plus < 0.0 || self.sigma_minus < 0.0 || self.sigma_plus + self.sigma_minus == 0.0 {
                return Err("flipped deviations must be non-negative and not both zero".into());
            }
        } else if !(self.sigma_plus > 0.0 && self.sigma_minus > 0.0) {
            return Err(format!(
                "errors must be positive (sigma_plus = {}, sigma_minus = {})",
                self.sigma_plus, self.sigma_minus
            ));
        }
        match self.kind {
            Kind::Pdf => self.pdf_family().map(|_| ()),
            Kind::Lnl => self.lnl_family().map(|_| ()),
        }
    }

    fn flip(&self) -> Result<Option<FlipDirection>, String> {
        match self.options.get("flipped").map(String::as_str) {
            None => Ok(None),
            Some("+1") | Some("1") => Ok(Some(FlipDirection::Up)),
            Some("-1") => Ok(Some(FlipDirection::Down)),
            Some(v) => Err(format!("flipped must be +1 or -1, found {v:?}")),
        }
    }

    pub fn pdf_family(&self) -> Result<PdfFamily, String> {
        let base = PdfFamily::from_name(&self.family).ok_or_else(|| {
            let names: Vec<&str> = PdfFamily::ALL.iter().map(|f| f.name()).collect();
            format!("unknown pdf family {:?}; known: {}", self.family, names.join(", "))
        })?;
        Ok(match base {
            PdfFamily::SymmetricBeta { p, h } => {
                let p = match self.option("p")? {
                    Some(x) if x.fract() == 0.0 && x >= 1.0 => x as u32,
                    Some(x) => return Err(format!("p must be a positive integer, found {x}")),
                    None => p,
                };
                PdfFamily::SymmetricBeta { p, h: self.option("h")?.unwrap_or(h) }
            }
            PdfFamily::Railway { .. } => {
                PdfFamily::Railway { h_left: self.option("h_left")?, h_right: self.option("h_right")? }
            }
            f => f,
        })
    }

    pub fn lnl_family(&self) -> Result<LnLFamily, String> {
        let base = LnLFamily::from_name(&self.family).ok_or_else(|| {
            let names: Vec<&str> = LnLFamily::ALL.iter().map(|f| f.name()).collect();
            format!("unknown lnl family {:?}; known: {}", self.family, names.join(", "))
        })?;
        Ok(match base {
            LnLFamily::ConservativeSpline(_) => match (self.option("kappa")?, self.option("stretch")?) {
                (Some(_), Some(_)) => return Err("give kappa or stretch, not both".into()),
                (Some(k), None) => LnLFamily::ConservativeSpline(Kappa::Exact(k)),
                (None, Some(l)) => LnLFamily::ConservativeSpline(Kappa::Stretch(l)),
                (None, None) => base,
            },
            f => f,
        })
    }

    /// The density this record describes. A flipped record is replaced by
    /// the family member with the moments of its half-Gaussian pair.
    pub fn to_pdf(&self) -> asymerr_core::Result<PdfModel> {
        let family = self.pdf_family().map_err(|_| asymerr_core::Error::MixedFamilies)?;
        match self.flip().ok().flatten() {
            Some(direction) => {
                let spec = FlippedSpec { extreme: self.value, sigma1: self.sigma_plus, sigma2: self.sigma_minus, direction };
                pdf_from_moments(family, flipped_moments(&spec)?)
            }
            None => pdf_from_quantiles(family, QuantileTriple::new(self.value, self.sigma_plus, self.sigma_minus)?),
        }
    }

    pub fn to_lnl(&self) -> asymerr_core::Result<LnLModel> {
        let family = self.lnl_family().map_err(|_| asymerr_core::Error::MixedFamilies)?;
        lnl_from_triple(family, LnLTriple::new(self.value, self.sigma_plus, self.sigma_minus)?)
    }

    pub fn to_pdf_term(&self) -> asymerr_core::Result<PdfTerm> {
        Ok(PdfTerm::new(self.to_pdf()?, self.coefficient))
    }

    pub fn to_lnl_term(&self) -> asymerr_core::Result<LnLTerm> {
        Ok(LnLTerm::new(self.to_lnl()?, self.coefficient))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_with_options() {
        let r = parse_record("b pdf symmetric-beta 1 +0.5 -0.3 p=3 h=2 coeff=-2").unwrap();
        assert_eq!(r.kind, Kind::Pdf);
        assert_eq!(r.coefficient, -2.0);
        assert_eq!(r.pdf_family().unwrap(), PdfFamily::SymmetricBeta { p: 3, h: 2.0 });
        assert_eq!(r.sigma_minus, 0.3);
    }

    #[test]
    fn bare_magnitudes_are_accepted() {
        let r = parse_record("x lnl pdg 2 0.4 0.3").unwrap();
        assert_eq!((r.sigma_plus, r.sigma_minus), (0.4, 0.3));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "# header\n\na pdf dimidiated 1 +1 -1\nb pdf nosuch 1 +1 -1\n";
        let e = parse_lines(text).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("nosuch"));
        let e = parse_lines("a pdf dimidiated 1 +1\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_lines("a lnl cubic 1 +1 -1 colour=red\n").unwrap_err();
        assert!(e.message.contains("unknown option"));
    }

    #[test]
    fn zero_error_needs_flip() {
        assert!(parse_record("a pdf dimidiated 1 +1 -0").is_err());
        let r = parse_record("a pdf dimidiated 1 +1 -0 flipped=+1").unwrap();
        let m = r.to_pdf().unwrap();
        assert!(m.moments().mean > 1.0);
        assert!(parse_record("a lnl cubic 1 +1 -0.5 flipped=-1").is_err());
    }

    #[test]
    fn json_matches_lines() {
        let lines = parse_lines("s lnl conservative-spline 2 +0.5 -0.4 stretch=0.5 coeff=3\n").unwrap();
        let json = parse_json(
            r#"[{"label":"s","kind":"lnl","family":"conservative-spline","value":2,
                "sigma_plus":0.5,"sigma_minus":0.4,"coefficient":3,"options":{"stretch":0.5}}]"#,
        )
        .unwrap();
        assert_eq!(lines, json);
        assert_eq!(lines[0].lnl_family().unwrap(), LnLFamily::ConservativeSpline(Kappa::Stretch(0.5)));
    }

    #[test]
    fn json_error_line() {
        let e = parse_json("[\n{\"label\": 1}\n]").unwrap_err();
        assert_eq!(e.line, 2);
    }
}

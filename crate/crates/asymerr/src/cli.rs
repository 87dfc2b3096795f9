//! Command-line front end. [`run`] takes the arguments and returns the text
//! for stdout or a [`CliError`] carrying the exit status.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use asymerr_core::combine::{
    combine_lnl_errors, combine_lnl_results, combine_pdf_errors, combine_pdf_results, naive_quadrature_combination,
    CombinationReport, Estimate,
};
use asymerr_core::lnl::LnLFamily;
use asymerr_core::pdf::{pdf_from_moments, PdfFamily};
use clap::{Parser, Subcommand, ValueEnum};

use crate::experiments::{self, ExperimentSpec, Tier};
use crate::output::{report_json, sig, triple, TextTable};
use crate::record::{self, Format, Kind, MeasurementRecord};

/// Failure with its exit status, a stable code and a sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub exit: u8,
    pub code: String,
    pub message: String,
    /// Output produced before the failure (experiment tables).
    pub stdout: String,
}

impl CliError {
    fn new(exit: u8, code: &str, message: impl Into<String>) -> Self {
        Self { exit, code: code.into(), message: message.into(), stdout: String::new() }
    }

    fn usage(code: &str, message: impl Into<String>) -> Self {
        Self::new(1, code, message)
    }

    /// The two lines written to stderr.
    pub fn render(&self) -> String {
        format!("error-code: {}\n{}\n", self.code, self.message)
    }
}

impl From<asymerr_core::Error> for CliError {
    fn from(e: asymerr_core::Error) -> Self {
        let exit = if e.is_convergence_failure() { 3 } else { 2 };
        Self::new(exit, e.code(), e.to_string())
    }
}

impl From<record::ParseError> for CliError {
    fn from(e: record::ParseError) -> Self {
        Self::usage("parse", e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "asymerr", version, about = "Asymmetric errors: conversions, combinations, curves and experiments")]
pub struct Cli {
    /// Significant digits in printed numbers.
    #[arg(long, global = true, default_value_t = 6)]
    pub digits: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a result's quantiles, moments and fitted parameters.
    Convert {
        #[command(flatten)]
        record: RecordArgs,
        /// Which parameterization to print.
        #[arg(long, value_enum, default_value_t = Target::All)]
        to: Target,
    },
    /// Combine the records of a file.
    Combine {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Output density family (density modes); defaults to the first record's.
        #[arg(long)]
        family_out: Option<String>,
        /// Also print positive and negative errors added separately in quadrature.
        #[arg(long)]
        also_naive: bool,
        /// Permit result combination across density families.
        #[arg(long)]
        allow_mixed: bool,
        #[arg(long, value_enum, default_value_t = FileFormat::Line)]
        format: FileFormat,
        /// Write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a density or a log-likelihood on a uniform grid.
    Curve {
        #[command(flatten)]
        record: RecordArgs,
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, allow_negative_numbers = true)]
        hi: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Run a registered experiment.
    Experiment {
        name: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = TierArg::Fast)]
        tier: TierArg,
        /// Override the tier's replica count.
        #[arg(long)]
        replicas: Option<u64>,
        /// Poisson mean (wilks).
        #[arg(long)]
        mean: Option<f64>,
        /// Results per combination (wilks).
        #[arg(long)]
        group: Option<f64>,
        /// Any parameter, as key=value.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Write the outcome as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List model families and experiments.
    ListModels,
}

#[derive(clap::Args, Debug)]
pub struct RecordArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Pdf)]
    pub kind: KindArg,
    pub family: String,
    #[arg(allow_negative_numbers = true)]
    pub value: f64,
    /// Upper error, with or without a leading `+`.
    #[arg(allow_hyphen_values = true)]
    pub plus: String,
    /// Lower error as a magnitude, with or without a leading `-`.
    #[arg(allow_hyphen_values = true)]
    pub minus: String,
    /// Model option as key=value (repeatable).
    #[arg(long = "opt", value_name = "KEY=VALUE")]
    pub opt: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    Pdf,
    Lnl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    All,
    Quantiles,
    Moments,
    Params,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    PdfErrors,
    PdfResults,
    LnlResults,
    LnlErrors,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileFormat {
    Line,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TierArg {
    Fast,
    Full,
}

impl RecordArgs {
    fn record(&self) -> Result<MeasurementRecord, CliError> {
        let kind = match self.kind {
            KindArg::Pdf => "pdf",
            KindArg::Lnl => "lnl",
        };
        let line = format!("cli {kind} {} {} {} {} {}", self.family, self.value, self.plus, self.minus, self.opt.join(" "));
        record::parse_record(&line).map_err(|m| CliError::usage("parse", m))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(e.to_string()),
                _ => Err(CliError::usage("usage", e.to_string().trim_end().to_string())),
            };
        }
    };
    let d = cli.digits;
    match cli.command {
        Command::Convert { record, to } => convert(&record.record()?, to, d),
        Command::Combine { file, mode, family_out, also_naive, allow_mixed, format, out } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| CliError::usage("io", format!("cannot read {}: {e}", file.display())))?;
            let format = match format {
                FileFormat::Line => Format::Line,
                FileFormat::Json => Format::Json,
            };
            let records = record::parse(&text, format)?;
            let opts = CombineOptions { family_out, also_naive, allow_mixed, out };
            combine(&records, mode, &opts, d)
        }
        Command::Curve { record, lo, hi, points } => {
            let (s, warning) = curve(&record.record()?, lo, hi, points, d)?;
            if let Some(w) = warning {
                eprintln!("{w}");
            }
            Ok(s)
        }
        Command::Experiment { name, seed, tier, replicas, mean, group, set, out } => {
            let tier = match tier {
                TierArg::Fast => Tier::Fast,
                TierArg::Full => Tier::Full,
            };
            let mut params = BTreeMap::new();
            for kv in &set {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| CliError::usage("usage", format!("--set expects key=value, found {kv:?}")))?;
                let v: f64 =
                    v.parse().map_err(|_| CliError::usage("usage", format!("parameter {k} is not a number: {v:?}")))?;
                params.insert(k.to_string(), v);
            }
            if let Some(m) = mean {
                params.insert("mean".into(), m);
            }
            if let Some(g) = group {
                params.insert("group".into(), g);
            }
            experiment(&name, seed, tier, replicas, params, out, d)
        }
        Command::ListModels => Ok(list_models()),
    }
}

fn convert(rec: &MeasurementRecord, to: Target, d: usize) -> Result<String, CliError> {
    let mut s = String::new();
    let show = |t: Target| to == Target::All || to == t;
    match rec.kind {
        Kind::Pdf => {
            let m = rec.to_pdf()?;
            let q = m.quantiles();
            let mo = m.moments();
            writeln!(s, "family: {}", m.family()).unwrap();
            if show(Target::Quantiles) {
                writeln!(s, "quantiles: median {} sigma+ {} sigma- {}", sig(q.median, d), sig(q.sigma_plus, d), sig(q.sigma_minus, d)).unwrap();
            }
            if show(Target::Moments) {
                writeln!(
                    s,
                    "moments: mean {} variance {} third {} skewness {}",
                    sig(mo.mean, d),
                    sig(mo.variance, d),
                    sig(mo.third, d),
                    sig(mo.skewness(), d)
                )
                .unwrap();
            }
            if show(Target::Params) {
                writeln!(s, "params: {}", params(&m.params(), d)).unwrap();
            }
            let back = pdf_from_moments(m.family(), mo)?.quantiles();
            let r = (back.median - q.median).abs().max((back.sigma_plus - q.sigma_plus).abs()).max((back.sigma_minus - q.sigma_minus).abs());
            writeln!(s, "round trip quantiles -> moments -> quantiles: max residual {}", sig(r, 3)).unwrap();
        }
        Kind::Lnl => {
            let m = rec.to_lnl()?;
            let t = m.triple();
            writeln!(s, "family: {}", m.family()).unwrap();
            if show(Target::Quantiles) {
                writeln!(s, "triple: peak {} sigma+ {} sigma- {}", sig(t.a_hat, d), sig(t.sigma_plus, d), sig(t.sigma_minus, d)).unwrap();
            }
            if show(Target::Params) {
                writeln!(s, "params: {}", params(&m.params(), d)).unwrap();
            }
            let (up, down) = m.solve_delta_half()?;
            let peak = m.peak();
            let r = (peak + up - t.a_hat - t.sigma_plus).abs().max((peak - down - t.a_hat + t.sigma_minus).abs());
            writeln!(s, "round trip delta-lnL = -1/2 points: max residual {}", sig(r, 3)).unwrap();
        }
    }
    Ok(s)
}

fn params(p: &[(&str, f64)], d: usize) -> String {
    p.iter().map(|(k, v)| format!("{k}={}", sig(*v, d))).collect::<Vec<_>>().join(" ")
}

pub struct CombineOptions {
    pub family_out: Option<String>,
    pub also_naive: bool,
    pub allow_mixed: bool,
    pub out: Option<PathBuf>,
}

fn combine(records: &[MeasurementRecord], mode: Mode, opts: &CombineOptions, d: usize) -> Result<String, CliError> {
    if records.is_empty() {
        return Err(CliError::usage("empty", "the file holds no records"));
    }
    let want = match mode {
        Mode::PdfErrors | Mode::PdfResults => Kind::Pdf,
        Mode::LnlErrors | Mode::LnlResults => Kind::Lnl,
    };
    if let Some(r) = records.iter().find(|r| r.kind != want) {
        return Err(CliError::usage("kind-mismatch", format!("record {:?} is {} but this mode needs {want} records", r.label, r.kind)));
    }
    let family_out = match &opts.family_out {
        None => None,
        Some(name) => {
            if want == Kind::Lnl {
                return Err(CliError::usage("usage", "--family-out applies to density modes only"));
            }
            Some(PdfFamily::from_name(name).ok_or_else(|| CliError::usage("unknown-family", format!("unknown pdf family {name:?}")))?)
        }
    };
    let mode_name = mode.to_possible_value().expect("no skipped variants").get_name().to_string();
    let mut naive = None;
    let report: CombinationReport = match mode {
        Mode::PdfErrors => {
            let terms = records.iter().map(|r| r.to_pdf_term()).collect::<Result<Vec<_>, _>>()?;
            let family = family_out.unwrap_or(terms[0].model.family());
            if opts.also_naive {
                naive = Some(naive_quadrature_combination(&terms)?);
            }
            combine_pdf_errors(&terms, family)?
        }
        Mode::PdfResults => {
            let models = records.iter().map(|r| r.to_pdf()).collect::<Result<Vec<_>, _>>()?;
            let mut rep = combine_pdf_results(&models, opts.allow_mixed)?;
            if let (Some(f), Some(mo)) = (family_out, rep.moments) {
                let m = pdf_from_moments(f, mo)?;
                rep.result = Estimate::Quantiles(m.quantiles());
                rep.model = Some(m);
            }
            rep
        }
        Mode::LnlResults => {
            let models = records.iter().map(|r| r.to_lnl()).collect::<Result<Vec<_>, _>>()?;
            combine_lnl_results(&models)?
        }
        Mode::LnlErrors => {
            let terms = records.iter().map(|r| r.to_lnl_term()).collect::<Result<Vec<_>, _>>()?;
            combine_lnl_errors(&terms)?
        }
    };

    let mut s = String::new();
    writeln!(s, "mode: {mode_name}").unwrap();
    writeln!(s, "inputs: {}", records.len()).unwrap();
    if let Some(m) = &report.model {
        writeln!(s, "family: {}", m.family()).unwrap();
    }
    let e = report.result;
    writeln!(s, "result: {}", triple(e.central(), e.sigma_plus(), e.sigma_minus(), d)).unwrap();
    if let Some(mo) = report.moments {
        writeln!(
            s,
            "moments: mean {} variance {} third {} skewness {}",
            sig(mo.mean, d),
            sig(mo.variance, d),
            sig(mo.third, d),
            sig(mo.skewness(), d)
        )
        .unwrap();
    }
    if let Some(shift) = report.median_shift {
        writeln!(s, "median shift (combined median minus summed input medians): {}", sig(shift, d)).unwrap();
    }
    if !report.weights.is_empty() {
        let mut t = TextTable::new("weights", &["label", "weight"]);
        for (r, w) in records.iter().zip(&report.weights) {
            t.push(vec![r.label.clone(), sig(*w, d)]);
        }
        s.push_str(&t.render());
    }
    if let Some(g) = report.gof {
        writeln!(s, "goodness of fit: chi2 {} ndof {} p {}", sig(g.chi2, d), g.ndof, sig(g.p_value, d)).unwrap();
    }
    if let Some(q) = &naive {
        writeln!(s, "naive quadrature (NOT RECOMMENDED): {}", triple(q.median, q.sigma_plus, q.sigma_minus, d)).unwrap();
    }
    if let Some(path) = &opts.out {
        let doc = report_json(&mode_name, &report, naive.as_ref());
        write_json(path, &doc)?;
    }
    Ok(s)
}

fn write_json(path: &PathBuf, doc: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc).expect("values serialize");
    std::fs::write(path, text + "\n").map_err(|e| CliError::usage("io", format!("cannot write {}: {e}", path.display())))
}

/// Grid of the curve; the second element holds any warning for stderr.
pub fn curve(rec: &MeasurementRecord, lo: f64, hi: f64, points: usize, d: usize) -> Result<(String, Option<String>), CliError> {
    if points < 2 {
        return Err(CliError::usage("usage", "--points must be at least 2"));
    }
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(CliError::usage("usage", format!("empty range [{lo}, {hi}]")));
    }
    enum M {
        P(asymerr_core::pdf::PdfModel),
        L(asymerr_core::lnl::LnLModel),
    }
    let (model, (dlo, dhi), meta) = match rec.kind {
        Kind::Pdf => {
            let m = rec.to_pdf()?;
            let meta = format!("# pdf {} {}", m.family(), params(&m.params(), d));
            let sup = m.support();
            (M::P(m), sup, meta)
        }
        Kind::Lnl => {
            let m = rec.to_lnl()?;
            let meta = format!("# lnl {} {}", m.family(), params(&m.params(), d));
            let (a, b) = m.domain();
            // Open interval: stay a hair inside.
            let eps = 1e-9 * (hi - lo);
            (M::L(m), (a + eps, b - eps), meta)
        }
    };
    let (clo, chi) = (lo.max(dlo), hi.min(dhi));
    if clo.is_nan() || chi.is_nan() || clo >= chi {
        return Err(CliError::new(2, "empty-domain", format!("[{lo}, {hi}] does not meet the model's domain ({dlo}, {dhi})")));
    }
    let warning = (clo != lo || chi != hi).then(|| format!("warning: range clipped to [{clo}, {chi}] (model domain)"));
    let mut s = meta;
    s.push('\n');
    s.push_str(match model {
        M::P(_) => "# x density\n",
        M::L(_) => "# a lnL\n",
    });
    for i in 0..points {
        let x = if i + 1 == points { chi } else { clo + (chi - clo) * i as f64 / (points - 1) as f64 };
        let y = match &model {
            M::P(m) => m.density(x),
            M::L(m) => m.log_likelihood(x)?,
        };
        writeln!(s, "{} {}", sig(x, d), sig(y, d)).unwrap();
    }
    Ok((s, warning))
}

fn experiment(
    name: &str,
    seed: u64,
    tier: Tier,
    replicas: Option<u64>,
    params: BTreeMap<String, f64>,
    out: Option<PathBuf>,
    d: usize,
) -> Result<String, CliError> {
    let Some(mut spec) = ExperimentSpec::new(name, seed, tier) else {
        let names: Vec<&str> = experiments::REGISTRY.iter().map(|e| e.name).collect();
        return Err(CliError::usage("unknown-experiment", format!("no experiment {name:?}; available: {}", names.join(", "))));
    };
    let known = experiments::find(name).expect("registered").parameters;
    if let Some(k) = params.keys().find(|k| !known.iter().any(|(n, _)| n == k)) {
        let names: Vec<&str> = known.iter().map(|(n, _)| *n).collect();
        return Err(CliError::usage("usage", format!("{name} has no parameter {k:?}; parameters: {}", if names.is_empty() { "none".into() } else { names.join(", ") })));
    }
    if let Some(r) = replicas {
        if r == 0 {
            return Err(CliError::usage("usage", "--replicas must be at least 1"));
        }
        spec.replicas = r;
    }
    spec.parameters = params;
    let outcome = experiments::run(&spec)?;
    let mut s = format!("experiment: {name}  seed: {seed}  replicas: {}\n\n", spec.replicas);
    s.push_str(&outcome.render(d));
    if let Some(path) = &out {
        write_json(path, &outcome.to_json(&spec))?;
    }
    if outcome.passed() {
        Ok(s)
    } else {
        let failed = outcome.checks.iter().filter(|c| !c.pass).count();
        Err(CliError { exit: 4, code: "check-failed".into(), message: format!("{failed} check(s) failed"), stdout: s })
    }
}

fn list_models() -> String {
    let mut s = String::new();
    let mut t = TextTable::new("pdf families", &["name", "options"]);
    for f in PdfFamily::ALL {
        let opts = match f {
            PdfFamily::SymmetricBeta { .. } => "p=1..20 (default 2), h=0.1..10 (default 1)",
            PdfFamily::Railway { .. } => "h_left, h_right (default from the curvature)",
            _ => "",
        };
        t.push(vec![f.name().into(), opts.into()]);
    }
    s.push_str(&t.render());
    s.push('\n');
    let mut t = TextTable::new("lnl families", &["name", "largest sigma ratio", "options"]);
    for f in LnLFamily::ALL {
        let bound = f.ratio_bound().map_or(String::new(), |b| sig(b, 6));
        let opts = match f {
            LnLFamily::ConservativeSpline(_) => "kappa>=1 or stretch>=0 (default: largest)",
            _ => "",
        };
        t.push(vec![f.name().into(), bound, opts.into()]);
    }
    s.push_str(&t.render());
    s.push('\n');
    let mut t = TextTable::new("experiments", &["name", "replicas (fast/full)", "about"]);
    for e in experiments::REGISTRY {
        t.push(vec![e.name.into(), format!("{}/{}", e.replicas.0, e.replicas.1), e.about.into()]);
    }
    s.push_str(&t.render());
    s
}

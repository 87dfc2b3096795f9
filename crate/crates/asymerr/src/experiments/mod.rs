//! Seeded simulations and worked cases, each producing tables and a list of
//! named checks with tolerances.

pub mod backgrounds;
pub mod coverage;
pub mod interchange;
pub mod lhcb;
pub mod lifetime;
mod mc;
pub mod pdf_mc;
pub mod product;
pub mod wilks;

use std::collections::BTreeMap;

use asymerr_core::Result;
use serde_json::{json, Value};

use crate::output::{num, sig, TextTable};

pub use coverage::{a_factor, a_factor_triple};
pub use mc::{run_chunks, CHUNK};

/// Replica budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    Fast,
    Full,
}

/// What to run and with which seed.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub name: String,
    pub seed: u64,
    pub replicas: u64,
    pub parameters: BTreeMap<String, f64>,
}

impl ExperimentSpec {
    /// The registry's defaults for `name` at `tier`.
    pub fn new(name: &str, seed: u64, tier: Tier) -> Option<Self> {
        let e = find(name)?;
        let replicas = match tier {
            Tier::Fast => e.replicas.0,
            Tier::Full => e.replicas.1,
        };
        Some(Self { name: name.into(), seed, replicas, parameters: BTreeMap::new() })
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.parameters.insert(key.into(), value);
        self
    }

    pub fn param(&self, key: &str, default: f64) -> f64 {
        self.parameters.get(key).copied().unwrap_or(default)
    }
}

/// A named comparison and whether it held.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `|observed − expected| ≤ tolerance`.
    Near,
    /// `observed < expected`.
    Below,
    /// `observed > expected`.
    Above,
}

impl Check {
    pub fn near(name: &str, observed: f64, expected: f64, tolerance: f64) -> Self {
        let pass = (observed - expected).abs() <= tolerance;
        Self { name: name.into(), observed, expected, tolerance, relation: Relation::Near, pass }
    }

    pub fn below(name: &str, observed: f64, limit: f64) -> Self {
        Self { name: name.into(), observed, expected: limit, tolerance: 0.0, relation: Relation::Below, pass: observed < limit }
    }

    pub fn above(name: &str, observed: f64, limit: f64) -> Self {
        Self { name: name.into(), observed, expected: limit, tolerance: 0.0, relation: Relation::Above, pass: observed > limit }
    }

    /// A yes/no condition, recorded as 1 or 0 against 1.
    pub fn holds(name: &str, ok: bool) -> Self {
        Self::near(name, if ok { 1.0 } else { 0.0 }, 1.0, 0.0)
    }

    fn describe(&self, digits: usize) -> String {
        let obs = sig(self.observed, digits);
        let exp = sig(self.expected, digits);
        match self.relation {
            Relation::Near if self.tolerance == 0.0 && self.expected == 1.0 => String::new(),
            Relation::Near => format!("{obs} (expected {exp} ± {})", sig(self.tolerance, 2)),
            Relation::Below => format!("{obs} < {exp}"),
            Relation::Above => format!("{obs} > {exp}"),
        }
    }
}

/// Numeric table; refused or undefined entries are NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericTable {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<f64>)>,
}

impl NumericTable {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, label: impl Into<String>, values: Vec<f64>) {
        self.rows.push((label.into(), values));
    }

    pub fn get(&self, label: &str) -> Option<&[f64]> {
        self.rows.iter().find(|(l, _)| l == label).map(|(_, v)| v.as_slice())
    }

    fn text(&self, digits: usize) -> TextTable {
        let mut header = vec![""];
        header.extend(self.columns.iter().map(String::as_str));
        let mut t = TextTable::new(&self.name, &header);
        for (label, values) in &self.rows {
            let mut row = vec![label.clone()];
            row.extend(values.iter().map(|&v| if v.is_nan() { "--".into() } else { sig(v, digits) }));
            t.push(row);
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub name: String,
    pub tables: Vec<NumericTable>,
    pub checks: Vec<Check>,
}

impl ExperimentOutcome {
    fn new(name: &str) -> Self {
        Self { name: name.into(), tables: Vec::new(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Observed value of every check, by name.
    pub fn summaries(&self) -> BTreeMap<String, f64> {
        self.checks.iter().map(|c| (c.name.clone(), c.observed)).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn table(&self, name: &str) -> Option<&NumericTable> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn render(&self, digits: usize) -> String {
        let mut out = String::new();
        for t in &self.tables {
            out.push_str(&t.text(digits).render());
            out.push('\n');
        }
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            let d = c.describe(digits);
            if d.is_empty() {
                out.push_str(&format!("{mark} {}\n", c.name));
            } else {
                out.push_str(&format!("{mark} {}: {d}\n", c.name));
            }
        }
        out
    }

    pub fn to_json(&self, spec: &ExperimentSpec) -> Value {
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|t| {
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|(l, v)| json!({ "label": l, "values": v.iter().map(|x| num(*x)).collect::<Vec<_>>() }))
                    .collect();
                json!({ "name": t.name, "columns": t.columns, "rows": rows })
            })
            .collect();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name, "observed": num(c.observed), "expected": num(c.expected),
                    "tolerance": num(c.tolerance), "relation": format!("{:?}", c.relation).to_lowercase(), "pass": c.pass,
                })
            })
            .collect();
        json!({
            "experiment": self.name,
            "seed": spec.seed,
            "replicas": spec.replicas,
            "parameters": spec.parameters,
            "tables": tables,
            "checks": checks,
            "pass": self.passed(),
        })
    }
}

/// A registered experiment.
pub struct Experiment {
    pub name: &'static str,
    pub about: &'static str,
    /// Default replicas for the fast and full tiers (1 when deterministic).
    pub replicas: (u64, u64),
    /// Accepted parameters and their defaults.
    pub parameters: &'static [(&'static str, f64)],
    run: fn(&ExperimentSpec) -> Result<ExperimentOutcome>,
}

impl Experiment {
    pub fn run(&self, spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
        (self.run)(spec)
    }
}

pub static REGISTRY: &[Experiment] = &[
    Experiment {
        name: "wilks",
        about: "p-value distribution of the likelihood goodness of fit for Poisson counts",
        replicas: (10_000, 100_000),
        parameters: &[("mean", 5.0), ("group", 2.0)],
        run: wilks::run,
    },
    Experiment {
        name: "pdf-results-mc",
        about: "toy check of variance and skewness when combining two results of r = x^power",
        replicas: (100_000, 1_000_000),
        parameters: &[("power", 2.0), ("mu", 5.0), ("sigma", std::f64::consts::FRAC_1_SQRT_2)],
        run: pdf_mc::run,
    },
    Experiment {
        name: "lifetime",
        about: "two partial lifetime results combined with every likelihood model",
        replicas: (1, 1),
        parameters: &[],
        run: lifetime::run,
    },
    Experiment {
        name: "lhcb",
        about: "total of eight systematic contributions to a Dalitz-fit parameter",
        replicas: (1, 1),
        parameters: &[],
        run: lhcb::run,
    },
    Experiment {
        name: "coverage",
        about: "coverage of combined statistical and systematic intervals for a disc counter",
        replicas: (100_000, 1_000_000),
        parameters: &[],
        run: coverage::run,
    },
    Experiment {
        name: "interchange",
        about: "the same errors combined as densities and as likelihoods",
        replicas: (1, 1),
        parameters: &[],
        run: interchange::run,
    },
    Experiment {
        name: "backgrounds",
        about: "sums and averages of Poisson counts from quoted errors",
        replicas: (1, 1),
        parameters: &[],
        run: backgrounds::run,
    },
    Experiment {
        name: "product",
        about: "expected events from a cross section and branching fraction with asymmetric errors",
        replicas: (1, 1),
        parameters: &[],
        run: product::run,
    },
];

pub fn find(name: &str) -> Option<&'static Experiment> {
    REGISTRY.iter().find(|e| e.name == name)
}

/// Runs `spec` through the registry.
///
/// # Panics
/// If `spec.name` is not registered.
pub fn run(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    find(&spec.name).unwrap_or_else(|| panic!("unknown experiment {}", spec.name)).run(spec)
}

//! Experiment registry, reports and configuration.
//!
//! Each experiment reproduces one published claim at desk scale. Reports
//! are JSON documents with exact values (rationals as `"p/q"` strings);
//! a run also writes a CSV summary with timings. JSON reports contain no
//! timings, so two runs with the same configuration produce identical
//! files.

pub mod corpus;
mod registry;

pub use registry::{experiment_ids, registry, Experiment};

use crate::error::{invalid, Error, Result};
use crate::lp::{format_rational, rat, LpConfig, Rational};
use crate::packing::BnbConfig;
use crate::wl::{WlConfig, DEFAULT_MAX_TUPLES};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Exact computed or expected value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Ratio(Rational),
    Bool(bool),
}

impl Value {
    fn as_rational(&self) -> Option<Rational> {
        match self {
            Value::Int(i) => Some(rat(*i)),
            Value::Ratio(r) => Some(r.clone()),
            Value::Bool(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Ratio(r) => f.write_str(&format_rational(r)),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Int(i) => s.serialize_i64(*i),
            Value::Ratio(r) => s.serialize_str(&format_rational(r)),
            Value::Bool(b) => s.serialize_bool(*b),
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(i64::try_from(v).expect("count fits in i64"))
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Ratio(r)
    }
}

impl From<&Rational> for Value {
    fn from(r: &Rational) -> Self {
        Value::Ratio(r.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

/// Where an expected value comes from: stated in the published work,
/// derived from it by a short computation, or immediate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Published,
    Derived,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Computed {
    pub name: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub name: String,
    pub relation: Relation,
    pub value: Value,
    pub source: Source,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub experiment_id: String,
    pub claim: String,
    pub seed: u64,
    pub inputs: Vec<String>,
    pub computed: Vec<Computed>,
    pub expected: Vec<Expected>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    /// Wall-clock time; reported in the CSV summary only.
    #[serde(skip)]
    pub runtime_ms: u128,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// `name=value` pairs of the computed values, `;`-separated.
    pub fn key_values(&self) -> String {
        self.computed
            .iter()
            .map(|c| format!("{}={}", c.name, c.value))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn computed_value(&self, name: &str) -> Option<&Value> {
        self.computed
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.value)
    }
}

/// Collects inputs, computed values and expectations while an experiment
/// runs.
#[derive(Debug, Default)]
pub struct Recorder {
    inputs: Vec<String>,
    computed: Vec<Computed>,
    expected: Vec<Expected>,
}

impl Recorder {
    pub fn input(&mut self, label: impl Into<String>) {
        self.inputs.push(label.into());
    }

    pub fn record(&mut self, name: impl Into<String>, value: impl Into<Value>) {
        self.computed.push(Computed {
            name: name.into(),
            value: value.into(),
        });
    }

    /// Records `computed` and an expectation on it.
    pub fn check(
        &mut self,
        name: &str,
        computed: impl Into<Value>,
        relation: Relation,
        expected: impl Into<Value>,
        source: Source,
    ) {
        let computed = computed.into();
        let expected = expected.into();
        let holds = match relation {
            Relation::Eq => match (computed.as_rational(), expected.as_rational()) {
                (Some(a), Some(b)) => a == b,
                _ => computed == expected,
            },
            Relation::Le | Relation::Ge => match (computed.as_rational(), expected.as_rational()) {
                (Some(a), Some(b)) if relation == Relation::Le => a <= b,
                (Some(a), Some(b)) => a >= b,
                _ => false,
            },
        };
        self.record(name, computed);
        self.expected.push(Expected {
            name: name.to_string(),
            relation,
            value: expected,
            source,
            holds,
        });
    }

    pub fn check_eq(
        &mut self,
        name: &str,
        computed: impl Into<Value>,
        expected: impl Into<Value>,
        source: Source,
    ) {
        self.check(name, computed, Relation::Eq, expected, source);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub max_tuples: u128,
    pub node_budget: u64,
    pub lp_max_columns: usize,
    /// `None` runs the whole registry.
    pub experiments: Option<Vec<String>>,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            max_tuples: DEFAULT_MAX_TUPLES,
            node_budget: BnbConfig::default().node_budget,
            lp_max_columns: LpConfig::default().max_columns,
            experiments: None,
            out_dir: PathBuf::from("reports"),
            seed: 2024,
            parallel: false,
        }
    }
}

impl HarnessConfig {
    pub fn wl(&self) -> WlConfig {
        WlConfig {
            max_tuples: self.max_tuples,
        }
    }

    pub fn lp(&self) -> LpConfig {
        LpConfig {
            max_columns: self.lp_max_columns,
        }
    }

    pub fn bnb(&self) -> BnbConfig {
        BnbConfig {
            node_budget: self.node_budget,
        }
    }

    /// Reads `key = value` lines (`#` starts a comment). Keys:
    /// `max_tuples`, `node_budget`, `lp_max_columns`, `experiments`
    /// (comma-separated ids, `all`, or empty for none), `out_dir`, `seed`,
    /// `parallel`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = HarnessConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| perr("expected key = value".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let positive = |v: &str| -> Result<u128> {
                match v.parse::<u128>() {
                    Ok(n) if n > 0 => Ok(n),
                    _ => Err(perr(format!("{key} must be a positive integer"))),
                }
            };
            match key {
                "max_tuples" => cfg.max_tuples = positive(value)?,
                "node_budget" => cfg.node_budget = positive(value)? as u64,
                "lp_max_columns" => cfg.lp_max_columns = positive(value)? as usize,
                "seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| perr("seed must be an integer".into()))?
                }
                "out_dir" => cfg.out_dir = PathBuf::from(value),
                "parallel" => {
                    cfg.parallel = value
                        .parse()
                        .map_err(|_| perr("parallel must be true or false".into()))?
                }
                "experiments" => {
                    cfg.experiments = if value == "all" {
                        None
                    } else {
                        Some(
                            value
                                .split(',')
                                .map(str::trim)
                                .filter(|s| !s.is_empty())
                                .map(String::from)
                                .collect(),
                        )
                    }
                }
                other => return Err(perr(format!("unknown key {other:?}"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

/// Runs one registered experiment. Hitting a resource cap yields a report
/// marked as skipped, with whatever was computed before the cap.
pub fn run_experiment(id: &str, config: &HarnessConfig) -> Result<ExperimentReport> {
    let exp = registry()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownExperiment(id.to_string()))?;
    let start = Instant::now();
    let mut rec = Recorder::default();
    let outcome = (exp.run)(&mut rec, config);
    let skipped = match outcome {
        Ok(()) => None,
        Err(e @ (Error::ResourceLimit { .. } | Error::BudgetExhausted { .. })) => {
            Some(e.to_string())
        }
        Err(e) => return Err(e),
    };
    let passed = skipped.is_none() && rec.expected.iter().all(|e| e.holds);
    Ok(ExperimentReport {
        experiment_id: exp.id,
        claim: exp.claim,
        seed: config.seed,
        inputs: rec.inputs,
        computed: rec.computed,
        expected: rec.expected,
        passed,
        skipped,
        runtime_ms: start.elapsed().as_millis(),
    })
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub reports: Vec<ExperimentReport>,
}

impl RunSummary {
    pub fn failed(&self) -> Vec<&ExperimentReport> {
        self.reports
            .iter()
            .filter(|r| !r.passed && r.skipped.is_none())
            .collect()
    }

    pub fn skipped(&self) -> Vec<&ExperimentReport> {
        self.reports
            .iter()
            .filter(|r| r.skipped.is_some())
            .collect()
    }

    pub fn all_passed(&self) -> bool {
        self.failed().is_empty()
    }
}

/// Runs the selected experiments (all by default) and writes one JSON
/// report per experiment plus `summary.csv` into the output directory.
pub fn run_all(config: &HarnessConfig) -> Result<RunSummary> {
    let ids: Vec<String> = match &config.experiments {
        None => experiment_ids(),
        Some(sel) => {
            let known = experiment_ids();
            if let Some(bad) = sel.iter().find(|s| !known.contains(s)) {
                return Err(Error::UnknownExperiment(bad.clone()));
            }
            sel.clone()
        }
    };
    let reports: Vec<ExperimentReport> = if config.parallel {
        ids.par_iter()
            .map(|id| run_experiment(id, config))
            .collect::<Result<_>>()?
    } else {
        ids.iter()
            .map(|id| run_experiment(id, config))
            .collect::<Result<_>>()?
    };
    write_reports(&reports, &config.out_dir)?;
    Ok(RunSummary { reports })
}

/// Writes `<id>.json` for each report and a `summary.csv` with columns
/// `experiment_id, passed, runtime_ms, key_values`.
pub fn write_reports(reports: &[ExperimentReport], out_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    for r in reports {
        std::fs::write(
            out_dir.join(format!("{}.json", r.experiment_id)),
            r.to_json(),
        )?;
    }
    let mut w = csv::Writer::from_path(out_dir.join("summary.csv"))
        .map_err(|e| Error::Io(e.to_string()))?;
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["experiment_id", "passed", "runtime_ms", "key_values"])
        .map_err(csv_err)?;
    for r in reports {
        let passed = match &r.skipped {
            Some(reason) => format!("skipped: {reason}"),
            None => r.passed.to_string(),
        };
        w.write_record([
            r.experiment_id.as_str(),
            passed.as_str(),
            &r.runtime_ms.to_string(),
            &r.key_values(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(invalid(what.to_string()))
    }
}

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::instance::Instance;
use crate::error::{Error, Result};
use crate::inequalities::{TheoremId, TrialMeta, TrialReport};
use crate::norms::NormKind;
use crate::samplers::{SamplerConfig, DEFAULT_MIN_GAP, MAX_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    JsonLines,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json-lines" | "jsonl" => Ok(Self::JsonLines),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::Usage(format!("unknown format '{s}' (json-lines or csv)"))),
        }
    }
}

/// Which norms a run evaluates.
#[derive(Debug, Clone, PartialEq)]
pub enum NormSelection {
    /// Everything the statement supports.
    All,
    List(Vec<NormKind>),
}

impl NormSelection {
    /// Concrete norm list; explicit entries must be supported by the statement.
    pub fn resolve(&self, theorem: TheoremId, dim: usize) -> Result<Vec<NormKind>> {
        let supported = theorem.supported_norms(dim);
        match self {
            NormSelection::All => Ok(supported),
            NormSelection::List(list) => {
                if list.is_empty() {
                    return Err(Error::Usage("empty norm selection".into()));
                }
                for k in list {
                    if !supported.contains(k) {
                        return Err(Error::Usage(format!("{theorem} at dim {dim} does not cover norm {k}")));
                    }
                }
                Ok(list.clone())
            }
        }
    }
}

impl FromStr for NormSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(Self::All);
        }
        let list = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<NormKind>()
                    .map_err(|e| Error::Usage(format!("bad norm '{t}': {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::List(list))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub theorem: TheoremId,
    pub dim: usize,
    pub trials: u64,
    pub seed: u64,
    pub min_gap: f64,
    pub norms: NormSelection,
    pub output: PathBuf,
    pub format: ReportFormat,
    pub dump_instances: bool,
}

impl RunConfig {
    pub fn new(theorem: TheoremId, dim: usize, trials: u64, seed: u64, output: impl Into<PathBuf>) -> Self {
        Self {
            theorem,
            dim,
            trials,
            seed,
            min_gap: DEFAULT_MIN_GAP,
            norms: NormSelection::All,
            output: output.into(),
            format: ReportFormat::JsonLines,
            dump_instances: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Usage("trials must be at least 1".into()));
        }
        if !(1..=MAX_DIM).contains(&self.dim) {
            return Err(Error::Usage(format!("dim must be in [1, {MAX_DIM}], got {}", self.dim)));
        }
        if !(self.min_gap > 0.0 && self.min_gap < 1.0) {
            return Err(Error::Usage(format!("min-gap must be in (0, 1), got {}", self.min_gap)));
        }
        self.norms.resolve(self.theorem, self.dim)?;
        Ok(())
    }

    pub fn sampler(&self) -> Result<SamplerConfig> {
        SamplerConfig::new(self.seed, self.dim)?.with_min_gap(self.min_gap)
    }

    /// `<output>.instances.jsonl`.
    pub fn instances_path(&self) -> PathBuf {
        let mut s = self.output.clone().into_os_string();
        s.push(".instances.jsonl");
        PathBuf::from(s)
    }
}

#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub trial_index: u64,
    pub instance: Instance,
    pub reports: Vec<TrialReport>,
    /// Every Ky Fan norm passed while some other norm failed.
    pub anomaly: bool,
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

/// Samples and checks one trial under `norms`.
pub fn run_trial(
    theorem: TheoremId,
    sampler: &SamplerConfig,
    norms: &[NormKind],
    trial_index: u64,
) -> Result<TrialOutcome> {
    let instance = Instance::sample(theorem, sampler, &mut sampler.stream(trial_index))?;
    let bound = instance.evaluate()?;
    let meta = TrialMeta {
        theorem,
        dim: sampler.dim,
        seed: sampler.seed,
        trial_index,
    };
    let reports: Vec<TrialReport> = norms.iter().map(|k| bound.report(k, meta)).collect();
    Ok(TrialOutcome {
        trial_index,
        instance,
        anomaly: is_anomalous(&reports),
        reports,
    })
}

/// Ky Fan dominance says passing every Ky Fan norm forces every other norm to
/// pass; a violation of that points at the norm code, not the statement.
pub fn is_anomalous(reports: &[TrialReport]) -> bool {
    let mut ky_fan = reports.iter().filter(|r| r.norm.is_ky_fan()).peekable();
    if ky_fan.peek().is_none() {
        return false;
    }
    ky_fan.all(|r| r.pass) && reports.iter().any(|r| !r.norm.is_ky_fan() && !r.pass)
}

/// All trials of a run, in trial order. Trials run in parallel; each draws from
/// its own stream so the result does not depend on scheduling.
pub fn run_trials(cfg: &RunConfig) -> Result<Vec<TrialOutcome>> {
    cfg.validate()?;
    let sampler = cfg.sampler()?;
    let norms = cfg.norms.resolve(cfg.theorem, cfg.dim)?;
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg.theorem, &sampler, &norms, t))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub theorem_id: TheoremId,
    pub dim: usize,
    pub trials: u64,
    pub records: usize,
    pub passed_trials: u64,
    pub failed_trials: Vec<u64>,
    pub anomalous_trials: Vec<u64>,
    pub max_ratio: f64,
    pub report: PathBuf,
    pub instances: Option<PathBuf>,
}

impl VerifySummary {
    pub fn success(&self) -> bool {
        self.failed_trials.is_empty() && self.anomalous_trials.is_empty()
    }
}

/// Runs the trials and writes one record per (trial, norm).
pub fn verify(cfg: &RunConfig) -> Result<VerifySummary> {
    let outcomes = run_trials(cfg)?;
    let reports: Vec<&TrialReport> = outcomes.iter().flat_map(|o| o.reports.iter()).collect();
    write_to(&cfg.output, |w| write_reports(w, &reports, cfg.format))?;
    let instances = if cfg.dump_instances {
        let path = cfg.instances_path();
        write_to(&path, |w| write_instances(w, cfg.seed, &outcomes))?;
        Some(path)
    } else {
        None
    };
    Ok(VerifySummary {
        theorem_id: cfg.theorem,
        dim: cfg.dim,
        trials: cfg.trials,
        records: reports.len(),
        passed_trials: outcomes.iter().filter(|o| o.passed()).count() as u64,
        failed_trials: outcomes.iter().filter(|o| !o.passed()).map(|o| o.trial_index).collect(),
        anomalous_trials: outcomes.iter().filter(|o| o.anomaly).map(|o| o.trial_index).collect(),
        max_ratio: reports.iter().map(|r| r.ratio).fold(0.0, f64::max),
        report: cfg.output.clone(),
        instances,
    })
}

fn write_to(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    body(&mut w).and_then(|_| w.flush()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub const REPORT_COLUMNS: [&str; 11] = [
    "theorem_id",
    "dim",
    "seed",
    "trial_index",
    "norm",
    "lhs",
    "rhs",
    "ratio",
    "d_A",
    "d_B",
    "pass",
];

/// 17 significant digits; `null` for non-finite values in JSON.
fn json_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".into()
    }
}

fn csv_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

pub fn format_json_line(r: &TrialReport) -> String {
    let opt = |v: Option<f64>| v.map_or_else(|| "null".to_string(), json_float);
    let mut s = String::with_capacity(256);
    let _ = write!(
        s,
        "{{\"theorem_id\":\"{}\",\"dim\":{},\"seed\":{},\"trial_index\":{},\"norm\":\"{}\",\"lhs\":{},\"rhs\":{},\"ratio\":{},\"d_A\":{},\"d_B\":{},\"pass\":{}}}",
        r.theorem_id,
        r.dim,
        r.seed,
        r.trial_index,
        r.norm,
        json_float(r.lhs),
        json_float(r.rhs),
        json_float(r.ratio),
        opt(r.d_a),
        opt(r.d_b),
        r.pass
    );
    s
}

pub fn format_csv_line(r: &TrialReport) -> String {
    let opt = |v: Option<f64>| v.map_or_else(String::new, csv_float);
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.theorem_id,
        r.dim,
        r.seed,
        r.trial_index,
        r.norm,
        csv_float(r.lhs),
        csv_float(r.rhs),
        csv_float(r.ratio),
        opt(r.d_a),
        opt(r.d_b),
        r.pass
    )
}

pub fn write_reports(w: &mut impl Write, reports: &[&TrialReport], format: ReportFormat) -> std::io::Result<()> {
    match format {
        ReportFormat::JsonLines => {
            for r in reports {
                writeln!(w, "{}", format_json_line(r))?;
            }
        }
        ReportFormat::Csv => {
            writeln!(w, "{}", REPORT_COLUMNS.join(","))?;
            for r in reports {
                writeln!(w, "{}", format_csv_line(r))?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DumpLine<'a> {
    seed: u64,
    trial_index: u64,
    instance: &'a Instance,
}

fn write_instances(w: &mut impl Write, seed: u64, outcomes: &[TrialOutcome]) -> std::io::Result<()> {
    for o in outcomes {
        let line = DumpLine {
            seed,
            trial_index: o.trial_index,
            instance: &o.instance,
        };
        serde_json::to_writer(&mut *w, &line)?;
        writeln!(w)?;
    }
    Ok(())
}

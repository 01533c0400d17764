//! `uinorm` command-line front end.
//!
//! Exit status: 0 when every check passes, 1 when a check fails or an anomaly
//! is flagged, 2 on usage errors, 3 on I/O or numerical errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Serialize;
use uinorm::harness::{
    calculus_check, sharpness, verify, write_quarantine, NormSelection, ReportFormat, RunConfig, SharpnessConfig,
};
use uinorm::inequalities::TheoremId;
use uinorm::samplers::DEFAULT_MIN_GAP;

#[derive(Parser)]
#[command(name = "uinorm", version, about = "Randomized checks of unitarily invariant norm inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded trials of one statement and write one record per (trial, norm).
    Verify {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MIN_GAP)]
        min_gap: f64,
        /// `all`, or a comma list such as `operator,kyfan:2,schatten:1`.
        #[arg(long, default_value = "all")]
        norms: NormSelection,
        #[arg(long, default_value = "json-lines")]
        format: ReportFormat,
        #[arg(long)]
        out: PathBuf,
        /// Also write the sampled inputs to `<out>.instances.jsonl`.
        #[arg(long)]
        dump_instances: bool,
    },
    /// Hill-climb the lhs/rhs ratio of one statement.
    Sharpness {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        budget: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MIN_GAP)]
        min_gap: f64,
        /// Write the full result, including the best instance, here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where anomalous results are dumped.
        #[arg(long, default_value = ".")]
        quarantine_dir: PathBuf,
    },
    /// Compare contour-integral and spectral evaluation of random Herglotz functions.
    CalculusCheck {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Write the per-trial summary here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn print_json(value: &impl Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn write_json(path: &PathBuf, value: &impl Serialize) -> anyhow::Result<()> {
    let body = serde_json::to_string_pretty(value)?;
    std::fs::write(path, body + "\n").with_context(|| format!("writing {}", path.display()))
}

fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Verify { theorem, dim, trials, seed, min_gap, norms, format, out, dump_instances } => {
            let mut cfg = RunConfig::new(theorem, dim, trials, seed, out);
            cfg.min_gap = min_gap;
            cfg.norms = norms;
            cfg.format = format;
            cfg.dump_instances = dump_instances;
            let summary = verify(&cfg)?;
            print_json(&summary)?;
            Ok(summary.success())
        }
        Command::Sharpness { theorem, dim, budget, seed, min_gap, out, quarantine_dir } => {
            let mut cfg = SharpnessConfig::new(theorem, dim, budget, seed);
            cfg.min_gap = min_gap;
            let result = sharpness(&cfg)?;
            if let Some(path) = &out {
                write_json(path, &result)?;
            }
            if result.anomaly {
                let path = write_quarantine(&result, &quarantine_dir)?;
                eprintln!("anomaly: ratio {} written to {}", result.best_ratio, path.display());
            }
            print_json(&serde_json::json!({
                "theorem_id": result.theorem_id,
                "dim": result.dim,
                "seed": result.seed,
                "best_ratio": result.best_ratio,
                "best_norm": result.best_norm,
                "evaluations_used": result.evaluations_used,
                "restarts": result.restarts,
                "anomaly": result.anomaly,
            }))?;
            Ok(!result.anomaly)
        }
        Command::CalculusCheck { dim, trials, seed, out } => {
            let summary = calculus_check(dim, trials, seed)?;
            if let Some(path) = &out {
                write_json(path, &summary)?;
            }
            print_json(&serde_json::json!({
                "dim": summary.dim,
                "trials": summary.trials,
                "seed": summary.seed,
                "nodes": summary.nodes,
                "worst": summary.worst,
                "coarse_nodes": summary.coarse_nodes,
                "worst_coarse": summary.worst_coarse,
                "non_decreasing": summary.non_decreasing,
                "success": summary.success(),
            }))?;
            Ok(summary.success())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<uinorm::Error>() {
                Some(uinorm::Error::Usage(_)) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}

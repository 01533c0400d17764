//! Batch drivers: seeded verification runs with machine-readable reports, the
//! sharpness search, and the functional-calculus cross-check.

mod calculus;
mod instance;
mod sharpness;
mod verify;

pub use calculus::{calculus_check, calculus_discrepancy, CalculusSummary, CalculusTrial, CALCULUS_MIN_GAP, CALCULUS_TOL};
pub use instance::{shape_of, Instance, Region, Shape, XShape};
pub use sharpness::{replay, score, sharpness, write_quarantine, SharpnessConfig, SharpnessResult, MIN_BUDGET, STALL_LIMIT};
pub use verify::{
    format_csv_line, format_json_line, is_anomalous, run_trial, run_trials, verify, write_reports, NormSelection,
    ReportFormat, RunConfig, TrialOutcome, VerifySummary, REPORT_COLUMNS,
};

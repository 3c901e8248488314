//! Experiment runner: reproducible desk-scale studies over the verifiers.
//!
//! Each runner consumes a strongly typed config, produces a serializable
//! report (config echo, per-item records, fitted constants, named checks)
//! plus side artifacts (CSV tables, SVG plots), and is deterministic: the
//! same config and seed reproduce every byte of every output.  Hard checks
//! are the exact-arithmetic identities and proved-lemma bounds; empirical
//! fits are recorded but never fail a run.

pub mod appendix;
pub mod config;
pub mod dd;
pub mod svg;

mod appendix_run;
mod functheory_run;
mod lattice_run;
mod plot_run;
mod width_run;

pub use appendix_run::{run_appendix_example, AppendixPayload};
pub use functheory_run::{run_function_theory_suite, FunctionTheoryPayload};
pub use lattice_run::{run_lattice_census, LatticePayload};
pub use plot_run::{run_plot, PlotPayload};
pub use width_run::{run_width_scan, WidthPayload};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io;
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

/// One named verification outcome.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    /// Hard checks are exact identities or proved bounds; a hard failure
    /// makes the whole run fail.
    pub hard: bool,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn new(name: &str, hard: bool, passed: bool, detail: String) -> Self {
        Self { name: name.into(), hard, passed, detail }
    }
}

/// Serializable record of one experiment run.
///
/// Contains no wall-clock or host metadata: identical configs must produce
/// byte-identical reports.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport<C: Serialize, P: Serialize> {
    pub schema_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub config: C,
    pub payload: P,
    pub fitted_constants: BTreeMap<String, f64>,
    pub checks: Vec<CheckOutcome>,
}

impl<C: Serialize, P: Serialize> ExperimentReport<C, P> {
    pub fn new(config: C, payload: P) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool: "nodal-lab",
            tool_version: env!("CARGO_PKG_VERSION"),
            config,
            payload,
            fitted_constants: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn hard_failures(&self) -> usize {
        self.checks.iter().filter(|c| c.hard && !c.passed).count()
    }

    pub fn all_hard_passed(&self) -> bool {
        self.hard_failures() == 0
    }

    pub fn to_json_bytes(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("report serializes");
        bytes.push(b'\n');
        bytes
    }

    /// One line per check, for terminal consumption.
    pub fn render_check_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            let kind = if c.hard { "hard" } else { "soft" };
            out.push_str(&format!("[{status}] ({kind}) {}: {}\n", c.name, c.detail));
        }
        out
    }
}

/// A report together with its side artifacts (CSV tables, SVG files).
pub struct RunOutput<C: Serialize, P: Serialize> {
    pub report: ExperimentReport<C, P>,
    /// `(file name, content)` pairs written next to `report.json`.
    pub artifacts: Vec<(String, Vec<u8>)>,
}

impl<C: Serialize, P: Serialize> RunOutput<C, P> {
    /// Writes `report.json` and every artifact into the directory.
    pub fn write_to(&self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let report_path = dir.join("report.json");
        std::fs::write(&report_path, self.report.to_json_bytes())?;
        written.push(report_path);
        for (name, content) in &self.artifacts {
            let path = dir.join(name);
            std::fs::write(&path, content)?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Deterministic derived seed for work item `index` of a run.
pub(crate) fn task_seed(base: u64, index: u64) -> u64 {
    base.wrapping_add(index.wrapping_mul(0x9e3779b97f4a7c15))
}

/// Fixed-format float for CSV cells (shortest round-trip form).
pub(crate) fn csv_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        "nan".into()
    }
}

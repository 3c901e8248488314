//! Batch experiment interface: one subcommand per study, a JSON config with
//! flag overrides, deterministic outputs under `--out`.
//!
//! Exit code is nonzero exactly when a hard check (an exact-arithmetic
//! identity or a proved bound) fails; empirical fits are reported only.

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::path::PathBuf;
use torus_nodal::lab::config::{
    AppendixConfig, FunctionTheoryConfig, LatticeConfig, PlotConfig, WidthScanConfig,
};
use torus_nodal::lab::{
    run_appendix_example, run_function_theory_suite, run_lattice_census, run_plot,
    run_width_scan, RunOutput,
};

#[derive(Parser)]
#[command(name = "nodal-lab", version, about = "Desk-scale studies of nodal-line geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON config file; defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for report.json, CSV tables and SVG plots.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit SVG plots where the experiment supports them.
    #[arg(long, global = true)]
    svg: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice-point census: spacing bounds, determinant identities,
    /// exceptional energies.
    Lattice,
    /// Width-scaling scan over random eigenfunctions.
    Widths,
    /// Function-theory suite: log-integral gaps, doubling, subset bounds.
    Functheory,
    /// Higher-derivative curve example.
    Appendix,
    /// Render one nodal set as SVG.
    Plot,
}

fn load_config<T: DeserializeOwned + Default>(path: &Option<PathBuf>) -> Result<T> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading config {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))
        }
        None => Ok(T::default()),
    }
}

fn finish<C: Serialize, P: Serialize>(out_dir: &PathBuf, run: RunOutput<C, P>) -> Result<bool> {
    let written = run.write_to(out_dir)?;
    print!("{}", run.report.render_check_lines());
    for path in &written {
        println!("wrote {}", path.display());
    }
    Ok(run.report.all_hard_passed())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().ok();
    }
    let ok = match cli.command {
        Command::Lattice => {
            let mut cfg: LatticeConfig = load_config(&cli.config)?;
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            finish(&cli.out, run_lattice_census(&cfg))?
        }
        Command::Widths => {
            let mut cfg: WidthScanConfig = load_config(&cli.config)?;
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            cfg.svg |= cli.svg;
            finish(&cli.out, run_width_scan(&cfg))?
        }
        Command::Functheory => {
            let mut cfg: FunctionTheoryConfig = load_config(&cli.config)?;
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            finish(&cli.out, run_function_theory_suite(&cfg))?
        }
        Command::Appendix => {
            let cfg: AppendixConfig = load_config(&cli.config)?;
            finish(&cli.out, run_appendix_example(&cfg))?
        }
        Command::Plot => {
            let cfg: PlotConfig = load_config(&cli.config)?;
            finish(&cli.out, run_plot(&cfg)?)?
        }
    };
    if !ok {
        std::process::exit(1);
    }
    Ok(())
}

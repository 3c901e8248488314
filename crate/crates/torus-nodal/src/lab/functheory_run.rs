//! Function-theory suite: log-integral gaps, doubling exponents, subset
//! lower bounds for exponential sums, short-arc subset bounds.

use super::config::FunctionTheoryConfig;
use super::{csv_float, task_seed, CheckOutcome, ExperimentReport, RunOutput};
use crate::circle_lattice::{enumerate_circle, min_separation};
use crate::eigenfunction::{
    doubling_exponent, jensen_gap, short_arc_remez_check, turan_ratio, Eigenfunction,
    ExponentialSum1D, TorusConvention, WaveKind, WaveTerm,
};
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapRecord {
    pub e: u64,
    pub seed: u64,
    pub gap: f64,
    pub doubling_beta: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TuranScanEntry {
    pub terms: usize,
    pub omega_fraction: f64,
    pub sup_ratio: f64,
    pub fitted_c: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RemezEntry {
    pub e: u64,
    pub support_size: usize,
    pub support_arc_length: f64,
    pub fitted_c: f64,
    pub sup_ratio: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctionTheoryPayload {
    pub equality_gap: f64,
    pub records: Vec<GapRecord>,
    pub turan_entries: Vec<TuranScanEntry>,
    pub remez_entries: Vec<RemezEntry>,
    pub min_gap: f64,
    pub doubling_constant: f64,
}

/// Runs the scalar verifiers across the configured ensemble.
pub fn run_function_theory_suite(
    cfg: &FunctionTheoryConfig,
) -> RunOutput<FunctionTheoryConfig, FunctionTheoryPayload> {
    // equality case: a single folded cosine pair has gap zero exactly
    let first_e = cfg.energies.first().copied().unwrap_or(25);
    let xi = enumerate_circle(first_e)
        .ok()
        .and_then(|c| c.points().iter().copied().find(|p| p.a > 0 || (p.a == 0 && p.b > 0)))
        .expect("first energy has lattice points");
    let equality_phi = Eigenfunction::from_wave_terms(
        first_e,
        TorusConvention::UnitPeriod,
        &[WaveTerm { kind: WaveKind::Cos, xi: [xi.a, xi.b], amplitude: 2.0 }],
    )
    .expect("cosine pair");
    let equality_gap =
        jensen_gap(&equality_phi, cfg.equality_grid as usize).expect("nonzero").gap;

    // ensemble scan
    let tasks: Vec<(u64, u64)> = cfg
        .energies
        .iter()
        .flat_map(|&e| (0..cfg.functions_per_energy as u64).map(move |i| (e, i)))
        .collect();
    let records: Vec<GapRecord> = tasks
        .par_iter()
        .map(|&(e, idx)| {
            let seed = task_seed(cfg.seed, idx);
            let phi = Eigenfunction::random(e, seed, cfg.ensemble).expect("spectrum nonempty");
            let gap = jensen_gap(&phi, cfg.gap_grid as usize).expect("nonzero").gap;
            let lambda = phi.lambda();
            let beta = doubling_exponent(
                &phi,
                cfg.doubling_discs as usize,
                &[1.0 / lambda, 2.0 / lambda],
            )
            .beta;
            GapRecord { e, seed, gap, doubling_beta: beta }
        })
        .collect();

    // subset lower bounds for 1-D exponential sums
    let mut rng = ChaCha8Rng::seed_from_u64(task_seed(cfg.seed, 0x7a));
    let mut turan_entries = Vec::new();
    for terms in 1..=3usize {
        let freqs: Vec<f64> = (0..terms).map(|j| j as f64).collect();
        let amps: Vec<Complex64> = (0..terms)
            .map(|_| {
                let re = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
                let im = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
                Complex64::new(re, im)
            })
            .collect();
        let f = ExponentialSum1D::new(freqs, amps).expect("valid sum");
        for &fraction in &[1.0, 0.5, 0.25, 0.125] {
            let report = turan_ratio(&f, (0.0, 1.0), &[(0.0, fraction)]).expect("valid omega");
            turan_entries.push(TuranScanEntry {
                terms,
                omega_fraction: fraction,
                sup_ratio: report.sup_omega / report.sup_interval,
                fitted_c: report.fitted_c,
            });
        }
    }

    // short-arc subset bound per energy: restrict to the closest pair when
    // its spectral arc is short enough, else to a single frequency
    let mut remez_entries = Vec::new();
    for &e in &cfg.energies {
        let circle = enumerate_circle(e).expect("within budget");
        if circle.r2() == 0 {
            continue;
        }
        let phi = Eigenfunction::random(e, task_seed(cfg.seed, e), cfg.ensemble)
            .expect("spectrum nonempty");
        let lambda = circle.lambda();
        let limit = lambda.powf(0.5 - cfg.short_arc_sigma);
        let pair = min_separation(&circle).ok().map(|m| m.pair);
        let support: Vec<_> = match pair {
            Some((p, q)) if p.dist(q) <= limit => vec![p, q],
            _ => vec![circle.points()[0]],
        };
        let psi = phi.restrict_to(&support).expect("support on circle");
        let cells: Vec<(usize, usize)> = (0..10).map(|k| (k, (3 * k + 1) % 10)).collect();
        if let Ok(report) = short_arc_remez_check(&psi, cfg.short_arc_sigma, &cells, 10) {
            remez_entries.push(RemezEntry {
                e,
                support_size: support.len(),
                support_arc_length: report.support_arc_length,
                fitted_c: report.fitted_c,
                sup_ratio: report.sup_omega / report.sup_global,
            });
        }
    }

    let min_gap = records.iter().map(|r| r.gap).fold(f64::INFINITY, f64::min);
    let doubling_constant = records
        .iter()
        .map(|r| {
            let r2 = enumerate_circle(r.e).expect("within budget").r2() as f64;
            r.doubling_beta / r2
        })
        .fold(0.0f64, f64::max);

    let payload = FunctionTheoryPayload {
        equality_gap,
        records,
        turan_entries,
        remez_entries,
        min_gap,
        doubling_constant,
    };
    let mut report = ExperimentReport::new(cfg.clone(), payload);

    report.checks.push(CheckOutcome::new(
        "log-integral equality case",
        true,
        report.payload.equality_gap.abs() <= 1e-3,
        format!(
            "|gap| = {:.2e} for the folded cosine at grid {}",
            report.payload.equality_gap.abs(),
            cfg.equality_grid
        ),
    ));
    report.checks.push(CheckOutcome::new(
        "log-integral lower bound",
        true,
        report.payload.min_gap >= -cfg.gap_tolerance,
        format!(
            "min gap {:.4} over {} functions (tolerance {})",
            report.payload.min_gap,
            report.payload.records.len(),
            cfg.gap_tolerance
        ),
    ));
    let flat_ok = report
        .payload
        .turan_entries
        .iter()
        .filter(|t| t.terms == 1)
        .all(|t| (t.sup_ratio - 1.0).abs() < 1e-9);
    report.checks.push(CheckOutcome::new(
        "single-frequency sup ratio",
        true,
        flat_ok,
        "one exponential has constant modulus: sup ratio 1 on every subset".into(),
    ));
    let subset_ok = report
        .payload
        .turan_entries
        .iter()
        .all(|t| t.sup_ratio > 0.0 && t.sup_ratio <= 1.0 + 1e-12);
    report.checks.push(CheckOutcome::new(
        "subset sup positivity",
        true,
        subset_ok,
        "sup over a positive-measure subset never vanishes".into(),
    ));
    report
        .fitted_constants
        .insert("doubling_over_r2".into(), report.payload.doubling_constant);
    if let Some(c) = report
        .payload
        .remez_entries
        .iter()
        .map(|r| r.fitted_c)
        .fold(None, |m: Option<f64>, c| Some(m.map_or(c, |m| m.min(c))))
    {
        report.fitted_constants.insert("short_arc_constant_min".into(), c);
    }

    let csv = gaps_csv(&report.payload);
    RunOutput { report, artifacts: vec![("functheory.csv".into(), csv.into_bytes())] }
}

/// Column order: e, seed, jensen_gap, doubling_beta.
fn gaps_csv(payload: &FunctionTheoryPayload) -> String {
    let mut out = String::from("e,seed,jensen_gap,doubling_beta\n");
    for r in &payload.records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.e,
            r.seed,
            csv_float(r.gap),
            csv_float(r.doubling_beta)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> FunctionTheoryConfig {
        FunctionTheoryConfig {
            energies: vec![25, 65],
            functions_per_energy: 5,
            gap_grid: 512,
            equality_grid: 2048,
            doubling_discs: 8,
            ..Default::default()
        }
    }

    #[test]
    fn tiny_suite_passes_hard_checks() {
        let run = run_function_theory_suite(&tiny_config());
        assert!(run.report.all_hard_passed(), "{}", run.report.render_check_lines());
        assert_eq!(run.report.payload.records.len(), 10);
        assert!(run.report.payload.equality_gap.abs() < 1e-3);
        assert!(!run.report.payload.remez_entries.is_empty());
    }

    #[test]
    fn suite_is_reproducible() {
        let a = run_function_theory_suite(&tiny_config());
        let b = run_function_theory_suite(&tiny_config());
        assert_eq!(a.report.to_json_bytes(), b.report.to_json_bytes());
    }
}

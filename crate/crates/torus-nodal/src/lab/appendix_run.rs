//! Runner for the higher-derivative curve example: anchor checks of the
//! first and second derivative against their leading-order forms, a
//! jets-versus-oracle agreement audit, and the fourth-derivative growth
//! scan in k.

use super::appendix::{CurveDerivatives, CurveExampleField};
use super::config::AppendixConfig;
use super::{csv_float, CheckOutcome, ExperimentReport, RunOutput};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanEntry {
    pub k: u32,
    pub eps: f64,
    pub delta: f64,
    pub max_y4: f64,
    pub max_y4_over_k: f64,
    /// Worst relative deviation between jets and the dd oracle on the
    /// fourth derivative over the sampled stencil points.
    pub oracle_deviation: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AppendixPayload {
    pub anchor: Vec<CurveDerivatives>,
    pub anchor_yprime_center: f64,
    pub anchor_y2_max_rel_dev: f64,
    pub anchor_oracle_y2_dev: f64,
    pub scan: Vec<ScanEntry>,
    /// `max / min` of `max|y''''| / k` across the scan.
    pub growth_ratio_spread: Option<f64>,
}

/// Window of abscissas around `-pi/4`.
fn window(samples: u32) -> Vec<f64> {
    let n = samples.max(3);
    (0..n).map(|i| -FRAC_PI_4 - 1e-3 + 2e-3 * i as f64 / (n - 1) as f64).collect()
}

pub fn run_appendix_example(cfg: &AppendixConfig) -> RunOutput<AppendixConfig, AppendixPayload> {
    let field = CurveExampleField::new(cfg.k, cfg.eps, cfg.delta)
        .expect("anchor parameters resolvable");
    let xs = window(cfg.sample_count);
    let anchor: Vec<CurveDerivatives> = xs
        .par_iter()
        .map(|&x| field.derivatives_by_jets(x).expect("jet solve"))
        .collect();
    let center = anchor[anchor.len() / 2];
    let k = cfg.k as f64;
    // second derivative against its leading-order profile -(4 eps / k) sin 2x
    let anchor_y2_max_rel_dev = anchor
        .iter()
        .map(|d| {
            let predicted = -(4.0 * cfg.eps / k) * (2.0 * d.x).sin();
            ((d.y2 - predicted) / predicted).abs()
        })
        .fold(0.0f64, f64::max);
    // oracle agreement at the window center
    let oracle = field
        .derivatives_by_oracle(center.x, cfg.oracle_stencil)
        .expect("oracle solve");
    let anchor_oracle_y2_dev = ((center.y2 - oracle.y2) / oracle.y2).abs();

    // growth scan: delta scales like delta0 / k^2 so the delta-driven
    // fourth-derivative term grows linearly in k and dominates the shrunken
    // eps chain
    let scan: Vec<ScanEntry> = cfg
        .scan_ks
        .par_iter()
        .map(|&k| {
            let delta = cfg.scan_delta0 / (k as f64 * k as f64);
            let field = CurveExampleField::new(k, cfg.scan_eps, delta)
                .expect("scan parameters resolvable");
            let xs = window(cfg.sample_count);
            let mut max_y4 = 0.0f64;
            let mut oracle_deviation = 0.0f64;
            for (i, &x) in xs.iter().enumerate() {
                let jets = field.derivatives_by_jets(x).expect("jet solve");
                max_y4 = max_y4.max(jets.y4.abs());
                if i % 8 == 0 {
                    let oracle = field
                        .derivatives_by_oracle(x, cfg.oracle_stencil)
                        .expect("oracle solve");
                    if oracle.y4.abs() > 1e-12 {
                        oracle_deviation =
                            oracle_deviation.max(((jets.y4 - oracle.y4) / oracle.y4).abs());
                    }
                }
            }
            ScanEntry {
                k,
                eps: cfg.scan_eps,
                delta,
                max_y4,
                max_y4_over_k: max_y4 / k as f64,
                oracle_deviation,
            }
        })
        .collect();
    let growth_ratio_spread = if scan.len() >= 2 {
        let max = scan.iter().map(|s| s.max_y4_over_k).fold(0.0f64, f64::max);
        let min = scan.iter().map(|s| s.max_y4_over_k).fold(f64::INFINITY, f64::min);
        Some(max / min)
    } else {
        None
    };

    let payload = AppendixPayload {
        anchor,
        anchor_yprime_center: center.y1,
        anchor_y2_max_rel_dev,
        anchor_oracle_y2_dev,
        scan,
        growth_ratio_spread,
    };
    let mut report = ExperimentReport::new(cfg.clone(), payload);

    report.checks.push(CheckOutcome::new(
        "slope matches -1/k",
        true,
        (report.payload.anchor_yprime_center + 1.0 / k).abs() <= 1e-4,
        format!(
            "y'({:.6}) = {:.8}, leading order {:.8}",
            center.x,
            report.payload.anchor_yprime_center,
            -1.0 / k
        ),
    ));
    report.checks.push(CheckOutcome::new(
        "second derivative profile",
        true,
        report.payload.anchor_y2_max_rel_dev <= 0.2,
        format!(
            "max relative deviation from -(4 eps/k) sin 2x: {:.3}",
            report.payload.anchor_y2_max_rel_dev
        ),
    ));
    report.checks.push(CheckOutcome::new(
        "jets agree with extended-precision oracle",
        true,
        report.payload.anchor_oracle_y2_dev <= 1e-6
            && report.payload.scan.iter().all(|s| s.oracle_deviation <= 1e-3),
        format!(
            "y'' deviation {:.2e} at anchor; worst scan y'''' deviation {:.2e}",
            report.payload.anchor_oracle_y2_dev,
            report
                .payload
                .scan
                .iter()
                .map(|s| s.oracle_deviation)
                .fold(0.0f64, f64::max)
        ),
    ));
    if let Some(spread) = report.payload.growth_ratio_spread {
        report.fitted_constants.insert("y4_growth_spread".into(), spread);
        report.checks.push(CheckOutcome::new(
            "fourth derivative grows linearly in k",
            false,
            spread <= 2.0,
            format!("max|y''''| / k spread across k-scan: {spread:.3}"),
        ));
    }

    let csv = anchor_csv(&report.payload);
    RunOutput { report, artifacts: vec![("appendix.csv".into(), csv.into_bytes())] }
}

/// Column order: x, y, y1, y2, y3, y4.
fn anchor_csv(payload: &AppendixPayload) -> String {
    let mut out = String::from("x,y,y1,y2,y3,y4\n");
    for d in &payload.anchor {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_float(d.x),
            csv_float(d.y),
            csv_float(d.y1),
            csv_float(d.y2),
            csv_float(d.y3),
            csv_float(d.y4),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes_and_scan_is_linear() {
        let cfg = AppendixConfig { sample_count: 21, ..Default::default() };
        let run = run_appendix_example(&cfg);
        assert!(run.report.all_hard_passed(), "{}", run.report.render_check_lines());
        let spread = run.report.payload.growth_ratio_spread.unwrap();
        assert!(spread <= 2.0, "spread {spread}");
    }

    #[test]
    fn run_is_reproducible() {
        let cfg = AppendixConfig { sample_count: 9, scan_ks: vec![20, 40], ..Default::default() };
        let a = run_appendix_example(&cfg);
        let b = run_appendix_example(&cfg);
        assert_eq!(a.report.to_json_bytes(), b.report.to_json_bytes());
    }
}

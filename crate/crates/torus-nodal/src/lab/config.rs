//! Experiment configurations.
//!
//! Every runner takes one strongly typed config; unknown JSON keys are
//! rejected and the full config is echoed into the report, so a report
//! always pins down the run that produced it.

use super::svg::SvgOptions;
use crate::eigenfunction::EnsembleModel;
use serde::{Deserialize, Serialize};

/// Lattice census over all energies up to a bound.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LatticeConfig {
    /// Sweep `E = 1 ..= max_energy`.
    pub max_energy: u64,
    /// Exceptional-census exponent.
    pub census_epsilon: f64,
    /// Number of random tuples for the determinant-identity spot checks.
    pub identity_tuples: u32,
    /// Arc-count checks run for point counts `2 ..= arc_check_max_m`.
    pub arc_check_max_m: u32,
    /// Seed for tuple sampling.
    pub seed: u64,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        Self {
            max_energy: 1000,
            census_epsilon: 0.3,
            identity_tuples: 100,
            arc_check_max_m: 6,
            seed: 0,
        }
    }
}

/// Width-scaling scan across energies and random eigenfunctions.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WidthScanConfig {
    /// Energies with rich eigenspaces (products of primes 1 mod 4 keep
    /// r2 large at modest lambda).
    pub energies: Vec<u64>,
    pub seeds_per_energy: u32,
    pub seed: u64,
    pub ensemble: EnsembleModel,
    pub cells_per_wavelength: u32,
    /// Epsilon in the width-threshold families `lambda^(-1/2 + eps)` and
    /// `lambda^(-1 + eps)`.
    pub threshold_epsilon: f64,
    /// Energies whose circles have only well-separated points; their widths
    /// are checked against the `lambda^(-1 + eps)` regime.
    pub separated_energies: Vec<u64>,
    /// Separation exponent the separated energies must pass.
    pub separation_epsilon: f64,
    /// Emit one SVG per energy (first seed).
    pub svg: bool,
    pub svg_options: SvgOptions,
}

impl Default for WidthScanConfig {
    fn default() -> Self {
        Self {
            energies: vec![25, 325, 1105, 4225, 5525],
            seeds_per_energy: 20,
            seed: 0,
            ensemble: EnsembleModel::Gaussian,
            cells_per_wavelength: 16,
            threshold_epsilon: 0.1,
            // squares of primes 3 mod 4: four axis-symmetric points at
            // mutual distance lambda * sqrt(2), passing every separation test
            separated_energies: vec![9, 49, 121, 529, 2209],
            separation_epsilon: 0.2,
            svg: false,
            svg_options: SvgOptions::default(),
        }
    }
}

/// Scalar function-theory suite: log-integral gaps, doubling exponents,
/// subset lower bounds.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FunctionTheoryConfig {
    pub energies: Vec<u64>,
    pub functions_per_energy: u32,
    pub seed: u64,
    pub ensemble: EnsembleModel,
    /// Grid for the per-function log-integral quadrature.
    pub gap_grid: u32,
    /// Tolerance for `gap >= -tol` at `gap_grid` (calibrated by the
    /// refinement study in the tests).
    pub gap_tolerance: f64,
    /// Fine grid for the single equality-case check.
    pub equality_grid: u32,
    pub doubling_discs: u32,
    /// Spectrum-arc exponent for the short-arc subset check.
    pub short_arc_sigma: f64,
}

impl Default for FunctionTheoryConfig {
    fn default() -> Self {
        Self {
            energies: vec![25, 65, 325],
            functions_per_energy: 100,
            seed: 0,
            ensemble: EnsembleModel::Gaussian,
            gap_grid: 1024,
            gap_tolerance: 0.05,
            equality_grid: 4096,
            doubling_discs: 32,
            short_arc_sigma: 0.25,
        }
    }
}

/// Higher-derivative curve example.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AppendixConfig {
    /// Anchor run checked against the leading-order derivative formulas.
    pub k: u32,
    pub eps: f64,
    pub delta: f64,
    /// Sample abscissas across the window `-pi/4 + [-1e-3, 1e-3]`.
    pub sample_count: u32,
    /// k values for the fourth-derivative growth scan.
    pub scan_ks: Vec<u32>,
    /// The scan shrinks eps and scales delta like `delta0 / k^2`, which is
    /// the regime where the fourth derivative grows linearly in k.
    pub scan_eps: f64,
    pub scan_delta0: f64,
    /// Oracle stencil width.
    pub oracle_stencil: f64,
}

impl Default for AppendixConfig {
    fn default() -> Self {
        Self {
            k: 40,
            eps: 1e-3,
            delta: 1e-9,
            sample_count: 41,
            scan_ks: vec![20, 40, 80],
            scan_eps: 1e-8,
            scan_delta0: 1e-5,
            oracle_stencil: 1e-4,
        }
    }
}

/// Which eigenfunction a plot should draw.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlotSource {
    /// A random eigenfunction of the given energy.
    Random { e: u64, seed: u64, ensemble: EnsembleModel },
    /// An eigenfunction document (either schema) from a file.
    File { path: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PlotConfig {
    pub source: PlotSource,
    pub cells_per_wavelength: u32,
    pub svg_options: SvgOptions,
}

impl Default for PlotConfig {
    fn default() -> Self {
        Self {
            source: PlotSource::Random { e: 65, seed: 0, ensemble: EnsembleModel::Gaussian },
            cells_per_wavelength: 12,
            svg_options: SvgOptions::default(),
        }
    }
}

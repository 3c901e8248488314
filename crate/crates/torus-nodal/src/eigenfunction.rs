//! Torus eigenfunctions and their function-theoretic verifiers.
//!
//! An eigenfunction with eigenvalue parameter `E` is a trigonometric
//! polynomial whose frequencies are exactly the lattice points on the circle
//! of radius `sqrt(E)`; reality forces the coefficient at `-xi` to be the
//! conjugate of the one at `xi`.  Evaluation folds conjugate pairs into
//! cosines and sines, so results are real by construction.
//!
//! Alongside construction and evaluation, this module carries the scalar
//! verifiers that only need function values: the Jensen-type lower bound for
//! the log integral, doubling-exponent estimates on discs, the Turan-type
//! lower bound for exponential sums on subsets, and the short-arc Remez-type
//! bound for polynomials whose spectrum sits in a short arc.

use crate::circle_lattice::{enumerate_circle, LatticePoint};
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EigenError {
    #[error("no lattice points on the circle of energy {e}: empty eigenspace")]
    EmptyEigenspace { e: u64 },
    #[error("frequency ({a}, {b}) is not on the circle of energy {e}")]
    OffCircleFrequency { a: i64, b: i64, e: u64 },
    #[error("coefficients at xi and -xi are not conjugate (worst deviation {deviation:.3e})")]
    ConjugateSymmetryViolation { deviation: f64 },
    #[error("all coefficients vanish")]
    ZeroFunction,
    #[error("frequencies must be strictly increasing")]
    NonIncreasingFrequencies,
    #[error("Omega is empty or has zero measure")]
    EmptyOmega,
    #[error("Omega must be contained in the base interval")]
    OmegaOutsideInterval,
    #[error(
        "spectrum spans an arc of length {got:.3} exceeding lambda^(1/2 - sigma) = {limit:.3}"
    )]
    SupportArcTooLong { got: f64, limit: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Coordinate convention for the fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TorusConvention {
    /// Period 1 in each coordinate; a frequency `xi` contributes
    /// `exp(2 pi i x . xi)`.
    UnitPeriod,
    /// Period 2 pi; a frequency contributes `exp(i x . xi)`.
    TwoPiPeriod,
}

impl TorusConvention {
    pub fn period(self) -> f64 {
        match self {
            TorusConvention::UnitPeriod => 1.0,
            TorusConvention::TwoPiPeriod => TAU,
        }
    }

    /// Factor turning `x . xi` into a phase in radians.
    pub fn angular_factor(self) -> f64 {
        match self {
            TorusConvention::UnitPeriod => TAU,
            TorusConvention::TwoPiPeriod => 1.0,
        }
    }
}

/// Coefficient model for random eigenfunctions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleModel {
    /// Independent standard complex Gaussians on a half-set of frequencies.
    Gaussian,
    /// Unit-modulus coefficients with independent uniform phases.
    Unimodular,
}

/// A complex trigonometric polynomial with frequencies on one circle.
///
/// No reality constraint; this is the natural home for one-sided cluster
/// restrictions, which are genuinely complex-valued.
#[derive(Clone, Debug)]
pub struct TrigPolynomial {
    e: u64,
    convention: TorusConvention,
    terms: BTreeMap<LatticePoint, Complex64>,
}

impl TrigPolynomial {
    pub fn new(
        e: u64,
        convention: TorusConvention,
        terms: impl IntoIterator<Item = (LatticePoint, Complex64)>,
    ) -> Result<Self, EigenError> {
        let mut map = BTreeMap::new();
        for (xi, a) in terms {
            if xi.norm_sq() != e {
                return Err(EigenError::OffCircleFrequency { a: xi.a, b: xi.b, e });
            }
            *map.entry(xi).or_insert(Complex64::new(0.0, 0.0)) += a;
        }
        if map.values().all(|a| a.norm() == 0.0) {
            return Err(EigenError::ZeroFunction);
        }
        Ok(Self { e, convention, terms: map })
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn lambda(&self) -> f64 {
        (self.e as f64).sqrt()
    }

    pub fn convention(&self) -> TorusConvention {
        self.convention
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, Complex64> {
        &self.terms
    }

    pub fn evaluate_complex(&self, x: [f64; 2]) -> Complex64 {
        let af = self.convention.angular_factor();
        let mut acc = Complex64::new(0.0, 0.0);
        for (xi, a) in &self.terms {
            let theta = af * (xi.a as f64 * x[0] + xi.b as f64 * x[1]);
            acc += a * Complex64::new(theta.cos(), theta.sin());
        }
        acc
    }

    /// Length (radius times angle) of the shortest circle arc containing the
    /// spectrum.
    pub fn support_arc_length(&self) -> f64 {
        let mut angles: Vec<f64> = self.terms.keys().map(|p| p.angle()).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if angles.len() <= 1 {
            return 0.0;
        }
        let mut max_gap: f64 = angles[0] + TAU - angles[angles.len() - 1];
        for w in angles.windows(2) {
            max_gap = max_gap.max(w[1] - w[0]);
        }
        (TAU - max_gap) * self.lambda()
    }
}

/// A real eigenfunction of the torus Laplacian: frequency-to-coefficient
/// map on one circle with conjugate symmetry.
#[derive(Clone, Debug)]
pub struct Eigenfunction {
    e: u64,
    convention: TorusConvention,
    coeffs: BTreeMap<LatticePoint, Complex64>,
    /// One representative of each conjugate pair.
    half: Vec<(LatticePoint, Complex64)>,
}

fn in_half_set(p: LatticePoint) -> bool {
    p.a > 0 || (p.a == 0 && p.b > 0)
}

impl Eigenfunction {
    /// Builds an eigenfunction from a full coefficient map, checking that
    /// every frequency lies on the circle and that the map is conjugate
    /// symmetric to within `1e-12` of the largest coefficient; the map is
    /// then symmetrized exactly.
    pub fn new(
        e: u64,
        convention: TorusConvention,
        coeffs: impl IntoIterator<Item = (LatticePoint, Complex64)>,
    ) -> Result<Self, EigenError> {
        let mut map: BTreeMap<LatticePoint, Complex64> = BTreeMap::new();
        for (xi, a) in coeffs {
            if xi.norm_sq() != e {
                return Err(EigenError::OffCircleFrequency { a: xi.a, b: xi.b, e });
            }
            *map.entry(xi).or_insert(Complex64::new(0.0, 0.0)) += a;
        }
        let max_abs = map.values().map(|a| a.norm()).fold(0.0f64, f64::max);
        if max_abs == 0.0 {
            return Err(EigenError::ZeroFunction);
        }
        let mut deviation = 0.0f64;
        let keys: Vec<LatticePoint> = map.keys().copied().collect();
        for xi in &keys {
            let minus = LatticePoint::new(-xi.a, -xi.b);
            let a = *map.get(xi).unwrap();
            let b = map.get(&minus).copied().unwrap_or(Complex64::new(0.0, 0.0));
            deviation = deviation.max((a - b.conj()).norm());
        }
        if deviation > 1e-12 * max_abs {
            return Err(EigenError::ConjugateSymmetryViolation { deviation });
        }
        // symmetrize exactly
        let mut sym = BTreeMap::new();
        for xi in &keys {
            if !in_half_set(*xi) {
                continue;
            }
            let minus = LatticePoint::new(-xi.a, -xi.b);
            let a = *map.get(xi).unwrap();
            let b = map.get(&minus).copied().unwrap_or(Complex64::new(0.0, 0.0));
            let avg = (a + b.conj()) / 2.0;
            sym.insert(*xi, avg);
            sym.insert(minus, avg.conj());
        }
        let half: Vec<(LatticePoint, Complex64)> =
            sym.iter().filter(|(p, _)| in_half_set(**p)).map(|(p, a)| (*p, *a)).collect();
        Ok(Self { e, convention, coeffs: sym, half })
    }

    /// Accepts sine/cosine wave terms (the plotting-style schema) and
    /// converts them to the coefficient map.
    pub fn from_wave_terms(
        e: u64,
        convention: TorusConvention,
        waves: &[WaveTerm],
    ) -> Result<Self, EigenError> {
        let mut coeffs: Vec<(LatticePoint, Complex64)> = Vec::new();
        for w in waves {
            let xi = LatticePoint::new(w.xi[0], w.xi[1]);
            let minus = LatticePoint::new(-xi.a, -xi.b);
            let half = w.amplitude / 2.0;
            match w.kind {
                WaveKind::Cos => {
                    coeffs.push((xi, Complex64::new(half, 0.0)));
                    coeffs.push((minus, Complex64::new(half, 0.0)));
                }
                WaveKind::Sin => {
                    coeffs.push((xi, Complex64::new(0.0, -half)));
                    coeffs.push((minus, Complex64::new(0.0, half)));
                }
            }
        }
        Self::new(e, convention, coeffs)
    }

    /// Deterministic random eigenfunction: coefficients drawn per model on a
    /// half-set of the circle, mirrored by conjugation, then normalized to
    /// unit Parseval norm.
    pub fn random(e: u64, seed: u64, model: EnsembleModel) -> Result<Self, EigenError> {
        let circle = enumerate_circle(e).map_err(|_| EigenError::EmptyEigenspace { e })?;
        if circle.r2() == 0 {
            return Err(EigenError::EmptyEigenspace { e });
        }
        let tag = match model {
            EnsembleModel::Gaussian => 0x67617573,
            EnsembleModel::Unimodular => 0x756e696d,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, e, tag));
        let mut coeffs = Vec::new();
        for &xi in circle.points().iter().filter(|p| in_half_set(**p)) {
            let a = match model {
                EnsembleModel::Gaussian => {
                    let (g1, g2) = gaussian_pair(&mut rng);
                    Complex64::new(g1, g2)
                }
                EnsembleModel::Unimodular => {
                    let phase = TAU * uniform_unit(&mut rng);
                    Complex64::new(phase.cos(), phase.sin())
                }
            };
            coeffs.push((xi, a));
            coeffs.push((LatticePoint::new(-xi.a, -xi.b), a.conj()));
        }
        let mut phi = Self::new(e, TorusConvention::UnitPeriod, coeffs)?;
        let norm = phi.l2_norm();
        phi = phi.scaled(1.0 / norm);
        Ok(phi)
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn lambda(&self) -> f64 {
        (self.e as f64).sqrt()
    }

    pub fn convention(&self) -> TorusConvention {
        self.convention
    }

    pub fn coefficients(&self) -> &BTreeMap<LatticePoint, Complex64> {
        &self.coeffs
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.values().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Multiplies every coefficient by a real constant.
    pub fn scaled(&self, c: f64) -> Self {
        let coeffs: BTreeMap<LatticePoint, Complex64> =
            self.coeffs.iter().map(|(p, a)| (*p, a * c)).collect();
        let half = coeffs
            .iter()
            .filter(|(p, _)| in_half_set(**p))
            .map(|(p, a)| (*p, *a))
            .collect();
        Self { e: self.e, convention: self.convention, coeffs, half }
    }

    /// The complex polynomial with the same terms.
    pub fn as_trig_polynomial(&self) -> TrigPolynomial {
        TrigPolynomial { e: self.e, convention: self.convention, terms: self.coeffs.clone() }
    }

    /// Restriction to a subset of frequencies (no reality constraint).
    pub fn restrict_to(&self, support: &[LatticePoint]) -> Result<TrigPolynomial, EigenError> {
        TrigPolynomial::new(
            self.e,
            self.convention,
            support.iter().filter_map(|p| self.coeffs.get(p).map(|a| (*p, *a))),
        )
    }

    /// Point evaluation; real by conjugate-pair folding.
    pub fn evaluate(&self, x: [f64; 2]) -> f64 {
        let af = self.convention.angular_factor();
        let mut acc = 0.0;
        for &(xi, a) in &self.half {
            let theta = af * (xi.a as f64 * x[0] + xi.b as f64 * x[1]);
            acc += 2.0 * (a.re * theta.cos() - a.im * theta.sin());
        }
        acc
    }

    pub fn gradient(&self, x: [f64; 2]) -> [f64; 2] {
        let af = self.convention.angular_factor();
        let mut g = [0.0f64; 2];
        for &(xi, a) in &self.half {
            let theta = af * (xi.a as f64 * x[0] + xi.b as f64 * x[1]);
            let d = 2.0 * (-a.re * theta.sin() - a.im * theta.cos()) * af;
            g[0] += d * xi.a as f64;
            g[1] += d * xi.b as f64;
        }
        g
    }

    pub fn hessian(&self, x: [f64; 2]) -> [[f64; 2]; 2] {
        let af = self.convention.angular_factor();
        let mut h = [[0.0f64; 2]; 2];
        for &(xi, a) in &self.half {
            let theta = af * (xi.a as f64 * x[0] + xi.b as f64 * x[1]);
            let d = 2.0 * (-a.re * theta.cos() + a.im * theta.sin()) * af * af;
            let (fa, fb) = (xi.a as f64, xi.b as f64);
            h[0][0] += d * fa * fa;
            h[0][1] += d * fa * fb;
            h[1][1] += d * fb * fb;
        }
        h[1][0] = h[0][1];
        h
    }

    /// Samples on an `n x n` grid over the fundamental domain, row-major
    /// with `x = (i + offset) * period / n`, `y = (j + offset) * period / n`.
    ///
    /// Each row advances every term by a fixed unit-modulus rotation, so the
    /// cost is one complex multiply per term per point.
    pub fn evaluate_grid(&self, n: usize, offset: f64) -> Vec<f64> {
        assert!(n > 0);
        let af = self.convention.angular_factor();
        let h = self.convention.period() / n as f64;
        let mut out = vec![0.0f64; n * n];
        out.par_chunks_mut(n).enumerate().for_each(|(j, row)| {
            let y = (j as f64 + offset) * h;
            for &(xi, a) in &self.half {
                let theta0 = af * (xi.a as f64 * offset * h + xi.b as f64 * y);
                let step_angle = af * xi.a as f64 * h;
                let step = Complex64::new(step_angle.cos(), step_angle.sin());
                let mut z = a * Complex64::new(theta0.cos(), theta0.sin());
                for slot in row.iter_mut() {
                    *slot += 2.0 * z.re;
                    z *= step;
                }
            }
        });
        out
    }

    /// Parseval norm `sqrt(sum |a_xi|^2)`.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Independent route: root mean square of grid samples.  Exact (up to
    /// roundoff) once the grid beats the Nyquist rate of `|phi|^2`.
    pub fn l2_norm_quadrature(&self, n: usize) -> f64 {
        let values = self.evaluate_grid(n, 0.5);
        (values.iter().map(|v| v * v).sum::<f64>() / (n * n) as f64).sqrt()
    }
}

/// Sine/cosine wave term, the alternative input schema.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct WaveTerm {
    pub kind: WaveKind,
    pub xi: [i64; 2],
    pub amplitude: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveKind {
    Cos,
    Sin,
}

// --- serialization schema ----------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermSchema {
    xi: [i64; 2],
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EigenfunctionSchema {
    e: u64,
    convention: TorusConvention,
    terms: Vec<TermSchema>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WaveSchema {
    e: u64,
    convention: TorusConvention,
    waves: Vec<WaveTerm>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnySchema {
    Terms(EigenfunctionSchema),
    Waves(WaveSchema),
}

impl Eigenfunction {
    pub fn to_json(&self) -> String {
        let schema = EigenfunctionSchema {
            e: self.e,
            convention: self.convention,
            terms: self
                .coeffs
                .iter()
                .map(|(p, a)| TermSchema { xi: [p.a, p.b], re: a.re, im: a.im })
                .collect(),
        };
        serde_json::to_string_pretty(&schema).expect("schema serializes")
    }

    /// Parses either the coefficient-term schema or the wave-term schema.
    pub fn from_json(text: &str) -> Result<Self, EigenError> {
        let any: AnySchema = serde_json::from_str(text)
            .map_err(|err| EigenError::InvalidParameter(err.to_string()))?;
        match any {
            AnySchema::Terms(s) => Self::new(
                s.e,
                s.convention,
                s.terms
                    .into_iter()
                    .map(|t| (LatticePoint::new(t.xi[0], t.xi[1]), Complex64::new(t.re, t.im))),
            ),
            AnySchema::Waves(s) => Self::from_wave_terms(s.e, s.convention, &s.waves),
        }
    }
}

// --- deterministic randomness --------------------------------------------------

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn mix_seed(seed: u64, e: u64, tag: u64) -> u64 {
    splitmix(splitmix(splitmix(seed) ^ e) ^ tag)
}

/// Uniform in `[0, 1)` from the top 53 bits of the stream.
pub(crate) fn uniform_unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal pair by Box-Muller; the first uniform is shifted into
/// `(0, 1]` so the logarithm is finite.
fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
    let u2 = uniform_unit(rng);
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (TAU * u2).sin_cos();
    (r * c, r * s)
}

// --- Jensen-type lower bound ----------------------------------------------------

/// Quadrature report for `integral of log|phi|` against `max log|coeff|`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct JensenReport {
    /// `mean log|phi| - max_xi log|coeff(xi)|`; nonnegative in exact
    /// arithmetic, so `gap >= -tol(grid)` is the checkable contract.
    pub gap: f64,
    pub log_integral: f64,
    pub max_log_coeff: f64,
    /// `-log r2(E) - 1`, the coarse floor relevant for normalized functions.
    pub entropy_floor: f64,
    pub grid_n: usize,
}

/// Midpoint-rule estimate of the mean of `log|phi|`, with values below
/// `1e-14 * max|coeff|` clipped there (the log singularity on the nodal set
/// is integrable; clipping bounds the bias and keeps the report exactly
/// scale-invariant).
pub fn jensen_gap(phi: &Eigenfunction, grid_n: usize) -> Result<JensenReport, EigenError> {
    let scale = phi.max_coeff_abs();
    if scale == 0.0 {
        return Err(EigenError::ZeroFunction);
    }
    let clip = 1e-14 * scale;
    let values = phi.evaluate_grid(grid_n, 0.5);
    // fixed-chunk parallel sum: the reduction order (and hence the rounding)
    // does not depend on the thread schedule
    let partial: Vec<f64> = values
        .par_chunks(grid_n.max(1))
        .map(|chunk| chunk.iter().map(|v| v.abs().max(clip).ln()).sum::<f64>())
        .collect();
    let log_integral = partial.iter().sum::<f64>() / (grid_n * grid_n) as f64;
    let max_log_coeff = scale.ln();
    Ok(JensenReport {
        gap: log_integral - max_log_coeff,
        log_integral,
        max_log_coeff,
        entropy_floor: -((phi.term_count() as f64).ln()) - 1.0,
        grid_n,
    })
}

// --- doubling exponent -----------------------------------------------------------

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DoublingReport {
    /// Max over sampled discs of `log(sup_B |phi| / sup_{B/2} |phi|)`.
    pub beta: f64,
    pub witness_center: [f64; 2],
    pub witness_radius: f64,
    pub discs: usize,
}

/// Lower estimate of the doubling exponent over `disc_samples`
/// quasi-uniformly placed discs of each listed radius.  Suprema are taken by
/// dense sampling at twenty points per wavelength (a band-limited function
/// cannot oscillate between samples at that density), so the estimate only
/// grows as more discs are sampled.
pub fn doubling_exponent(
    phi: &Eigenfunction,
    disc_samples: usize,
    radii: &[f64],
) -> DoublingReport {
    assert!(disc_samples >= 1, "need at least one disc");
    let period = phi.convention.period();
    let wavelength = period / phi.lambda().max(1.0);
    // quasi-random centers: the R2 low-discrepancy sequence
    const A1: f64 = 0.754_877_666_246_692_7;
    const A2: f64 = 0.569_840_290_998_053_2;
    let mut best = DoublingReport {
        beta: 0.0,
        witness_center: [0.0, 0.0],
        witness_radius: radii.first().copied().unwrap_or(wavelength),
        discs: disc_samples,
    };
    let reports: Vec<(f64, [f64; 2], f64)> = (0..disc_samples)
        .into_par_iter()
        .map(|k| {
            let center = [
                ((k as f64 + 0.5) * A1).fract() * period,
                ((k as f64 + 0.5) * A2).fract() * period,
            ];
            let mut local: (f64, [f64; 2], f64) = (0.0, center, 0.0);
            for &r in radii {
                let step = (wavelength / 20.0).min(r / 8.0);
                let m = (r / step).ceil() as i64;
                let mut sup_full = 0.0f64;
                let mut sup_half = 0.0f64;
                for dj in -m..=m {
                    for di in -m..=m {
                        let (dx, dy) = (di as f64 * step, dj as f64 * step);
                        let d2 = dx * dx + dy * dy;
                        if d2 > r * r {
                            continue;
                        }
                        let v = phi.evaluate([center[0] + dx, center[1] + dy]).abs();
                        sup_full = sup_full.max(v);
                        if d2 <= r * r / 4.0 {
                            sup_half = sup_half.max(v);
                        }
                    }
                }
                if sup_half > 0.0 {
                    let beta = (sup_full / sup_half).ln();
                    if beta > local.0 {
                        local = (beta, center, r);
                    }
                }
            }
            local
        })
        .collect();
    for (beta, center, r) in reports {
        if beta > best.beta {
            best =
                DoublingReport { beta, witness_center: center, witness_radius: r, discs: disc_samples };
        }
    }
    best
}

// --- Turan-type bound for one-dimensional exponential sums -----------------------

/// `f(t) = sum a_j exp(2 pi i xi_j t)` with strictly increasing real
/// frequencies.
#[derive(Clone, Debug)]
pub struct ExponentialSum1D {
    freqs: Vec<f64>,
    amps: Vec<Complex64>,
}

impl ExponentialSum1D {
    pub fn new(freqs: Vec<f64>, amps: Vec<Complex64>) -> Result<Self, EigenError> {
        if freqs.is_empty() || freqs.len() != amps.len() {
            return Err(EigenError::InvalidParameter(
                "need equally many frequencies and amplitudes, at least one".into(),
            ));
        }
        if freqs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(EigenError::NonIncreasingFrequencies);
        }
        Ok(Self { freqs, amps })
    }

    pub fn term_count(&self) -> usize {
        self.freqs.len()
    }

    pub fn evaluate(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (xi, a) in self.freqs.iter().zip(&self.amps) {
            let theta = TAU * xi * t;
            acc += a * Complex64::new(theta.cos(), theta.sin());
        }
        acc
    }

    fn bandwidth(&self) -> f64 {
        self.freqs.last().unwrap() - self.freqs.first().unwrap()
    }

    /// Supremum of `|f|` on an interval by dense sampling plus a parabolic
    /// refinement of `|f|^2` around the best sample.
    pub fn sup_on(&self, interval: (f64, f64)) -> f64 {
        let (a, b) = interval;
        assert!(b >= a);
        let n = ((20.0 * self.bandwidth() * (b - a)).ceil() as usize).max(64);
        let h = (b - a) / n as f64;
        let mut best_v = 0.0f64;
        let mut best_t = a;
        for i in 0..=n {
            let t = a + i as f64 * h;
            let v = self.evaluate(t).norm_sqr();
            if v > best_v {
                best_v = v;
                best_t = t;
            }
        }
        // one parabolic step on |f|^2
        let (tm, tp) = ((best_t - h).max(a), (best_t + h).min(b));
        let (vm, v0, vp) =
            (self.evaluate(tm).norm_sqr(), best_v, self.evaluate(tp).norm_sqr());
        let denom = vm - 2.0 * v0 + vp;
        if denom < 0.0 {
            let dt = 0.5 * (vm - vp) / denom * h;
            if dt.abs() <= h {
                let t = (best_t + dt).clamp(a, b);
                best_v = best_v.max(self.evaluate(t).norm_sqr());
            }
        }
        best_v.sqrt()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TuranReport {
    pub sup_omega: f64,
    pub sup_interval: f64,
    /// `|Omega| / |I|`.
    pub density: f64,
    /// Number of exponential terms J; the bound has exponent J - 1.
    pub terms: usize,
    /// Constant c with `sup_Omega = (c |Omega|/|I|)^(J-1) sup_I`; `None`
    /// when J = 1 (the ratio is identically 1).
    pub fitted_c: Option<f64>,
}

/// Turan-type lower bound: the sup of an exponential sum over a subset of an
/// interval controls the sup over the whole interval, with exponent one less
/// than the number of terms.  The fitted constant is reported, never
/// asserted against any canonical value.
pub fn turan_ratio(
    f: &ExponentialSum1D,
    interval: (f64, f64),
    omega: &[(f64, f64)],
) -> Result<TuranReport, EigenError> {
    let (ia, ib) = interval;
    if omega.is_empty() {
        return Err(EigenError::EmptyOmega);
    }
    let mut measure = 0.0;
    for &(a, b) in omega {
        if b <= a {
            return Err(EigenError::EmptyOmega);
        }
        if a < ia - 1e-12 || b > ib + 1e-12 {
            return Err(EigenError::OmegaOutsideInterval);
        }
        measure += b - a;
    }
    if measure <= 0.0 {
        return Err(EigenError::EmptyOmega);
    }
    let sup_interval = f.sup_on(interval);
    let sup_omega = omega.iter().map(|&seg| f.sup_on(seg)).fold(0.0f64, f64::max);
    let density = measure / (ib - ia);
    let terms = f.term_count();
    let fitted_c = if terms >= 2 {
        Some((sup_omega / sup_interval).powf(1.0 / (terms as f64 - 1.0)) / density)
    } else {
        None
    };
    Ok(TuranReport { sup_omega, sup_interval, density, terms, fitted_c })
}

// --- short-arc Remez-type bound ----------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RemezReport {
    pub sup_omega: f64,
    pub sup_global: f64,
    pub omega_measure: f64,
    pub sigma: f64,
    pub support_arc_length: f64,
    /// Constant c with `sup_Omega = (c |Omega|)^(1/sigma) * sup_global`.
    pub fitted_c: f64,
}

/// Remez-type bound for a polynomial whose spectrum lies in a short arc:
/// on a union of grid cells `Omega`, `sup_Omega |psi|` cannot be small
/// compared to `(c |Omega|)^(1/sigma) ||psi||_inf`.  The spectrum must fit
/// in an arc of length at most `lambda^(1/2 - sigma)`.
///
/// `omega_cells` selects cells of the `cell_grid x cell_grid` partition of
/// the fundamental domain; suprema are sampled at twenty points per
/// wavelength or finer.
pub fn short_arc_remez_check(
    psi: &TrigPolynomial,
    sigma: f64,
    omega_cells: &[(usize, usize)],
    cell_grid: usize,
) -> Result<RemezReport, EigenError> {
    if sigma <= 0.0 {
        return Err(EigenError::InvalidParameter("sigma must be positive".into()));
    }
    if omega_cells.is_empty() || cell_grid == 0 {
        return Err(EigenError::EmptyOmega);
    }
    let lambda = psi.lambda();
    let limit = lambda.powf(0.5 - sigma);
    let support_arc_length = psi.support_arc_length();
    if support_arc_length > limit {
        return Err(EigenError::SupportArcTooLong { got: support_arc_length, limit });
    }
    if omega_cells.iter().any(|&(i, j)| i >= cell_grid || j >= cell_grid) {
        return Err(EigenError::OmegaOutsideInterval);
    }
    let period = psi.convention.period();
    // sampling grid: a multiple of the cell grid, at >= 20 points per wavelength
    let per_cell = ((20.0 * lambda / cell_grid as f64).ceil() as usize).max(4);
    let n = cell_grid * per_cell;
    let h = period / n as f64;
    let selected: std::collections::HashSet<(usize, usize)> =
        omega_cells.iter().copied().collect();
    let rows: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|j| {
            let y = (j as f64 + 0.5) * h;
            let cell_j = j / per_cell;
            let mut row_global = 0.0f64;
            let mut row_omega = 0.0f64;
            for i in 0..n {
                let x = (i as f64 + 0.5) * h;
                let v = psi.evaluate_complex([x, y]).norm();
                row_global = row_global.max(v);
                if selected.contains(&(i / per_cell, cell_j)) {
                    row_omega = row_omega.max(v);
                }
            }
            (row_global, row_omega)
        })
        .collect();
    let mut sup_global = 0.0f64;
    let mut sup_omega = 0.0f64;
    for (g, o) in rows {
        sup_global = sup_global.max(g);
        sup_omega = sup_omega.max(o);
    }
    let omega_measure = omega_cells.len() as f64 / (cell_grid * cell_grid) as f64;
    let fitted_c = (sup_omega / sup_global).powf(sigma) / omega_measure;
    Ok(RemezReport { sup_omega, sup_global, omega_measure, sigma, support_arc_length, fitted_c })
}

//! Exact enumeration and spacing analysis of lattice points on circles.
//!
//! A circle of radius `sqrt(E)` carries the frequency set of every torus
//! eigenfunction with eigenvalue `E`; everything downstream (eigenspace
//! dimension, arc counts, distance products, frequency clusters) is a
//! statement about this finite set of integer points.  All decision
//! procedures here compare exact integers; floats appear only for angles
//! and reported ratios.

mod gaussian;

pub use gaussian::{determinant, GaussianInt};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use thiserror::Error;

/// Largest energy enumerated by the direct square-root loop.
pub const BRUTE_FORCE_LIMIT: u64 = 100_000_000;
/// Largest energy accepted at all; beyond this, factorization by trial
/// division is no longer guaranteed to complete.
pub const ENERGY_BUDGET: u64 = 1_000_000_000_000;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("E must be a positive integer")]
    ZeroEnergy,
    #[error("E = {e} exceeds the exact-arithmetic budget {budget}")]
    EnergyBudget { e: u64, budget: u64 },
    #[error("operation needs at least {need} lattice points, circle has {have}")]
    TooFewPoints { need: usize, have: usize },
    #[error("points must be pairwise distinct")]
    DuplicatePoints,
    #[error("point ({a}, {b}) does not lie on the circle of energy {e}")]
    MixedNorms { a: i64, b: i64, e: u64 },
    #[error("k = {k} out of range for m = {m} points (need 0 <= k <= m-1)")]
    InvalidK { k: u32, m: usize },
    #[error("m = {m} out of range (need m >= 2)")]
    InvalidM { m: u32 },
}

/// An integer point on the circle `a^2 + b^2 = E`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct LatticePoint {
    pub a: i64,
    pub b: i64,
}

impl LatticePoint {
    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn norm_sq(self) -> u64 {
        (self.a * self.a + self.b * self.b) as u64
    }

    pub fn dist_sq(self, other: Self) -> u64 {
        let dx = self.a - other.a;
        let dy = self.b - other.b;
        (dx * dx + dy * dy) as u64
    }

    pub fn dist(self, other: Self) -> f64 {
        (self.dist_sq(other) as f64).sqrt()
    }

    /// Angle in `[0, 2*pi)`.
    pub fn angle(self) -> f64 {
        let t = (self.b as f64).atan2(self.a as f64);
        if t < 0.0 {
            t + std::f64::consts::TAU
        } else {
            t
        }
    }

    fn quadrant(self) -> u8 {
        match (self.a, self.b) {
            (a, b) if a > 0 && b >= 0 => 0,
            (a, b) if a <= 0 && b > 0 => 1,
            (a, b) if a < 0 && b <= 0 => 2,
            _ => 3,
        }
    }
}

/// Exact comparison of point angles in `[0, 2*pi)`; never consults floats.
pub fn angle_order(p: LatticePoint, q: LatticePoint) -> Ordering {
    match p.quadrant().cmp(&q.quadrant()) {
        Ordering::Equal => {
            let cross = p.a as i128 * q.b as i128 - p.b as i128 * q.a as i128;
            // positive cross product: p comes first
            0i128.cmp(&cross)
        }
        other => other,
    }
}

/// All integer points on the circle of radius `sqrt(E)`, sorted by angle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCircle {
    e: u64,
    points: Vec<LatticePoint>,
}

impl LatticeCircle {
    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn lambda(&self) -> f64 {
        (self.e as f64).sqrt()
    }

    pub fn r2(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn angles(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.angle()).collect()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.points.binary_search_by(|q| angle_order(*q, p)).is_ok()
    }
}

/// Exact integer solutions of `a^2 + b^2 = E`, sorted by angle.
///
/// Uses the direct loop for moderate E and the Gaussian-factorization
/// construction above [`BRUTE_FORCE_LIMIT`]; the two are cross-validated on
/// the overlap range in the test suite.
pub fn enumerate_circle(e: u64) -> Result<LatticeCircle, LatticeError> {
    if e == 0 {
        return Err(LatticeError::ZeroEnergy);
    }
    if e > ENERGY_BUDGET {
        return Err(LatticeError::EnergyBudget { e, budget: ENERGY_BUDGET });
    }
    let mut points = if e <= BRUTE_FORCE_LIMIT {
        enumerate_direct(e)
    } else {
        enumerate_from_factorization(e)?
    };
    points.sort_by(|p, q| angle_order(*p, *q));
    Ok(LatticeCircle { e, points })
}

fn enumerate_direct(e: u64) -> Vec<LatticePoint> {
    let mut set = BTreeSet::new();
    let root = (e as f64).sqrt() as i64 + 1;
    for a in 0..=root {
        let aa = (a * a) as u64;
        if aa > e {
            break;
        }
        let bb = e - aa;
        let b = (bb as f64).sqrt().round() as i64;
        if b >= 0 && (b * b) as u64 == bb {
            for &(x, y) in &[(a, b), (a, -b), (-a, b), (-a, -b)] {
                set.insert(LatticePoint::new(x, y));
            }
        }
    }
    set.into_iter().collect()
}

fn enumerate_from_factorization(e: u64) -> Result<Vec<LatticePoint>, LatticeError> {
    let factors = factorize(e)?;
    let mut reps: Vec<(i128, i128)> = vec![(1, 0)];
    for &(p, exp) in &factors {
        if p == 2 {
            let mut w = (1i128, 0i128);
            for _ in 0..exp {
                w = gaussian::gi_mul(w, (1, 1));
            }
            for r in &mut reps {
                *r = gaussian::gi_mul(*r, w);
            }
        } else if p % 4 == 1 {
            let pi = gaussian::gaussian_prime_above(p);
            let bar = (pi.0, -pi.1);
            let mut choices = Vec::with_capacity(exp as usize + 1);
            for s in 0..=exp {
                let mut w = (1i128, 0i128);
                for _ in 0..s {
                    w = gaussian::gi_mul(w, pi);
                }
                for _ in 0..(exp - s) {
                    w = gaussian::gi_mul(w, bar);
                }
                choices.push(w);
            }
            reps = reps
                .iter()
                .flat_map(|&r| choices.iter().map(move |&c| gaussian::gi_mul(r, c)))
                .collect();
        } else {
            // p = 3 mod 4 must occur to an even power, else no representations
            if exp % 2 == 1 {
                return Ok(Vec::new());
            }
            let q = (p as i128).pow(exp / 2);
            for r in &mut reps {
                *r = (r.0 * q, r.1 * q);
            }
        }
    }
    let mut set = BTreeSet::new();
    for &(x, y) in &reps {
        let mut z = (x, y);
        for _ in 0..4 {
            z = gaussian::gi_mul(z, (0, 1));
            debug_assert_eq!(gaussian::gi_norm(z), e as i128);
            set.insert(LatticePoint::new(z.0 as i64, z.1 as i64));
        }
    }
    Ok(set.into_iter().collect())
}

/// Prime factorization by trial division, complete for every `n` within
/// [`ENERGY_BUDGET`].
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>, LatticeError> {
    if n == 0 {
        return Err(LatticeError::ZeroEnergy);
    }
    if n > ENERGY_BUDGET {
        return Err(LatticeError::EnergyBudget { e: n, budget: ENERGY_BUDGET });
    }
    let mut n = n;
    let mut out = Vec::new();
    let mut push = |p: u64, k: u32| {
        if k > 0 {
            out.push((p, k));
        }
    };
    let mut k = 0;
    while n % 2 == 0 {
        n /= 2;
        k += 1;
    }
    push(2, k);
    let mut d = 3u64;
    while d * d <= n {
        let mut k = 0;
        while n % d == 0 {
            n /= d;
            k += 1;
        }
        push(d, k);
        d += 2;
    }
    push(n, u32::from(n > 1));
    Ok(out)
}

/// Number of representations of `E` as an ordered sum of two squares.
///
/// Computed twice, by enumeration and by the divisor-class formula from the
/// prime factorization, and the routes must agree.
pub fn r2(e: u64) -> Result<usize, LatticeError> {
    let by_formula = r2_from_factorization(&factorize(e)?);
    let by_count = enumerate_circle(e)?.r2();
    assert_eq!(
        by_count, by_formula,
        "r2({e}): enumeration gives {by_count}, divisor formula gives {by_formula}"
    );
    Ok(by_count)
}

/// `r2` from a prime factorization: zero if any prime `3 mod 4` occurs to an
/// odd power, else four times the number of divisors built from the primes
/// `1 mod 4`.
pub fn r2_from_factorization(factors: &[(u64, u32)]) -> usize {
    let mut out = 4usize;
    for &(p, exp) in factors {
        match p % 4 {
            1 => out *= exp as usize + 1,
            3 if exp % 2 == 1 => return 0,
            _ => {}
        }
    }
    out
}

/// Closest pair on the circle, exact squared distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinSeparation {
    pub dist_sq: u64,
    pub pair: (LatticePoint, LatticePoint),
}

impl MinSeparation {
    pub fn dist(&self) -> f64 {
        (self.dist_sq as f64).sqrt()
    }
}

/// Minimum distance over distinct point pairs.
///
/// The chord between two circle points is monotone in their angular gap, so
/// the minimum is attained by an angularly adjacent pair.
pub fn min_separation(circle: &LatticeCircle) -> Result<MinSeparation, LatticeError> {
    let pts = circle.points();
    if pts.len() < 2 {
        return Err(LatticeError::TooFewPoints { need: 2, have: pts.len() });
    }
    let mut best: Option<MinSeparation> = None;
    for i in 0..pts.len() {
        let j = (i + 1) % pts.len();
        let d = pts[i].dist_sq(pts[j]);
        if best.map_or(true, |b| d < b.dist_sq) {
            best = Some(MinSeparation { dist_sq: d, pair: (pts[i], pts[j]) });
        }
    }
    Ok(best.unwrap())
}

/// Triple spacing report: the minimum of `|P0-P2|^2 |P0-P1| / lambda` over
/// ordered distinct triples with `|P0-P1| <= |P0-P2|`.
#[derive(Clone, Copy, Debug)]
pub struct TripleSpacingReport {
    pub min_ratio: f64,
    pub witness: [LatticePoint; 3],
}

/// Spacing bound for point triples (Jarnik): any three distinct lattice
/// points on the circle satisfy `|P0-P2|^2 |P0-P1| > c * lambda`; the report
/// carries the empirical minimum of the ratio.
///
/// Returns `Ok(None)` when fewer than three points exist (inapplicable, not
/// a failure).
pub fn verify_jarnik(circle: &LatticeCircle) -> Result<Option<TripleSpacingReport>, LatticeError> {
    let pts = circle.points();
    let m = pts.len();
    if m < 3 {
        return Ok(None);
    }
    let lambda = circle.lambda();
    let mut best: Option<TripleSpacingReport> = None;
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                for (p0, p1, p2) in [(i, j, k), (j, i, k), (k, i, j)] {
                    let d1 = pts[p0].dist_sq(pts[p1]);
                    let d2 = pts[p0].dist_sq(pts[p2]);
                    let (lo, hi, w1, w2) =
                        if d1 <= d2 { (d1, d2, p1, p2) } else { (d2, d1, p2, p1) };
                    let ratio = hi as f64 * (lo as f64).sqrt() / lambda;
                    if best.as_ref().map_or(true, |b| ratio < b.min_ratio) {
                        best = Some(TripleSpacingReport {
                            min_ratio: ratio,
                            witness: [pts[p0], pts[w1], pts[w2]],
                        });
                    }
                }
            }
        }
    }
    let report = best.unwrap();
    assert!(report.min_ratio > 0.0, "distinct integer points cannot coincide");
    Ok(Some(report))
}

/// How the "size" of a circular arc is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcSizeConvention {
    /// Length along the circle of radius lambda (the default reading).
    ArcLength,
    /// Chord length between the arc endpoints.
    Chord,
}

impl ArcSizeConvention {
    /// Angular extent of an arc of the given size on a circle of radius
    /// `lambda`.
    fn angular_extent(self, size: f64, lambda: f64) -> f64 {
        match self {
            ArcSizeConvention::ArcLength => size / lambda,
            ArcSizeConvention::Chord => {
                if size >= 2.0 * lambda {
                    std::f64::consts::TAU
                } else {
                    2.0 * (size / (2.0 * lambda)).asin()
                }
            }
        }
    }

    fn size_of_extent(self, extent: f64, lambda: f64) -> f64 {
        match self {
            ArcSizeConvention::ArcLength => extent * lambda,
            ArcSizeConvention::Chord => 2.0 * lambda * (extent / 2.0).sin(),
        }
    }
}

/// Minimum of `|P0-Q0| |P1-Q1| r / lambda` over distinct quadruples lying on
/// an arc of size `r <= arc_size`.
#[derive(Clone, Debug)]
pub struct PairProductReport {
    pub min_ratio: f64,
    pub witness_pairs: [(LatticePoint, LatticePoint); 2],
    pub witness_arc_size: f64,
}

/// Spacing bound for two point pairs on one arc: the product of the pair
/// distances times the arc size stays commensurate with lambda.  `Ok(None)`
/// when no arc of the requested size holds four distinct points.
pub fn verify_pair_product(
    circle: &LatticeCircle,
    arc_size: f64,
    convention: ArcSizeConvention,
) -> Result<Option<PairProductReport>, LatticeError> {
    let pts = circle.points();
    let m = pts.len();
    if m < 4 {
        return Ok(None);
    }
    let lambda = circle.lambda();
    let max_extent = convention.angular_extent(arc_size, lambda).min(std::f64::consts::TAU);
    let angles: Vec<f64> = pts.iter().map(|p| p.angle()).collect();
    let mut best: Option<PairProductReport> = None;
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                for l in (k + 1)..m {
                    // minimal containing arc: full turn minus the largest
                    // cyclic gap between consecutive chosen points
                    let gaps = [
                        angles[j] - angles[i],
                        angles[k] - angles[j],
                        angles[l] - angles[k],
                        std::f64::consts::TAU - (angles[l] - angles[i]),
                    ];
                    let max_gap = gaps.iter().cloned().fold(f64::MIN, f64::max);
                    let extent = std::f64::consts::TAU - max_gap;
                    if extent > max_extent + 1e-12 {
                        continue;
                    }
                    let size = convention.size_of_extent(extent, lambda);
                    for (p0, q0, p1, q1) in
                        [(i, j, k, l), (i, k, j, l), (i, l, j, k)]
                    {
                        let ratio =
                            pts[p0].dist(pts[q0]) * pts[p1].dist(pts[q1]) * size / lambda;
                        if best.as_ref().map_or(true, |b| ratio < b.min_ratio) {
                            best = Some(PairProductReport {
                                min_ratio: ratio,
                                witness_pairs: [
                                    (pts[p0], pts[q0]),
                                    (pts[p1], pts[q1]),
                                ],
                                witness_arc_size: size,
                            });
                        }
                    }
                }
            }
        }
    }
    if let Some(r) = &best {
        assert!(r.min_ratio > 0.0);
    }
    Ok(best)
}

/// Exact check of the pairwise distance-product lower bound.
#[derive(Clone, Debug)]
pub struct DistanceProductReport {
    /// `prod |P_i - P_j|^2` over i < j, exact.
    pub lhs_sq: BigInt,
    /// Exponent of lambda on the right-hand side.
    pub rhs_exponent: Ratio<i64>,
    /// `E^(rhs exponent)`, exact (the square of the bound).
    pub rhs_sq: BigInt,
    pub holds: bool,
}

/// Checks `prod_{i<j} |P_i - P_j| >= lambda^{m/2 (m/2 - 1)}` (even m) or
/// `lambda^{(m-1)^2/4}` (odd m), comparing squared quantities exactly.
pub fn distance_product_bound(
    points: &[LatticePoint],
    e: u64,
) -> Result<DistanceProductReport, LatticeError> {
    let m = points.len();
    if m < 2 {
        return Err(LatticeError::TooFewPoints { need: 2, have: m });
    }
    validate_on_circle(points, e)?;
    let mut lhs_sq = BigInt::one();
    for i in 0..m {
        for j in (i + 1)..m {
            lhs_sq *= BigInt::from(points[i].dist_sq(points[j]));
        }
    }
    let half = (m / 2) as i64;
    let q: i64 = if m % 2 == 0 { half * (half - 1) } else { ((m as i64 - 1) / 2).pow(2) };
    let rhs_sq = BigInt::from(e).pow(q as u32);
    Ok(DistanceProductReport {
        holds: lhs_sq >= rhs_sq,
        lhs_sq,
        rhs_exponent: Ratio::from_integer(q),
        rhs_sq,
    })
}

fn validate_on_circle(points: &[LatticePoint], e: u64) -> Result<(), LatticeError> {
    for (i, p) in points.iter().enumerate() {
        if p.norm_sq() != e {
            return Err(LatticeError::MixedNorms { a: p.a, b: p.b, e });
        }
        if points[..i].contains(p) {
            return Err(LatticeError::DuplicatePoints);
        }
    }
    Ok(())
}

/// Exact verification of the Vandermonde-type determinant identity behind
/// the distance-product bound.
#[derive(Clone, Debug)]
pub struct VandermondeIdentityReport {
    pub lhs: GaussianInt,
    pub rhs: GaussianInt,
    pub equal_up_to_sign: bool,
    pub det: GaussianInt,
    pub det_nonzero: bool,
    /// `|det|^2`, exact; at least 1 whenever the determinant is nonzero.
    pub det_norm_sq: BigInt,
}

/// Ramana's identity: `lambda^{k(k+1)} prod_{i<j} (P_i - P_j)` equals
/// `prod P_i^k * det V_{k,m}` up to the sign fixed by row ordering, where
/// `V_{k,m}` stacks conjugate powers `k..1`, a row of ones, and powers
/// `1..m-1-k`.  Both sides are computed exactly over the Gaussian integers.
pub fn ramana_determinant(
    points: &[LatticePoint],
    e: u64,
    k: u32,
) -> Result<VandermondeIdentityReport, LatticeError> {
    let m = points.len();
    if m < 1 {
        return Err(LatticeError::TooFewPoints { need: 1, have: 0 });
    }
    if (k as usize) >= m {
        return Err(LatticeError::InvalidK { k, m });
    }
    validate_on_circle(points, e)?;
    let gs: Vec<GaussianInt> = points.iter().map(|&p| GaussianInt::from_point(p)).collect();

    // lambda^{k(k+1)} = E^{k(k+1)/2}
    let e_power = BigInt::from(e).pow(k * (k + 1) / 2);
    let mut lhs = GaussianInt::new(e_power, 0u32);
    for i in 0..m {
        for j in (i + 1)..m {
            lhs = lhs.mul(&gs[i].sub(&gs[j]));
        }
    }

    let mut matrix = Vec::with_capacity(m);
    for r in 0..m {
        let row: Vec<GaussianInt> = gs
            .iter()
            .map(|p| {
                if (r as u32) < k {
                    p.conj().pow(k - r as u32)
                } else {
                    p.pow(r as u32 - k)
                }
            })
            .collect();
        matrix.push(row);
    }
    let det = determinant(&matrix);

    let mut rhs = det.clone();
    for p in &gs {
        rhs = rhs.mul(&p.pow(k));
    }

    let equal_up_to_sign = lhs == rhs || lhs == rhs.neg();
    let det_norm_sq = det.norm();
    Ok(VandermondeIdentityReport {
        lhs,
        rhs,
        equal_up_to_sign,
        det_nonzero: !det.is_zero(),
        det,
        det_norm_sq,
    })
}

/// The arc-length exponent `1/(4 floor(m/2) + 2)`: an arc of length
/// `sqrt(2) * lambda^(1/2 - delta(m))` holds at most `m` lattice points.
pub fn delta_exponent(m: u32) -> Result<Ratio<i64>, LatticeError> {
    if m < 2 {
        return Err(LatticeError::InvalidM { m });
    }
    Ok(Ratio::new(1, 4 * (m as i64 / 2) + 2))
}

/// Result of the sliding-window arc sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcCount {
    pub count: usize,
    /// Angle interval `[start, start + extent]` achieving the maximum.
    pub witness_arc: Option<(f64, f64)>,
}

/// Maximum number of circle points contained in any arc of size `r`.
pub fn max_points_on_arc(
    circle: &LatticeCircle,
    r: f64,
    convention: ArcSizeConvention,
) -> ArcCount {
    assert!(r > 0.0, "arc size must be positive");
    let pts = circle.points();
    let m = pts.len();
    if m == 0 {
        return ArcCount { count: 0, witness_arc: None };
    }
    let lambda = circle.lambda();
    let extent = convention.angular_extent(r, lambda);
    if extent >= std::f64::consts::TAU {
        return ArcCount { count: m, witness_arc: Some((0.0, std::f64::consts::TAU)) };
    }
    let mut angles: Vec<f64> = pts.iter().map(|p| p.angle()).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // unrolled copy of the circle: angle of the t-th point walking around
    let ext = |t: usize| angles[t % m] + std::f64::consts::TAU * (t / m) as f64;
    let mut best = ArcCount { count: 0, witness_arc: None };
    let mut j = 0usize;
    for i in 0..m {
        if j < i {
            j = i;
        }
        while j - i + 1 < m && ext(j + 1) - angles[i] <= extent {
            j += 1;
        }
        let count = j - i + 1;
        if count > best.count {
            best = ArcCount {
                count,
                witness_arc: Some((angles[i], angles[i] + extent)),
            };
        }
    }
    best
}

/// One energy whose circle carries a pair of abnormally close points.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExceptionalEnergy {
    pub e: u64,
    pub r2: usize,
    pub min_sep_sq: u64,
    /// `(sqrt E)^(1 - epsilon)`, the separation the energy failed to meet.
    pub threshold: f64,
}

/// Census of exceptional energies up to N.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExceptionalCensus {
    pub n: u64,
    pub epsilon: f64,
    pub exceptional: Vec<ExceptionalEnergy>,
    pub count: usize,
    /// `N^(1 - epsilon/3)` for comparison with the count.
    pub comparison: f64,
}

/// Lists every representable `E <= N` whose minimum separation is at most
/// `(sqrt E)^(1-epsilon)`.  Almost all energies pass; the census is the
/// exceptional complement.
pub fn exceptional_census(n: u64, epsilon: f64) -> ExceptionalCensus {
    assert!(n >= 2, "census needs N >= 2");
    assert!(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0,1)");
    let exceptional: Vec<ExceptionalEnergy> = (1..=n)
        .into_par_iter()
        .filter_map(|e| {
            let circle = enumerate_circle(e).expect("within budget");
            if circle.r2() < 2 {
                return None;
            }
            let sep = min_separation(&circle).expect("r2 >= 2");
            let threshold = (e as f64).sqrt().powf(1.0 - epsilon);
            if (sep.dist_sq as f64).sqrt() <= threshold {
                Some(ExceptionalEnergy {
                    e,
                    r2: circle.r2(),
                    min_sep_sq: sep.dist_sq,
                    threshold,
                })
            } else {
                None
            }
        })
        .collect();
    ExceptionalCensus {
        n,
        epsilon,
        count: exceptional.len(),
        comparison: (n as f64).powf(1.0 - epsilon / 3.0),
        exceptional,
    }
}

/// A connected component of the lattice-point graph with edges at distance
/// at most the clustering threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyCluster {
    pub members: Vec<LatticePoint>,
    pub diameter: f64,
}

/// Partition of the circle points by chain connectivity at the threshold:
/// any two members of a cluster are joined by a chain of steps of length at
/// most `threshold`, and distinct clusters are more than `threshold` apart.
pub fn cluster_frequencies(circle: &LatticeCircle, threshold: f64) -> Vec<FrequencyCluster> {
    assert!(threshold > 0.0, "threshold must be positive");
    let pts = circle.points();
    let m = pts.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    let thr_sq = threshold * threshold;
    for i in 0..m {
        for j in (i + 1)..m {
            if (pts[i].dist_sq(pts[j]) as f64) <= thr_sq {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut clusters: Vec<Vec<LatticePoint>> = Vec::new();
    let mut root_index: std::collections::HashMap<usize, usize> = Default::default();
    for i in 0..m {
        let r = find(&mut parent, i);
        let idx = *root_index.entry(r).or_insert_with(|| {
            clusters.push(Vec::new());
            clusters.len() - 1
        });
        clusters[idx].push(pts[i]);
    }
    clusters
        .into_iter()
        .map(|members| {
            let mut diameter: f64 = 0.0;
            for i in 0..members.len() {
                for j in (i + 1)..members.len() {
                    diameter = diameter.max(members[i].dist(members[j]));
                }
            }
            FrequencyCluster { members, diameter }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent oracle: the full double loop over |a|, |b| <= ceil(sqrt E).
    fn double_loop_oracle(e: u64) -> Vec<LatticePoint> {
        let root = (e as f64).sqrt().ceil() as i64;
        let mut out = Vec::new();
        for a in -root..=root {
            for b in -root..=root {
                if (a * a + b * b) as u64 == e {
                    out.push(LatticePoint::new(a, b));
                }
            }
        }
        out.sort_by(|p, q| angle_order(*p, *q));
        out
    }

    #[test]
    fn unit_circle() {
        let c = enumerate_circle(1).unwrap();
        assert_eq!(
            c.points(),
            &[
                LatticePoint::new(1, 0),
                LatticePoint::new(0, 1),
                LatticePoint::new(-1, 0),
                LatticePoint::new(0, -1)
            ]
        );
        assert_eq!(r2(1).unwrap(), 4);
    }

    #[test]
    fn e_25_has_twelve_points() {
        let c = enumerate_circle(25).unwrap();
        assert_eq!(c.r2(), 12);
        for p in [(3, 4), (4, 3), (5, 0)] {
            assert!(c.contains(LatticePoint::new(p.0, p.1)));
        }
        assert_eq!(c.points(), double_loop_oracle(25).as_slice());
    }

    #[test]
    fn e_3_is_empty() {
        let c = enumerate_circle(3).unwrap();
        assert_eq!(c.r2(), 0);
        assert_eq!(r2(3).unwrap(), 0);
    }

    #[test]
    fn rejects_zero_and_budget() {
        assert!(matches!(enumerate_circle(0), Err(LatticeError::ZeroEnergy)));
        assert!(matches!(
            enumerate_circle(ENERGY_BUDGET + 1),
            Err(LatticeError::EnergyBudget { .. })
        ));
    }

    #[test]
    fn r2_values() {
        assert_eq!(r2(2).unwrap(), 4);
        assert_eq!(r2(9).unwrap(), 4);
        assert_eq!(r2(65).unwrap(), 16);
    }

    #[test]
    fn factorization_routes_agree_on_a_range() {
        for e in 1..2000u64 {
            let brute = double_loop_oracle(e).len();
            assert_eq!(r2(e).unwrap(), brute, "E = {e}");
        }
    }

    #[test]
    fn gaussian_construction_matches_direct_loop() {
        // straddle interesting factorizations: powers of 2, split and inert
        // primes, squares
        for e in [2u64, 4, 5, 25, 50, 65, 325, 1105, 4225, 9, 49, 3, 77, 1984, 99856] {
            let direct = enumerate_direct(e);
            let from_fact = enumerate_from_factorization(e).unwrap();
            let mut a = direct.clone();
            let mut b = from_fact.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b, "E = {e}");
        }
    }

    #[test]
    fn min_separation_examples() {
        assert_eq!(min_separation(&enumerate_circle(25).unwrap()).unwrap().dist_sq, 2);
        // on E = 65 the closest pair straddles the axis: (8,1) and (8,-1)
        let sep65 = min_separation(&enumerate_circle(65).unwrap()).unwrap();
        assert_eq!(sep65.dist_sq, 4);
        assert_eq!(min_separation(&enumerate_circle(1).unwrap()).unwrap().dist_sq, 2);
        assert!(matches!(
            min_separation(&enumerate_circle(3).unwrap()),
            Err(LatticeError::TooFewPoints { .. })
        ));
    }

    #[test]
    fn min_separation_matches_all_pairs_oracle() {
        for e in 1..1500u64 {
            let c = enumerate_circle(e).unwrap();
            if c.r2() < 2 {
                continue;
            }
            let pts = c.points();
            let mut best = u64::MAX;
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    best = best.min(pts[i].dist_sq(pts[j]));
                }
            }
            assert_eq!(min_separation(&c).unwrap().dist_sq, best, "E = {e}");
        }
    }

    #[test]
    fn jarnik_specific_triple() {
        // (4,3), (3,4), (0,5): nearer neighbor at sqrt(2), farther at sqrt(20)
        let p0 = LatticePoint::new(4, 3);
        let p1 = LatticePoint::new(3, 4);
        let p2 = LatticePoint::new(0, 5);
        let product = p0.dist_sq(p2) as f64 * p0.dist(p1);
        assert_relative_eq!(product, 20.0 * 2f64.sqrt(), max_relative = 1e-12);
        assert!(product > 5.0);
    }

    #[test]
    fn jarnik_minimum_on_e25() {
        let report = verify_jarnik(&enumerate_circle(25).unwrap()).unwrap().unwrap();
        // attained by a sqrt(2) pair with a sqrt(10) third point
        assert_relative_eq!(report.min_ratio, 2.0 * 2f64.sqrt(), max_relative = 1e-12);
        assert!(report.min_ratio > 0.0);
    }

    #[test]
    fn jarnik_inapplicable_below_three_points() {
        assert!(verify_jarnik(&enumerate_circle(3).unwrap()).unwrap().is_none());
    }

    #[test]
    fn pair_product_quarter_arc_of_e25() {
        // quarter arcs hold four points; the minimal pairing couples the
        // sqrt(2) chord of (4,3),(3,4) with the sqrt(10) chord of
        // (0,5),(-3,4), giving sqrt(20) * (pi/2 * 5) / 5 = pi * sqrt(5)
        let c = enumerate_circle(25).unwrap();
        let quarter = 5.0 * std::f64::consts::FRAC_PI_2;
        let report = verify_pair_product(&c, quarter, ArcSizeConvention::ArcLength)
            .unwrap()
            .unwrap();
        assert_relative_eq!(
            report.min_ratio,
            std::f64::consts::PI * 5f64.sqrt(),
            max_relative = 1e-9
        );
    }

    #[test]
    fn pair_product_inapplicable_with_few_points() {
        let c = enumerate_circle(2).unwrap(); // r2 = 4 but spread over the full circle
        assert_eq!(c.r2(), 4);
        // a tiny arc holds at most one point
        assert!(verify_pair_product(&c, 0.1, ArcSizeConvention::ArcLength)
            .unwrap()
            .is_none());
    }

    #[test]
    fn distance_product_small_cases() {
        // m = 2: bound is lambda^0 = 1
        let two = [LatticePoint::new(3, 4), LatticePoint::new(4, 3)];
        let r = distance_product_bound(&two, 25).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs_sq, BigInt::one());

        // m = 3 on E = 25: product of distances is exactly 20 >= lambda = 5
        let three = [LatticePoint::new(3, 4), LatticePoint::new(4, 3), LatticePoint::new(5, 0)];
        let r = distance_product_bound(&three, 25).unwrap();
        assert_eq!(r.lhs_sq, BigInt::from(400u32));
        assert_eq!(r.rhs_sq, BigInt::from(25u32));
        assert!(r.holds);
        assert_eq!(r.rhs_exponent, Ratio::from_integer(1));
    }

    #[test]
    fn distance_product_four_closest_on_e65() {
        let pts = [
            LatticePoint::new(8, 1),
            LatticePoint::new(7, 4),
            LatticePoint::new(4, 7),
            LatticePoint::new(1, 8),
        ];
        let r = distance_product_bound(&pts, 65).unwrap();
        assert_eq!(r.lhs_sq, BigInt::from(476_985_600u64));
        assert_eq!(r.rhs_sq, BigInt::from(65u64 * 65));
        assert!(r.holds);
    }

    #[test]
    fn distance_product_rejects_mixed_norms() {
        let pts = [LatticePoint::new(3, 4), LatticePoint::new(1, 0)];
        assert!(matches!(
            distance_product_bound(&pts, 25),
            Err(LatticeError::MixedNorms { .. })
        ));
    }

    #[test]
    fn vandermonde_identity_k0_is_plain_vandermonde() {
        let pts = [LatticePoint::new(3, 4), LatticePoint::new(4, 3), LatticePoint::new(0, 5)];
        let r = ramana_determinant(&pts, 25, 0).unwrap();
        assert!(r.equal_up_to_sign);
        assert!(r.det_nonzero);
    }

    #[test]
    fn vandermonde_identity_m2_k1_on_e25() {
        let pts = [LatticePoint::new(3, 4), LatticePoint::new(4, 3)];
        let r = ramana_determinant(&pts, 25, 1).unwrap();
        assert!(r.equal_up_to_sign);
        // |LHS|^2 = |25 * (-1 + i)|^2 = 1250, exactly
        assert_eq!(r.lhs.norm(), BigInt::from(1250u32));
        assert_eq!(r.rhs.norm(), BigInt::from(1250u32));
        assert!(r.det_norm_sq >= BigInt::one());
    }

    #[test]
    fn vandermonde_identity_m3_k1_on_e65() {
        let pts = [LatticePoint::new(1, 8), LatticePoint::new(4, 7), LatticePoint::new(8, 1)];
        let r = ramana_determinant(&pts, 65, 1).unwrap();
        assert!(r.equal_up_to_sign);
        assert!(r.det_nonzero);
    }

    #[test]
    fn vandermonde_identity_rejects_bad_k() {
        let pts = [LatticePoint::new(3, 4), LatticePoint::new(4, 3)];
        assert!(matches!(
            ramana_determinant(&pts, 25, 2),
            Err(LatticeError::InvalidK { .. })
        ));
    }

    #[test]
    fn delta_exponent_values() {
        assert_eq!(delta_exponent(2).unwrap(), Ratio::new(1, 6));
        assert_eq!(delta_exponent(3).unwrap(), Ratio::new(1, 6));
        assert_eq!(delta_exponent(4).unwrap(), Ratio::new(1, 10));
        assert!(delta_exponent(1).is_err());
    }

    #[test]
    fn arc_sweep_whole_circle() {
        let c = enumerate_circle(25).unwrap();
        let tau = std::f64::consts::TAU;
        let r = max_points_on_arc(&c, tau * c.lambda() + 1.0, ArcSizeConvention::ArcLength);
        assert_eq!(r.count, 12);
    }

    #[test]
    fn arc_sweep_pinch_bound_for_pairs() {
        // arc length sqrt(2) * lambda^(1/3) on E = 25 holds at most 2 points
        let c = enumerate_circle(25).unwrap();
        let r_len = 2f64.sqrt() * 5f64.powf(1.0 / 3.0);
        let r = max_points_on_arc(&c, r_len, ArcSizeConvention::ArcLength);
        assert_eq!(r.count, 2);
    }

    #[test]
    fn arc_sweep_tiny_arc() {
        let c = enumerate_circle(25).unwrap();
        let r = max_points_on_arc(&c, 1e-3, ArcSizeConvention::ArcLength);
        assert_eq!(r.count, 1);
    }

    #[test]
    fn arc_sweep_matches_anchor_oracle() {
        // oracle: count points in the closed arc starting at each point
        for e in [25u64, 65, 325, 1105] {
            let c = enumerate_circle(e).unwrap();
            for frac in [0.05, 0.2, 0.5, 1.2] {
                let r_len = frac * c.lambda();
                let sweep = max_points_on_arc(&c, r_len, ArcSizeConvention::ArcLength);
                let extent = frac;
                let mut oracle = 0usize;
                let angles: Vec<f64> = c.points().iter().map(|p| p.angle()).collect();
                for &start in &angles {
                    let count = angles
                        .iter()
                        .filter(|&&t| {
                            let mut d = t - start;
                            if d < 0.0 {
                                d += std::f64::consts::TAU;
                            }
                            d <= extent
                        })
                        .count();
                    oracle = oracle.max(count);
                }
                assert_eq!(sweep.count, oracle, "E = {e}, frac = {frac}");
            }
        }
    }

    #[test]
    fn chord_convention_caps_at_diameter() {
        let c = enumerate_circle(25).unwrap();
        let r = max_points_on_arc(&c, 10.0, ArcSizeConvention::Chord);
        assert_eq!(r.count, 12); // chord of 2*lambda spans the whole circle
    }

    #[test]
    fn census_brute_force_small() {
        let census = exceptional_census(1000, 0.5);
        // oracle: recompute each E by scanning all pairs
        let mut oracle = 0usize;
        for e in 1..=1000u64 {
            let c = enumerate_circle(e).unwrap();
            if c.r2() < 2 {
                continue;
            }
            let pts = c.points();
            let mut best = u64::MAX;
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    best = best.min(pts[i].dist_sq(pts[j]));
                }
            }
            if (best as f64).sqrt() <= (e as f64).sqrt().powf(0.5) {
                oracle += 1;
            }
        }
        assert_eq!(census.count, oracle);
        assert!(census.exceptional.iter().all(|x| x.e <= 1000));
    }

    #[test]
    fn census_near_epsilon_one_is_empty() {
        // distance exactly 1 between two circle points is impossible
        let census = exceptional_census(500, 0.999);
        assert_eq!(census.count, 0);
    }

    #[test]
    fn clusters_on_e25() {
        let c = enumerate_circle(25).unwrap();
        let clusters = cluster_frequencies(&c, 3.0);
        assert_eq!(clusters.len(), 8);
        let sizes: Vec<usize> = clusters.iter().map(|cl| cl.members.len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 4);
        assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 4);
        // separation between distinct clusters exceeds the threshold
        for (i, ci) in clusters.iter().enumerate() {
            for cj in clusters.iter().skip(i + 1) {
                for p in &ci.members {
                    for q in &cj.members {
                        assert!(p.dist(*q) > 3.0);
                    }
                }
            }
        }
    }

    #[test]
    fn clusters_degenerate_thresholds() {
        let c = enumerate_circle(25).unwrap();
        assert_eq!(cluster_frequencies(&c, 2.0 * c.lambda()).len(), 1);
        assert_eq!(cluster_frequencies(&c, 1.0).len(), 12);
    }

    #[test]
    fn cluster_partition_is_exact() {
        for e in [25u64, 65, 325] {
            let c = enumerate_circle(e).unwrap();
            for thr in [1.5, 3.0, 7.0, 20.0] {
                let clusters = cluster_frequencies(&c, thr);
                let total: usize = clusters.iter().map(|cl| cl.members.len()).sum();
                assert_eq!(total, c.r2());
                for cl in &clusters {
                    assert!(cl.diameter <= thr * c.r2() as f64 + 1e-9);
                }
            }
        }
    }
}

//! Regular arcs and their width.
//!
//! A regular arc is an arc-length-parametrized piece of curve whose
//! curvature magnitude is pinched between `kappa` and `2 kappa` for some
//! positive `kappa` and whose total turning `2 kappa ell` stays below one
//! radian.  Such an arc is convex, sits over its chord as a graph, and its
//! width (minimal gap between parallel supporting lines) is commensurate
//! with the sagitta scale `ell^2 kappa`.
//!
//! Widths are computed twice, by deliberately different routes: the
//! chord-frame construction (rotate the chord horizontal, take the maximal
//! height) and rotating calipers over the convex hull of the samples.  The
//! two must agree to a tenth of a percent on every arc; disagreement is a
//! bug indicator and fails loudly.

use crate::nodal_geometry::{ArcParametrization, NodalCurve};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArcError {
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("curvature must be nonzero with constant sign on a regular arc")]
    InflectionOrFlat,
    #[error("pinching violated: max |kappa| = {kmax:.6} >= 2 * min |kappa| = {kmin:.6}")]
    PinchingViolated { kmin: f64, kmax: f64 },
    #[error("total turning bound violated: 2 * kappa * ell = {value:.6} >= 1")]
    TurningBoundViolated { value: f64 },
    #[error("tangent sample {index} has norm {norm:.9}, expected 1")]
    NonUnitTangent { index: usize, norm: f64 },
    #[error("samples are not in convex position over their chord")]
    NonConvexSamples,
    #[error("width methods disagree: chord frame {chord_frame:.9} vs calipers {calipers:.9}")]
    MethodDisagreement { chord_frame: f64, calipers: f64 },
    #[error("need at least 3 distinct lambda values for a scaling fit")]
    NotEnoughData,
    #[error("arcs overlap inside one curve: [{a0:.6}, {a1:.6}] vs [{b0:.6}, {b1:.6}]")]
    OverlappingArcs { a0: f64, a1: f64, b0: f64, b1: f64 },
}

/// One arc-length sample of a regular arc.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ArcSample {
    pub point: [f64; 2],
    /// Unit tangent.
    pub tangent: [f64; 2],
    /// Signed curvature.
    pub curvature: f64,
    /// Arc-length parameter, starting at zero.
    pub s: f64,
}

/// An arc-length-sampled sub-arc with pinched curvature.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegularArc {
    samples: Vec<ArcSample>,
    ell: f64,
    kappa_min: f64,
    kappa_max: f64,
    /// Index of the source curve (when produced by segmentation).
    pub curve_id: usize,
    /// Arc-length interval on the source curve.
    pub source_interval: (f64, f64),
}

impl RegularArc {
    /// Builds and validates an arc from raw samples.
    pub fn from_samples(samples: Vec<ArcSample>) -> Result<Self, ArcError> {
        if samples.len() < 3 {
            return Err(ArcError::TooFewSamples { need: 3, got: samples.len() });
        }
        let ell = samples.last().unwrap().s - samples[0].s;
        let kappa_min =
            samples.iter().map(|p| p.curvature.abs()).fold(f64::INFINITY, f64::min);
        let kappa_max = samples.iter().map(|p| p.curvature.abs()).fold(0.0, f64::max);
        let arc = Self {
            samples,
            ell,
            kappa_min,
            kappa_max,
            curve_id: 0,
            source_interval: (0.0, ell),
        };
        arc.validate()?;
        Ok(arc)
    }

    /// Re-verifies every invariant from the raw samples.
    pub fn validate(&self) -> Result<(), ArcError> {
        if self.samples.len() < 3 {
            return Err(ArcError::TooFewSamples { need: 3, got: self.samples.len() });
        }
        if self.samples.iter().any(|p| p.curvature == 0.0 || !p.curvature.is_finite()) {
            return Err(ArcError::InflectionOrFlat);
        }
        let sign = self.samples[0].curvature.signum();
        if self.samples.iter().any(|p| p.curvature.signum() != sign) {
            return Err(ArcError::InflectionOrFlat);
        }
        if !(self.kappa_min > 0.0) || self.kappa_max >= 2.0 * self.kappa_min {
            return Err(ArcError::PinchingViolated {
                kmin: self.kappa_min,
                kmax: self.kappa_max,
            });
        }
        let turning = 2.0 * self.kappa_min * self.ell;
        if turning >= 1.0 {
            return Err(ArcError::TurningBoundViolated { value: turning });
        }
        for (index, p) in self.samples.iter().enumerate() {
            let norm = (p.tangent[0] * p.tangent[0] + p.tangent[1] * p.tangent[1]).sqrt();
            if (norm - 1.0).abs() > 1e-8 {
                return Err(ArcError::NonUnitTangent { index, norm });
            }
        }
        Ok(())
    }

    pub fn samples(&self) -> &[ArcSample] {
        &self.samples
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn kappa_min(&self) -> f64 {
        self.kappa_min
    }

    pub fn kappa_max(&self) -> f64 {
        self.kappa_max
    }

    /// Truncation to a sample subrange (re-validated).
    pub fn truncated(&self, from: usize, to: usize) -> Result<Self, ArcError> {
        let slice = &self.samples[from..to];
        let s0 = slice[0].s;
        let samples: Vec<ArcSample> =
            slice.iter().map(|p| ArcSample { s: p.s - s0, ..*p }).collect();
        let mut arc = Self::from_samples(samples)?;
        arc.curve_id = self.curve_id;
        arc.source_interval =
            (self.source_interval.0 + s0, self.source_interval.0 + s0 + arc.ell);
        Ok(arc)
    }
}

/// Linear interpolation between samples turns a stored arc back into a
/// parametrized one, so the oscillatory-integral machinery can run on
/// extracted arcs.
impl ArcParametrization for RegularArc {
    fn length(&self) -> f64 {
        self.ell
    }

    fn point(&self, t: f64) -> [f64; 2] {
        let (a, b, w) = self.bracket(t);
        [a.point[0] + w * (b.point[0] - a.point[0]), a.point[1] + w * (b.point[1] - a.point[1])]
    }

    fn tangent(&self, t: f64) -> [f64; 2] {
        let (a, b, w) = self.bracket(t);
        let raw = [
            a.tangent[0] + w * (b.tangent[0] - a.tangent[0]),
            a.tangent[1] + w * (b.tangent[1] - a.tangent[1]),
        ];
        let norm = (raw[0] * raw[0] + raw[1] * raw[1]).sqrt();
        [raw[0] / norm, raw[1] / norm]
    }

    fn curvature(&self, t: f64) -> f64 {
        let (a, b, w) = self.bracket(t);
        (a.curvature + w * (b.curvature - a.curvature)).abs()
    }
}

impl RegularArc {
    fn bracket(&self, t: f64) -> (&ArcSample, &ArcSample, f64) {
        let s = t.clamp(0.0, self.ell) + self.samples[0].s;
        let idx = self
            .samples
            .partition_point(|p| p.s <= s)
            .saturating_sub(1)
            .min(self.samples.len() - 2);
        let (a, b) = (&self.samples[idx], &self.samples[idx + 1]);
        let w = if b.s > a.s { ((s - a.s) / (b.s - a.s)).clamp(0.0, 1.0) } else { 0.0 };
        (a, b, w)
    }
}

/// Greedy maximal segmentation of a curve into regular arcs.
///
/// Splits at curvature sign changes and degenerate samples, and whenever
/// extending the window would violate the pinching `kappa_max < 2 kappa_min`
/// or the turning bound `2 kappa_min ell < 1`.  Arcs shorter than eight
/// extraction steps are discarded; singular-adjacent curve ends are trimmed
/// by two steps before segmentation.
pub fn segment_regular_arcs(curve: &NodalCurve) -> Vec<RegularArc> {
    segment_regular_arcs_indexed(curve, 0)
}

/// Same as [`segment_regular_arcs`] but records the source curve index.
pub fn segment_regular_arcs_indexed(curve: &NodalCurve, curve_id: usize) -> Vec<RegularArc> {
    let n = curve.vertices.len();
    if n < 3 {
        return Vec::new();
    }
    let (lo, hi) = if curve.singular_adjacent && n > 4 {
        (2, n - 2) // trim two extraction steps at the open ends
    } else {
        (0, n)
    };
    let min_len = 8.0 * curve.extraction_step;
    let mut arcs = Vec::new();
    let mut start = lo;
    let emit = |from: usize, to: usize, arcs: &mut Vec<RegularArc>| {
        // window [from, to] inclusive
        if to <= from + 2 {
            return;
        }
        let ell = curve.arclength_cum[to] - curve.arclength_cum[from];
        if ell < min_len {
            return;
        }
        if let Some(arc) = build_arc(curve, from, to, curve_id) {
            arcs.push(arc);
        }
    };
    let usable = |i: usize| curve.curvature_samples[i].is_finite()
        && curve.curvature_samples[i] != 0.0;
    // curvature of the window [from..=to], vertices interleaved with the
    // refined segment midpoints when the extraction recorded them
    let window_curvatures = |from: usize, to: usize| -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * (to - from) + 1);
        for i in from..=to {
            out.push(curve.curvature_samples[i]);
            if i < to {
                if let Some(m) = curve.midpoints.get(i) {
                    out.push(m.curvature);
                }
            }
        }
        out
    };
    let mut i = lo;
    while i < hi {
        if !usable(i) {
            if i > start {
                emit(start, i - 1, &mut arcs);
            }
            i += 1;
            start = i;
            continue;
        }
        if i == start {
            i += 1;
            continue;
        }
        // check the window [start..=i]
        let window = window_curvatures(start, i);
        let sign = window[0].signum();
        let mut ok = window.iter().all(|k| k.is_finite() && k.signum() == sign && *k != 0.0);
        if ok {
            let kmin = window.iter().map(|k| k.abs()).fold(f64::INFINITY, f64::min);
            let kmax = window.iter().map(|k| k.abs()).fold(0.0, f64::max);
            let ell = curve.arclength_cum[i] - curve.arclength_cum[start];
            ok = kmax < 2.0 * kmin && 2.0 * kmin * ell < 1.0;
        }
        if ok {
            // resolution certificates: the samples must actually resolve the
            // curvature they report, else a spike narrower than a step could
            // hide inside the pinched band
            ok = window.windows(2).all(|w| {
                let (a, b) = (w[0].abs(), w[1].abs());
                a.max(b) <= 1.5 * a.min(b)
            }) && chord_turns_resolved(curve, start, i);
        }
        if ok {
            i += 1;
        } else if i - start >= 2 {
            emit(start, i - 1, &mut arcs);
            // restart at the shared endpoint; the two-sample window
            // [i-1, i] is re-checked on the next pass
            start = i - 1;
        } else {
            // a bare sample pair already violates: drop the first sample
            start += 1;
        }
    }
    if hi > start + 1 {
        emit(start, hi - 1, &mut arcs);
    }
    arcs
}

/// Checks that the polyline turning at each interior vertex of the window
/// matches the turning the sampled curvature predicts; a curvature spike
/// hiding between samples bends the polyline without touching the samples.
fn chord_turns_resolved(curve: &NodalCurve, from: usize, to: usize) -> bool {
    for i in (from + 1)..to {
        let p0 = curve.vertices[i - 1];
        let p1 = curve.vertices[i];
        let p2 = curve.vertices[i + 1];
        let d0 = [p1[0] - p0[0], p1[1] - p0[1]];
        let d1 = [p2[0] - p1[0], p2[1] - p1[1]];
        let turn = (d0[0] * d1[1] - d0[1] * d1[0]).atan2(d0[0] * d1[0] + d0[1] * d1[1]).abs();
        let step = 0.5
            * ((d0[0] * d0[0] + d0[1] * d0[1]).sqrt() + (d1[0] * d1[0] + d1[1] * d1[1]).sqrt());
        let predicted = curve.curvature_samples[i].abs() * step;
        if turn > 2.2 * predicted + 1e-9 {
            return false;
        }
    }
    true
}

fn build_arc(curve: &NodalCurve, from: usize, to: usize, curve_id: usize) -> Option<RegularArc> {
    let s0 = curve.arclength_cum[from];
    let mut samples = Vec::with_capacity(2 * (to - from) + 1);
    for i in from..=to {
        let p = curve.vertices[i];
        // central-difference tangent, one-sided at the window ends
        let (a, b) = if i == 0 {
            (curve.vertices[i], curve.vertices[i + 1])
        } else if i + 1 == curve.vertices.len() {
            (curve.vertices[i - 1], curve.vertices[i])
        } else {
            (curve.vertices[i - 1], curve.vertices[i + 1])
        };
        let d = [b[0] - a[0], b[1] - a[1]];
        let norm = (d[0] * d[0] + d[1] * d[1]).sqrt();
        if norm == 0.0 {
            return None;
        }
        samples.push(ArcSample {
            point: p,
            tangent: [d[0] / norm, d[1] / norm],
            curvature: curve.curvature_samples[i],
            s: curve.arclength_cum[i] - s0,
        });
        if i < to {
            if let Some(m) = curve.midpoints.get(i) {
                let q = curve.vertices[i + 1];
                let d = [q[0] - p[0], q[1] - p[1]];
                let norm = (d[0] * d[0] + d[1] * d[1]).sqrt();
                let ds = ((m.point[0] - p[0]).powi(2) + (m.point[1] - p[1]).powi(2)).sqrt();
                if norm > 0.0 && ds > 0.0 {
                    samples.push(ArcSample {
                        point: m.point,
                        tangent: [d[0] / norm, d[1] / norm],
                        curvature: m.curvature,
                        s: curve.arclength_cum[i] - s0 + ds,
                    });
                }
            }
        }
    }
    let mut arc = RegularArc::from_samples(samples).ok()?;
    arc.curve_id = curve_id;
    arc.source_interval = (s0, s0 + arc.ell);
    Some(arc)
}

/// Dual-route width measurement of one regular arc.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct WidthReport {
    /// The reported width (the chord-frame value, the construction that
    /// realizes the minimal supporting pair for a regular arc).
    pub width: f64,
    pub chord_frame_height: f64,
    pub calipers_width: f64,
    /// `ell^2 * kappa_min`.
    pub sagitta_prediction: f64,
    /// `width / sagitta_prediction`; lands in `[1/16, 1]` for regular arcs
    /// (constant curvature gives 1/8, pinching moves it by at most a factor
    /// of two either way).
    pub ratio: f64,
    pub ell: f64,
    pub kappa_min: f64,
    pub kappa_max: f64,
}

/// Computes the width as the minimal distance between parallel supporting
/// lines, by the chord-frame construction and independently by rotating
/// calipers; the two must agree to 0.1 percent.
pub fn width(arc: &RegularArc) -> Result<WidthReport, ArcError> {
    arc.validate()?;
    let pts: Vec<[f64; 2]> = arc.samples().iter().map(|p| p.point).collect();
    let chord_frame_height = chord_frame_height(&pts)?;
    let calipers_width = calipers_width(&pts)?;
    let rel = (chord_frame_height - calipers_width).abs() / calipers_width.max(f64::MIN_POSITIVE);
    if rel > 1e-3 {
        return Err(ArcError::MethodDisagreement {
            chord_frame: chord_frame_height,
            calipers: calipers_width,
        });
    }
    let sagitta_prediction = arc.ell() * arc.ell() * arc.kappa_min();
    Ok(WidthReport {
        width: chord_frame_height,
        chord_frame_height,
        calipers_width,
        sagitta_prediction,
        ratio: chord_frame_height / sagitta_prediction,
        ell: arc.ell(),
        kappa_min: arc.kappa_min(),
        kappa_max: arc.kappa_max(),
    })
}

/// Height of the arc over its chord: rotate so the chord is horizontal and
/// take the maximal sample height, sharpened by a parabolic fit through the
/// neighbors of the argmax.
fn chord_frame_height(pts: &[[f64; 2]]) -> Result<f64, ArcError> {
    let a = pts[0];
    let b = pts[pts.len() - 1];
    let chord = [b[0] - a[0], b[1] - a[1]];
    let norm = (chord[0] * chord[0] + chord[1] * chord[1]).sqrt();
    if norm == 0.0 {
        return Err(ArcError::NonConvexSamples);
    }
    let u = [chord[0] / norm, chord[1] / norm];
    let height = |p: [f64; 2]| u[0] * (p[1] - a[1]) - u[1] * (p[0] - a[0]);
    let heights: Vec<f64> = pts.iter().map(|&p| height(p)).collect();
    let max = heights.iter().cloned().fold(f64::MIN, f64::max);
    let min = heights.iter().cloned().fold(f64::MAX, f64::min);
    // convex side: all heights on one side of the chord (noise allowance)
    let span = (max - min).max(f64::MIN_POSITIVE);
    if max > 1e-9 * span && min < -1e-9 * span {
        return Err(ArcError::NonConvexSamples);
    }
    let flip = max.abs() < min.abs();
    let h: Vec<f64> = if flip { heights.iter().map(|v| -v).collect() } else { heights };
    let (mut best_i, mut best) = (0usize, f64::MIN);
    for (i, &v) in h.iter().enumerate() {
        if v > best {
            best = v;
            best_i = i;
        }
    }
    if best_i > 0 && best_i + 1 < h.len() {
        best = best.max(parabola_peak(
            0.0,
            h[best_i - 1],
            1.0,
            h[best_i],
            2.0,
            h[best_i + 1],
        ));
    }
    Ok(best)
}

/// Quadratic through three points, value at its interior extremum (falls
/// back to the middle value when the fit degenerates).
fn parabola_peak(x0: f64, y0: f64, x1: f64, y1: f64, x2: f64, y2: f64) -> f64 {
    let d0 = (y1 - y0) / (x1 - x0);
    let d1 = (y2 - y1) / (x2 - x1);
    let curv = (d1 - d0) / (x2 - x0);
    if curv >= 0.0 {
        return y1;
    }
    // vertex of y1 + d(x) expansion around x1
    let slope = (d0 + d1) / 2.0 + curv * (x1 - (x0 + x2) / 2.0);
    let dx = -slope / (2.0 * curv);
    y1 + slope * dx + curv * dx * dx
}

/// Convex hull (monotone chain, counterclockwise, strict turns), carrying
/// the original sample indices.
fn convex_hull(points: &[[f64; 2]]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].partial_cmp(&points[j]).unwrap());
    order.dedup_by(|&mut i, &mut j| points[i] == points[j]);
    if order.len() <= 2 {
        return order;
    }
    let cross = |o: usize, a: usize, b: usize| {
        let (o, a, b) = (points[o], points[a], points[b]);
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut lower: Vec<usize> = Vec::new();
    for &p in &order {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &p in order.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Width of the convex hull of the samples by rotating calipers: the
/// minimum over hull-edge directions of the support-to-support distance.
/// The farthest vertex advances monotonically around the hull, so the scan
/// is linear.
///
/// Both supports are sharpened by a parabola through the extremizing
/// sample's neighbors in the original order; a secant edge between adjacent
/// samples sits inside the true supporting tangent by its own sagitta, and
/// the near-side refinement recovers exactly that bulge.
fn calipers_width(points: &[[f64; 2]]) -> Result<f64, ArcError> {
    let hull = convex_hull(points);
    let n = hull.len();
    if n < 3 {
        return Err(ArcError::TooFewSamples { need: 3, got: n });
    }
    // signed projection orthogonal to the edge i -> j
    let project = |i: usize, j: usize, p: [f64; 2]| {
        let a = points[hull[i]];
        let b = points[hull[j]];
        let e = [b[0] - a[0], b[1] - a[1]];
        let len = (e[0] * e[0] + e[1] * e[1]).sqrt();
        (e[0] * (p[1] - a[1]) - e[1] * (p[0] - a[0])) / len
    };
    // parabola through the sample-order neighbors of the extremizing index
    let refine = |i: usize, j: usize, idx: usize, seek_max: bool| {
        let v = project(i, j, points[idx]);
        if idx == 0 || idx + 1 == points.len() {
            return v;
        }
        let sign = if seek_max { 1.0 } else { -1.0 };
        sign * parabola_peak(
            0.0,
            sign * project(i, j, points[idx - 1]),
            1.0,
            sign * v,
            2.0,
            sign * project(i, j, points[idx + 1]),
        )
    };
    let mut best = f64::INFINITY;
    let mut far = 1usize;
    for i in 0..n {
        let j = (i + 1) % n;
        // advance the antipodal pointer while the distance keeps growing
        loop {
            let next = (far + 1) % n;
            if project(i, j, points[hull[next]]).abs() > project(i, j, points[hull[far]]).abs()
            {
                far = next;
            } else {
                break;
            }
        }
        let raw = project(i, j, points[hull[far]]).abs();
        let seek_max = project(i, j, points[hull[far]]) >= 0.0;
        let far_support = refine(i, j, hull[far], seek_max);
        // the near support passes through the edge endpoints; refine against
        // the arc bulging between the adjacent samples
        let near_a = refine(i, j, hull[i], !seek_max);
        let near_b = refine(i, j, hull[j], !seek_max);
        let near_support = if seek_max { near_a.min(near_b) } else { near_a.max(near_b) };
        let width_dir = (far_support - near_support).abs();
        best = best.min(width_dir.max(raw));
    }
    Ok(best)
}

/// `ell^2 * kappa`, the sagitta-scale width prediction (a circular arc of
/// constant curvature realizes it with factor 1/8).
pub fn sagitta_estimate(ell: f64, kappa: f64) -> f64 {
    ell * ell * kappa
}

/// Least-squares power-law fit in log-log coordinates.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual of `ln y` against the fit.
    pub residual: f64,
}

/// Fits `y = C * lambda^exponent` through `(lambda, y)` samples.
pub fn width_scaling_fit(samples: &[(f64, f64)]) -> Result<PowerLawFit, ArcError> {
    let mut lambdas: Vec<f64> = samples.iter().map(|s| s.0).collect();
    lambdas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    lambdas.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if lambdas.len() < 3 {
        return Err(ArcError::NotEnoughData);
    }
    let logs: Vec<(f64, f64)> = samples.iter().map(|&(l, y)| (l.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let residual = (logs
        .iter()
        .map(|p| {
            let r = p.1 - (intercept + exponent * p.0);
            r * r
        })
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(PowerLawFit { exponent, intercept, residual })
}

/// Threshold family for the large-width partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WidthThresholdForm {
    /// `lambda^(-1/2 + epsilon)`.
    HalfPower,
    /// `lambda^(-1 + epsilon)`.
    FullPower,
}

impl WidthThresholdForm {
    pub fn threshold(self, lambda: f64, epsilon: f64) -> f64 {
        match self {
            WidthThresholdForm::HalfPower => lambda.powf(-0.5 + epsilon),
            WidthThresholdForm::FullPower => lambda.powf(-1.0 + epsilon),
        }
    }
}

/// Partition of the nodal set by arc width.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionReport {
    pub threshold: f64,
    pub selected_count: usize,
    /// Total length of the selected wide arcs.
    pub selected_length: f64,
    /// Length of everything else in the nodal set.
    pub remainder_length: f64,
    pub total_length: f64,
}

/// Selects the disjoint regular arcs wider than the threshold and reports
/// the lengths on both sides of the split.
pub fn large_width_partition(
    curves: &[NodalCurve],
    period: f64,
    lambda: f64,
    form: WidthThresholdForm,
    epsilon: f64,
) -> Result<(PartitionReport, Vec<RegularArc>), ArcError> {
    let threshold = form.threshold(lambda, epsilon);
    let total_length = crate::nodal_geometry::total_nodal_length(curves, period);
    let mut selected = Vec::new();
    let mut selected_length = 0.0;
    for (curve_id, curve) in curves.iter().enumerate() {
        let arcs = segment_regular_arcs_indexed(curve, curve_id);
        // segmentation emits arcs in parameter order; verify disjointness
        for pair in arcs.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if b.source_interval.0 < a.source_interval.1 - 1e-12 {
                return Err(ArcError::OverlappingArcs {
                    a0: a.source_interval.0,
                    a1: a.source_interval.1,
                    b0: b.source_interval.0,
                    b1: b.source_interval.1,
                });
            }
        }
        for arc in arcs {
            let report = width(&arc)?;
            if report.width > threshold {
                selected_length += arc.ell();
                selected.push(arc);
            }
        }
    }
    Ok((
        PartitionReport {
            threshold,
            selected_count: selected.len(),
            selected_length,
            remainder_length: total_length - selected_length,
            total_length,
        },
        selected,
    ))
}

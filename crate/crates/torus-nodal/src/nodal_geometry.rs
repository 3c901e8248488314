//! Nodal-set extraction and the geometry of the resulting curves.
//!
//! The extraction pipeline walks a uniform grid over the fundamental domain,
//! locates sign changes on cell edges, refines each crossing with a hybrid
//! bisection/Newton solve, and chains cell segments into polylines.  Cells
//! suspected of holding a singular point (where the gradient vanishes on the
//! nodal set) are excluded from chaining, so curves terminate there and are
//! marked singular-adjacent instead of being silently joined.
//!
//! The second half of the module measures curves: implicit-formula
//! curvature, total curvature in both the inscribed-polygon and the
//! arc-length-integral form, stationary-direction avoidance intervals,
//! oscillatory integrals along arcs against normalized weight windows, and
//! the good-subinterval decomposition that removes every direction in which
//! the tangent can become orthogonal to a frequency difference.

use crate::circle_lattice::LatticeCircle;
use crate::eigenfunction::Eigenfunction;
use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NodalError {
    #[error("degenerate field: cell ({0}, {1}) has all four corner values below tolerance")]
    DegenerateField(usize, usize),
    #[error("gradient too small at ({x:.6}, {y:.6}): |grad| = {grad_norm:.3e}")]
    SingularGradient { x: f64, y: f64, grad_norm: f64 },
    #[error("rho = {rho:.3e} outside (0, ell*kappa/10 = {limit:.3e})")]
    RhoOutOfRange { rho: f64, limit: f64 },
    #[error("tangent-phase precondition fails at t = {t:.6}: |dir . tangent| = {value:.3e} <= rho = {rho:.3e}")]
    PhaseTooSlow { t: f64, value: f64, rho: f64 },
    #[error("good-subinterval coverage {covered:.6} below required {required:.6} (non-regular arc?)")]
    CoverageFailed { covered: f64, required: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A twice-differentiable scalar field on the (periodic) plane.
///
/// Implemented by eigenfunctions and by the analytic test fields, so both
/// share the extraction and measurement pipeline.
pub trait ScalarField: Sync {
    fn evaluate(&self, x: [f64; 2]) -> f64;
    fn gradient(&self, x: [f64; 2]) -> [f64; 2];
    fn hessian(&self, x: [f64; 2]) -> [[f64; 2]; 2];
    /// Edge length of the fundamental domain (treated as a torus).
    fn period(&self) -> f64 {
        1.0
    }
    /// Finest oscillation scale of the field.
    fn wavelength(&self) -> f64;
    /// Magnitude scale for relative tolerances.
    fn value_scale(&self) -> f64;
}

impl ScalarField for Eigenfunction {
    fn evaluate(&self, x: [f64; 2]) -> f64 {
        Eigenfunction::evaluate(self, x)
    }

    fn gradient(&self, x: [f64; 2]) -> [f64; 2] {
        Eigenfunction::gradient(self, x)
    }

    fn hessian(&self, x: [f64; 2]) -> [[f64; 2]; 2] {
        Eigenfunction::hessian(self, x)
    }

    fn period(&self) -> f64 {
        self.convention().period()
    }

    fn wavelength(&self) -> f64 {
        self.period() / self.lambda().max(1.0)
    }

    fn value_scale(&self) -> f64 {
        self.max_coeff_abs()
    }
}

/// Analytic test fields sharing the pipeline with eigenfunctions.
pub mod fields {
    use super::ScalarField;

    /// `(x - cx)^2 + (y - cy)^2 - r^2`: nodal set is a circle of radius r.
    #[derive(Clone, Copy, Debug)]
    pub struct CircleField {
        pub center: [f64; 2],
        pub radius: f64,
    }

    impl ScalarField for CircleField {
        fn evaluate(&self, x: [f64; 2]) -> f64 {
            let dx = x[0] - self.center[0];
            let dy = x[1] - self.center[1];
            dx * dx + dy * dy - self.radius * self.radius
        }

        fn gradient(&self, x: [f64; 2]) -> [f64; 2] {
            [2.0 * (x[0] - self.center[0]), 2.0 * (x[1] - self.center[1])]
        }

        fn hessian(&self, _x: [f64; 2]) -> [[f64; 2]; 2] {
            [[2.0, 0.0], [0.0, 2.0]]
        }

        fn wavelength(&self) -> f64 {
            self.radius
        }

        fn value_scale(&self) -> f64 {
            1.0
        }
    }

    /// `offset + cos(2 pi n x)`: no zeros once `|offset| > 1`.
    #[derive(Clone, Copy, Debug)]
    pub struct ShiftedCosine {
        pub n: i64,
        pub offset: f64,
    }

    impl ScalarField for ShiftedCosine {
        fn evaluate(&self, x: [f64; 2]) -> f64 {
            self.offset + (std::f64::consts::TAU * self.n as f64 * x[0]).cos()
        }

        fn gradient(&self, x: [f64; 2]) -> [f64; 2] {
            let w = std::f64::consts::TAU * self.n as f64;
            [-w * (w * x[0]).sin(), 0.0]
        }

        fn hessian(&self, x: [f64; 2]) -> [[f64; 2]; 2] {
            let w = std::f64::consts::TAU * self.n as f64;
            [[-w * w * (w * x[0]).cos(), 0.0], [0.0, 0.0]]
        }

        fn wavelength(&self) -> f64 {
            1.0 / self.n.unsigned_abs().max(1) as f64
        }

        fn value_scale(&self) -> f64 {
            1.0 + self.offset.abs()
        }
    }
}

/// Relative tolerance every refined nodal vertex satisfies.
pub const REFINE_TOL: f64 = 1e-10;

/// A polyline approximating one connected piece of the nodal set.
///
/// Vertices are stored in unwrapped coordinates (an integer multiple of the
/// period is added per step to keep the polyline continuous across the torus
/// seam).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodalCurve {
    pub vertices: Vec<[f64; 2]>,
    pub closed: bool,
    /// Cumulative chord length, one entry per vertex, starting at zero.
    pub arclength_cum: Vec<f64>,
    /// Signed implicit-formula curvature per vertex (NaN where the gradient
    /// guard fails, which only happens adjacent to singular cells).
    pub curvature_samples: Vec<f64>,
    /// Signed curvature at the projected midpoint of each segment (one entry
    /// per consecutive vertex pair); doubles the resolution at which the
    /// regular-arc pinching can be certified.  Empty for synthetic curves.
    pub midpoints: Vec<MidpointSample>,
    /// True when the curve terminates at a cell flagged as singular.
    pub singular_adjacent: bool,
    /// Grid step used during extraction.
    pub extraction_step: f64,
}

/// A refined point between two polyline vertices.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MidpointSample {
    pub point: [f64; 2],
    pub curvature: f64,
}

impl NodalCurve {
    /// Polyline length, including the closing chord for closed curves.
    pub fn length(&self, period: f64) -> f64 {
        let mut total = *self.arclength_cum.last().unwrap_or(&0.0);
        if self.closed && self.vertices.len() > 1 {
            let first = self.vertices[0];
            let last = *self.vertices.last().unwrap();
            let dx = wrap_delta(first[0] - last[0], period);
            let dy = wrap_delta(first[1] - last[1], period);
            total += (dx * dx + dy * dy).sqrt();
        }
        total
    }
}

/// Length of one curve (closing chord included when closed).
pub fn curve_length(curve: &NodalCurve, period: f64) -> f64 {
    curve.length(period)
}

/// Total length over a family of curves.
pub fn total_nodal_length(curves: &[NodalCurve], period: f64) -> f64 {
    curves.iter().map(|c| c.length(period)).sum()
}

fn wrap_delta(d: f64, period: f64) -> f64 {
    let mut d = d % period;
    if d > period / 2.0 {
        d -= period;
    } else if d < -period / 2.0 {
        d += period;
    }
    d
}

/// Signed implicit-curve curvature
/// `(fy^2 fxx - 2 fx fy fxy + fx^2 fyy) / |grad f|^3`.
pub fn signed_curvature_at(field: &dyn ScalarField, x: [f64; 2]) -> Result<f64, NodalError> {
    let g = field.gradient(x);
    let grad_norm = (g[0] * g[0] + g[1] * g[1]).sqrt();
    let guard = 1e-8 * field.value_scale() * gradient_scale(field);
    if grad_norm <= guard {
        return Err(NodalError::SingularGradient { x: x[0], y: x[1], grad_norm });
    }
    let h = field.hessian(x);
    let num = g[1] * g[1] * h[0][0] - 2.0 * g[0] * g[1] * h[0][1] + g[0] * g[0] * h[1][1];
    Ok(num / (grad_norm * grad_norm * grad_norm))
}

/// Curvature magnitude of the nodal line through `x`.
pub fn curvature_at(field: &dyn ScalarField, x: [f64; 2]) -> Result<f64, NodalError> {
    signed_curvature_at(field, x).map(f64::abs)
}

/// Natural gradient magnitude `2 pi / wavelength`, used to scale guards.
fn gradient_scale(field: &dyn ScalarField) -> f64 {
    std::f64::consts::TAU / field.wavelength()
}

/// Curvature of the circle through three points (`4 area / (abc)`);
/// the classical cross-check oracle for the implicit formula.
pub fn three_point_curvature(p0: [f64; 2], p1: [f64; 2], p2: [f64; 2]) -> f64 {
    let a = ((p1[0] - p0[0]).powi(2) + (p1[1] - p0[1]).powi(2)).sqrt();
    let b = ((p2[0] - p1[0]).powi(2) + (p2[1] - p1[1]).powi(2)).sqrt();
    let c = ((p2[0] - p0[0]).powi(2) + (p2[1] - p0[1]).powi(2)).sqrt();
    let twice_area =
        ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0])).abs();
    2.0 * twice_area / (a * b * c)
}

/// Newton projection of a point onto the nodal set along the gradient.
pub fn project_to_nodal_set(field: &dyn ScalarField, start: [f64; 2]) -> Option<[f64; 2]> {
    let tol = REFINE_TOL * field.value_scale();
    let mut x = start;
    for _ in 0..50 {
        let v = field.evaluate(x);
        if v.abs() <= tol {
            return Some(x);
        }
        let g = field.gradient(x);
        let g2 = g[0] * g[0] + g[1] * g[1];
        if g2 == 0.0 {
            return None;
        }
        x = [x[0] - v * g[0] / g2, x[1] - v * g[1] / g2];
    }
    None
}

// --- marching-squares extraction -------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum EdgeKind {
    Horizontal,
    Vertical,
}

type EdgeId = (EdgeKind, usize, usize);

/// Extracts the nodal set as refined polylines.
///
/// The grid step is at most `wavelength / cells_per_wavelength`; edge
/// crossings are refined until `|phi| <= 1e-10 * value_scale`.  Cells where
/// a singular point is detected are left out of the chaining, so the curves
/// that would pass through them end there, flagged singular-adjacent.
pub fn extract_nodal_set(
    field: &dyn ScalarField,
    cells_per_wavelength: u32,
) -> Result<Vec<NodalCurve>, NodalError> {
    if cells_per_wavelength < 8 {
        return Err(NodalError::InvalidParameter(
            "cells_per_wavelength must be at least 8".into(),
        ));
    }
    let period = field.period();
    let n = ((period / field.wavelength()) * cells_per_wavelength as f64).ceil() as usize;
    let n = n.clamp(8, 8192);
    let h = period / n as f64;
    let scale = field.value_scale();

    // corner values, row-major, wrapped indices
    let corners: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % n, idx / n);
            field.evaluate([i as f64 * h, j as f64 * h])
        })
        .collect();
    let value = |i: usize, j: usize| corners[(j % n) * n + (i % n)];
    let positive = |v: f64| v > 0.0;

    // degenerate-cell precondition
    for j in 0..n {
        for i in 0..n {
            let vs = [value(i, j), value(i + 1, j), value(i + 1, j + 1), value(i, j + 1)];
            if vs.iter().all(|v| v.abs() < 1e-13 * scale) {
                return Err(NodalError::DegenerateField(i, j));
            }
        }
    }

    // singular cells: cells within one step of a detected singular point
    let singular = singular_points_impl(field, n, &corners);
    let mut singular_cells: HashSet<(usize, usize)> = HashSet::new();
    for sp in &singular {
        let ci = (sp.position[0] / h).floor() as i64;
        let cj = (sp.position[1] / h).floor() as i64;
        for dj in -1..=1i64 {
            for di in -1..=1i64 {
                let i = (ci + di).rem_euclid(n as i64) as usize;
                let j = (cj + dj).rem_euclid(n as i64) as usize;
                singular_cells.insert((i, j));
            }
        }
    }

    // refined crossing per sign-change edge
    let mut edge_vertex: HashMap<EdgeId, usize> = HashMap::new();
    let mut vertices: Vec<[f64; 2]> = Vec::new();
    let mut resolve_edge = |kind: EdgeKind, i: usize, j: usize, vertices: &mut Vec<[f64; 2]>| {
        let id: EdgeId = (kind, i % n, j % n);
        if let Some(&v) = edge_vertex.get(&id) {
            return v;
        }
        let (p0, p1) = match kind {
            EdgeKind::Horizontal => {
                ([id.1 as f64 * h, id.2 as f64 * h], [(id.1 + 1) as f64 * h, id.2 as f64 * h])
            }
            EdgeKind::Vertical => {
                ([id.1 as f64 * h, id.2 as f64 * h], [id.1 as f64 * h, (id.2 + 1) as f64 * h])
            }
        };
        let root = refine_edge_root(field, p0, p1, scale);
        vertices.push(root);
        edge_vertex.insert(id, vertices.len() - 1);
        vertices.len() - 1
    };

    // segments per cell
    let mut segments: Vec<(usize, usize)> = Vec::new();
    let mut endpoint_open: HashSet<usize> = HashSet::new(); // vertices bordering singular cells
    for j in 0..n {
        for i in 0..n {
            let s00 = positive(value(i, j));
            let s10 = positive(value(i + 1, j));
            let s11 = positive(value(i + 1, j + 1));
            let s01 = positive(value(i, j + 1));
            if s00 == s10 && s10 == s11 && s11 == s01 {
                continue;
            }
            let bottom = (EdgeKind::Horizontal, i, j);
            let top = (EdgeKind::Horizontal, i, j + 1);
            let left = (EdgeKind::Vertical, i, j);
            let right = (EdgeKind::Vertical, i + 1, j);
            let mut cell_segments: Vec<(EdgeId, EdgeId)> = Vec::new();
            match (s00, s10, s11, s01) {
                // one corner isolated
                (a, b, c, d) if a != b && a != d && b == c && c == d => {
                    cell_segments.push((bottom, left))
                }
                (a, b, c, d) if b != a && b != c && a == c && c == d => {
                    cell_segments.push((bottom, right))
                }
                (a, b, c, d) if c != b && c != d && a == b && b == d => {
                    cell_segments.push((top, right))
                }
                (a, b, c, d) if d != a && d != c && a == b && b == c => {
                    cell_segments.push((top, left))
                }
                // split along a band: equal columns give a vertical crossing,
                // equal rows a horizontal one
                (a, b, c, d) if a == d && b == c && a != b => cell_segments.push((bottom, top)),
                (a, b, c, d) if a == b && c == d && a != c => cell_segments.push((left, right)),
                // saddle: disambiguate with the center sign
                (a, b, c, d) if a == c && b == d && a != b => {
                    let center =
                        field.evaluate([(i as f64 + 0.5) * h, (j as f64 + 0.5) * h]);
                    if positive(center) == a {
                        cell_segments.push((bottom, right));
                        cell_segments.push((top, left));
                    } else {
                        cell_segments.push((bottom, left));
                        cell_segments.push((top, right));
                    }
                }
                _ => unreachable!("all mixed-sign cases covered"),
            }
            let is_singular_cell = singular_cells.contains(&(i, j));
            for (ea, eb) in cell_segments {
                let va = resolve_edge(ea.0, ea.1, ea.2, &mut vertices);
                let vb = resolve_edge(eb.0, eb.1, eb.2, &mut vertices);
                if is_singular_cell {
                    // drop the connection; remember these crossings abut a
                    // singular cell
                    endpoint_open.insert(va);
                    endpoint_open.insert(vb);
                } else {
                    segments.push((va, vb));
                }
            }
        }
    }

    // chain segments (every vertex has degree <= 2)
    let mut adjacency: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (sid, &(a, b)) in segments.iter().enumerate() {
        adjacency.entry(a).or_default().push((sid, b));
        adjacency.entry(b).or_default().push((sid, a));
    }
    let mut segment_used = vec![false; segments.len()];
    let mut curves = Vec::new();
    // open paths first (their ends have degree one)
    let mut starts: Vec<usize> =
        adjacency.iter().filter(|(_, inc)| inc.len() == 1).map(|(&v, _)| v).collect();
    starts.sort();
    for &start in &starts {
        if adjacency[&start].iter().all(|&(sid, _)| segment_used[sid]) {
            continue;
        }
        let chain = walk_chain(start, &adjacency, &mut segment_used);
        curves.push((chain, false));
    }
    // remaining segments form cycles
    let mut cycle_starts: Vec<usize> = (0..segments.len()).collect();
    cycle_starts.sort_by_key(|&sid| segments[sid]);
    for sid in cycle_starts {
        if segment_used[sid] {
            continue;
        }
        let chain = walk_chain(segments[sid].0, &adjacency, &mut segment_used);
        curves.push((chain, true));
    }

    let mut out = Vec::new();
    for (chain, closed) in curves {
        if chain.len() < 2 {
            continue;
        }
        let singular_adjacent = !closed
            && (endpoint_open.contains(&chain[0])
                || endpoint_open.contains(chain.last().unwrap()));
        // unwrap across the torus seam
        let mut pts: Vec<[f64; 2]> = Vec::with_capacity(chain.len());
        let mut prev = vertices[chain[0]];
        pts.push(prev);
        for &v in &chain[1..] {
            let raw = vertices[v];
            let next = [
                prev[0] + wrap_delta(raw[0] - prev[0], period),
                prev[1] + wrap_delta(raw[1] - prev[1], period),
            ];
            pts.push(next);
            prev = next;
        }
        // enforce minimum spacing h/4 (marching can clip cell corners)
        let mut cleaned: Vec<[f64; 2]> = vec![pts[0]];
        for p in pts.iter().skip(1) {
            let last = cleaned.last().unwrap();
            let d = ((p[0] - last[0]).powi(2) + (p[1] - last[1]).powi(2)).sqrt();
            if d >= h / 4.0 {
                cleaned.push(*p);
            }
        }
        if closed && cleaned.len() > 2 {
            let first = cleaned[0];
            let last = *cleaned.last().unwrap();
            let dx = wrap_delta(first[0] - last[0], period);
            let dy = wrap_delta(first[1] - last[1], period);
            if (dx * dx + dy * dy).sqrt() < h / 4.0 {
                cleaned.pop();
            }
        }
        if cleaned.len() < 2 {
            continue;
        }
        let mut cum = vec![0.0];
        for w in cleaned.windows(2) {
            let d = ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt();
            cum.push(cum.last().unwrap() + d);
        }
        let curvature_samples: Vec<f64> = cleaned
            .iter()
            .map(|&p| signed_curvature_at(field, p).unwrap_or(f64::NAN))
            .collect();
        let midpoints: Vec<MidpointSample> = cleaned
            .windows(2)
            .map(|w| {
                let guess = [(w[0][0] + w[1][0]) / 2.0, (w[0][1] + w[1][1]) / 2.0];
                match project_to_nodal_set(field, guess) {
                    Some(p) => MidpointSample {
                        point: p,
                        curvature: signed_curvature_at(field, p).unwrap_or(f64::NAN),
                    },
                    None => MidpointSample { point: guess, curvature: f64::NAN },
                }
            })
            .collect();
        out.push(NodalCurve {
            vertices: cleaned,
            closed,
            arclength_cum: cum,
            curvature_samples,
            midpoints,
            singular_adjacent,
            extraction_step: h,
        });
    }
    Ok(out)
}

fn walk_chain(
    start: usize,
    adjacency: &HashMap<usize, Vec<(usize, usize)>>,
    segment_used: &mut [bool],
) -> Vec<usize> {
    let mut chain = vec![start];
    let mut current = start;
    loop {
        let next = adjacency
            .get(&current)
            .and_then(|inc| inc.iter().find(|&&(sid, _)| !segment_used[sid]).copied());
        match next {
            Some((sid, other)) => {
                segment_used[sid] = true;
                chain.push(other);
                current = other;
            }
            None => break,
        }
    }
    // for cycles the walk re-reaches the start; drop the duplicate
    if chain.len() > 1 && chain.first() == chain.last() {
        chain.pop();
    }
    chain
}

/// Hybrid bisection/Newton root along a grid edge, refined until
/// `|phi| <= REFINE_TOL * scale`.
fn refine_edge_root(field: &dyn ScalarField, p0: [f64; 2], p1: [f64; 2], scale: f64) -> [f64; 2] {
    let tol = REFINE_TOL * scale;
    let v0 = field.evaluate(p0);
    let v1 = field.evaluate(p1);
    let at = |t: f64| [p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1])];
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut vlo = v0;
    if vlo == 0.0 {
        return p0;
    }
    if v1 == 0.0 {
        return p1;
    }
    // secant initial guess
    let mut t = vlo / (vlo - v1);
    let dir = [p1[0] - p0[0], p1[1] - p0[1]];
    for _ in 0..80 {
        let x = at(t);
        let v = field.evaluate(x);
        if v.abs() <= tol {
            return x;
        }
        // maintain the bracket
        if (v > 0.0) == (vlo > 0.0) {
            lo = t;
            vlo = v;
        } else {
            hi = t;
        }
        // Newton step along the edge, bisection fallback
        let g = field.gradient(x);
        let dv = g[0] * dir[0] + g[1] * dir[1];
        let newton = t - v / dv;
        t = if dv != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    at(0.5 * (lo + hi))
}

// --- singular points ------------------------------------------------------------

/// A point where the field and its gradient vanish together; nodal branches
/// cross here in an equiangular system.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingularPoint {
    pub position: [f64; 2],
    /// Number of nodal branches through the point (half the sign changes on
    /// a small surrounding circle).
    pub branches: usize,
}

/// Joint-Newton detection of singular points on an `n x n` grid.
pub fn singular_points(field: &dyn ScalarField, grid_n: usize) -> Vec<SingularPoint> {
    let period = field.period();
    let h = period / grid_n as f64;
    let corners: Vec<f64> = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % grid_n, idx / grid_n);
            field.evaluate([i as f64 * h, j as f64 * h])
        })
        .collect();
    singular_points_impl(field, grid_n, &corners)
}

fn singular_points_impl(field: &dyn ScalarField, n: usize, corners: &[f64]) -> Vec<SingularPoint> {
    let period = field.period();
    let h = period / n as f64;
    let scale = field.value_scale();
    let gscale = scale * gradient_scale(field);
    // generous screen at the cell scale; Newton decides
    let phi_screen = 40.0 * scale * (h / field.wavelength()).powi(2);
    let grad_screen = 40.0 * gscale * (h / field.wavelength());

    let candidates: Vec<[f64; 2]> = (0..n * n)
        .into_par_iter()
        .filter_map(|idx| {
            let (i, j) = (idx % n, idx / n);
            if corners[j * n + i].abs() > phi_screen {
                return None;
            }
            let c = [(i as f64 + 0.5) * h, (j as f64 + 0.5) * h];
            let g = field.gradient(c);
            let v = field.evaluate(c);
            if v.abs() <= phi_screen && (g[0] * g[0] + g[1] * g[1]).sqrt() <= grad_screen {
                Some(c)
            } else {
                None
            }
        })
        .collect();

    let tol_phi = 1e-9 * scale;
    let tol_grad = 1e-7 * gscale;
    let mut found: Vec<[f64; 2]> = Vec::new();
    for seed in candidates {
        if let Some(p) = newton_critical_point(field, seed, 2.5 * h) {
            let v = field.evaluate(p).abs();
            let g = field.gradient(p);
            let gn = (g[0] * g[0] + g[1] * g[1]).sqrt();
            if v <= tol_phi && gn <= tol_grad {
                let p = [p[0].rem_euclid(period), p[1].rem_euclid(period)];
                let dup = found.iter().any(|q| {
                    let dx = wrap_delta(p[0] - q[0], period);
                    let dy = wrap_delta(p[1] - q[1], period);
                    (dx * dx + dy * dy).sqrt() < h
                });
                if !dup {
                    found.push(p);
                }
            }
        }
    }
    found.sort_by(|a, b| (a[1], a[0]).partial_cmp(&(b[1], b[0])).unwrap());
    found
        .into_iter()
        .map(|position| {
            // branch count: sign alternations of phi on a small circle
            let r = 0.75 * h;
            let m = 256;
            let mut changes = 0usize;
            let mut prev = field.evaluate([position[0] + r, position[1]]) > 0.0;
            for k in 1..=m {
                let a = std::f64::consts::TAU * k as f64 / m as f64;
                let s =
                    field.evaluate([position[0] + r * a.cos(), position[1] + r * a.sin()]) > 0.0;
                if s != prev {
                    changes += 1;
                }
                prev = s;
            }
            SingularPoint { position, branches: changes / 2 }
        })
        .collect()
}

/// Newton on `grad phi = 0` with the Hessian as Jacobian.
///
/// The naive system `(phi, d phi) = 0` is degenerate at the target (its
/// gradient row vanishes exactly at a singular point), while a crossing is a
/// nondegenerate saddle of `phi`, so the critical-point system converges
/// quadratically; the caller filters by `|phi|` afterwards.
fn newton_critical_point(
    field: &dyn ScalarField,
    seed: [f64; 2],
    max_excursion: f64,
) -> Option<[f64; 2]> {
    let mut x = seed;
    for _ in 0..40 {
        let g = field.gradient(x);
        let h = field.hessian(x);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if det.abs() < 1e-200 {
            return None;
        }
        let dx = (g[0] * h[1][1] - g[1] * h[0][1]) / det;
        let dy = (g[1] * h[0][0] - g[0] * h[1][0]) / det;
        x = [x[0] - dx, x[1] - dy];
        if (x[0] - seed[0]).abs() > max_excursion || (x[1] - seed[1]).abs() > max_excursion {
            return None;
        }
        if dx.abs() + dy.abs() < 1e-15 * field.period() {
            break;
        }
    }
    Some(x)
}

// --- total curvature ---------------------------------------------------------------

/// Sum of absolute exterior turning angles of a polyline (closed polygons
/// include the wrap-around angles).
pub fn total_curvature_polygon(points: &[[f64; 2]], closed: bool) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let dirs: Vec<[f64; 2]> = if closed {
        (0..points.len())
            .map(|i| {
                let a = points[i];
                let b = points[(i + 1) % points.len()];
                [b[0] - a[0], b[1] - a[1]]
            })
            .collect()
    } else {
        points.windows(2).map(|w| [w[1][0] - w[0][0], w[1][1] - w[0][1]]).collect()
    };
    let mut total = 0.0;
    let count = if closed { dirs.len() } else { dirs.len() - 1 };
    for i in 0..count {
        let a = dirs[i];
        let b = dirs[(i + 1) % dirs.len()];
        let cross = a[0] * b[1] - a[1] * b[0];
        let dot = a[0] * b[0] + a[1] * b[1];
        total += cross.atan2(dot).abs();
    }
    total
}

/// `integral |kappa| ds` over a refined curve, by the trapezoid rule in the
/// vertex curvatures with a chord-to-arc correction; converges to the
/// polygon form under refinement.
pub fn total_curvature_integral(
    field: &dyn ScalarField,
    curve: &NodalCurve,
) -> Result<f64, NodalError> {
    let pts = &curve.vertices;
    if pts.len() < 2 {
        return Ok(0.0);
    }
    let kappa: Vec<f64> =
        pts.iter().map(|&p| curvature_at(field, p)).collect::<Result<_, _>>()?;
    let mut total = 0.0;
    let count = if curve.closed { pts.len() } else { pts.len() - 1 };
    for i in 0..count {
        let a = pts[i];
        let b = pts[(i + 1) % pts.len()];
        let chord = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
        let k = 0.5 * (kappa[i] + kappa[(i + 1) % pts.len()]);
        // chord -> arc: s = chord * (1 + (kappa * chord)^2 / 24 + ...)
        let ds = chord * (1.0 + (k * chord) * (k * chord) / 24.0);
        total += k * ds;
    }
    Ok(total)
}

// --- weight windows -----------------------------------------------------------------

/// Shape of a normalized weight window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindowShape {
    /// `exp(-1/(1-u^2))` bump, infinitely smooth, compactly supported.
    SmoothBump,
    /// Piecewise-linear tent; its derivative has bounded variation, giving
    /// exact quadratic Fourier decay, handy for slope scans.
    Triangle,
}

/// A nonnegative weight with unit integral supported on `[t0, t1]`, with
/// total variation of the derivative a fixed multiple of `1 / length`.
#[derive(Clone, Copy, Debug)]
pub struct WeightWindow {
    t0: f64,
    t1: f64,
    shape: WindowShape,
    bump_norm: f64,
}

impl WeightWindow {
    pub fn new(t0: f64, t1: f64, shape: WindowShape) -> Result<Self, NodalError> {
        if !(t1 > t0) {
            return Err(NodalError::InvalidParameter("window needs t1 > t0".into()));
        }
        // integral of exp(-1/(1-u^2)) over (-1, 1) by Simpson; only the bump
        // shape needs it
        let bump_norm = if shape == WindowShape::SmoothBump {
            let m = 4000;
            let f = |u: f64| if u.abs() >= 1.0 { 0.0 } else { (-1.0 / (1.0 - u * u)).exp() };
            let h = 2.0 / m as f64;
            let mut acc = 0.0;
            for k in 0..m {
                let a = -1.0 + k as f64 * h;
                acc += (f(a) + 4.0 * f(a + h / 2.0) + f(a + h)) * h / 6.0;
            }
            acc
        } else {
            1.0
        };
        Ok(Self { t0, t1, shape, bump_norm })
    }

    pub fn support(&self) -> (f64, f64) {
        (self.t0, self.t1)
    }

    pub fn support_length(&self) -> f64 {
        self.t1 - self.t0
    }

    pub fn value(&self, t: f64) -> f64 {
        let len = self.support_length();
        let u = 2.0 * (t - self.t0) / len - 1.0;
        if u.abs() >= 1.0 {
            return 0.0;
        }
        match self.shape {
            WindowShape::SmoothBump => (-1.0 / (1.0 - u * u)).exp() / (self.bump_norm * len / 2.0),
            WindowShape::Triangle => 2.0 / len * (1.0 - u.abs()),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let len = self.support_length();
        let u = 2.0 * (t - self.t0) / len - 1.0;
        if u.abs() >= 1.0 {
            return 0.0;
        }
        match self.shape {
            WindowShape::SmoothBump => {
                let w = self.value(t);
                let denom = 1.0 - u * u;
                w * (-2.0 * u / (denom * denom)) * (2.0 / len)
            }
            WindowShape::Triangle => {
                if u < 0.0 {
                    4.0 / (len * len)
                } else {
                    -4.0 / (len * len)
                }
            }
        }
    }

    /// `integral |omega'|`, twice the peak for these unimodal shapes.
    pub fn derivative_total_variation(&self) -> f64 {
        2.0 * self.value(0.5 * (self.t0 + self.t1))
    }

    /// Simpson check of the unit integral.
    pub fn integral(&self, subdivisions: usize) -> f64 {
        let h = self.support_length() / subdivisions as f64;
        let mut acc = 0.0;
        for k in 0..subdivisions {
            let a = self.t0 + k as f64 * h;
            acc += (self.value(a) + 4.0 * self.value(a + h / 2.0) + self.value(a + h)) * h / 6.0;
        }
        acc
    }
}

// --- parametrized arcs ----------------------------------------------------------------

/// Arc-length-parametrized curve segment.
pub trait ArcParametrization: Sync {
    fn length(&self) -> f64;
    fn point(&self, t: f64) -> [f64; 2];
    /// Unit tangent.
    fn tangent(&self, t: f64) -> [f64; 2];
    /// Curvature magnitude.
    fn curvature(&self, t: f64) -> f64;

    fn min_curvature(&self) -> f64 {
        let n = 512;
        (0..=n)
            .map(|k| self.curvature(self.length() * k as f64 / n as f64))
            .fold(f64::INFINITY, f64::min)
    }

    fn max_curvature(&self) -> f64 {
        let n = 512;
        (0..=n)
            .map(|k| self.curvature(self.length() * k as f64 / n as f64))
            .fold(0.0, f64::max)
    }
}

/// Circular arc with exact parametrization; the closed-form oracle for the
/// oscillatory-integral and avoidance-interval checks.
#[derive(Clone, Copy, Debug)]
pub struct CircularArc {
    pub center: [f64; 2],
    pub radius: f64,
    pub start_angle: f64,
    /// +1 for counterclockwise, -1 for clockwise.
    pub orientation: f64,
    pub arc_length: f64,
}

impl ArcParametrization for CircularArc {
    fn length(&self) -> f64 {
        self.arc_length
    }

    fn point(&self, t: f64) -> [f64; 2] {
        let a = self.start_angle + self.orientation * t / self.radius;
        [self.center[0] + self.radius * a.cos(), self.center[1] + self.radius * a.sin()]
    }

    fn tangent(&self, t: f64) -> [f64; 2] {
        let a = self.start_angle + self.orientation * t / self.radius;
        [-self.orientation * a.sin(), self.orientation * a.cos()]
    }

    fn curvature(&self, _t: f64) -> f64 {
        1.0 / self.radius
    }
}

/// Straight segment (zero curvature); used by the transform oracles.
#[derive(Clone, Copy, Debug)]
pub struct LineArc {
    pub start: [f64; 2],
    pub direction: [f64; 2],
    pub arc_length: f64,
}

impl ArcParametrization for LineArc {
    fn length(&self) -> f64 {
        self.arc_length
    }

    fn point(&self, t: f64) -> [f64; 2] {
        [self.start[0] + t * self.direction[0], self.start[1] + t * self.direction[1]]
    }

    fn tangent(&self, _t: f64) -> [f64; 2] {
        self.direction
    }

    fn curvature(&self, _t: f64) -> f64 {
        0.0
    }
}

/// The near-orthogonality window of one direction along an arc.
#[derive(Clone, Copy, Debug)]
pub struct AvoidanceInterval {
    /// `{t : |dir . tangent(t)| < rho}`, a single interval (possibly empty).
    pub interval: Option<(f64, f64)>,
    /// The closed-form bound `2 rho / (kappa sqrt(1 - rho^2))`.
    pub length_bound: f64,
}

/// Computes the set where a unit direction is nearly orthogonal to the
/// tangent.  The total turning of a regular arc is under one radian, so the
/// set is one interval; its length is at most `2 rho / (kappa sqrt(1-rho^2))`.
pub fn direction_avoidance_interval(
    arc: &dyn ArcParametrization,
    direction: [f64; 2],
    rho: f64,
) -> Result<AvoidanceInterval, NodalError> {
    let ell = arc.length();
    let kappa = arc.min_curvature();
    let limit = ell * kappa / 10.0;
    if !(rho > 0.0 && rho < limit) {
        return Err(NodalError::RhoOutOfRange { rho, limit });
    }
    let norm = (direction[0] * direction[0] + direction[1] * direction[1]).sqrt();
    let dir = [direction[0] / norm, direction[1] / norm];
    let f = |t: f64| {
        let tang = arc.tangent(t);
        dir[0] * tang[0] + dir[1] * tang[1]
    };
    let length_bound = 2.0 * rho / (kappa * (1.0 - rho * rho).sqrt());

    // the phase f = cos(angle) crosses zero at most once on a regular arc
    let n = 4096;
    let h = ell / n as f64;
    let mut crossing: Option<(f64, f64)> = None;
    let mut prev = f(0.0);
    for k in 1..=n {
        let t = k as f64 * h;
        let v = f(t);
        if prev == 0.0 || (prev > 0.0) != (v > 0.0) {
            crossing = Some(((k - 1) as f64 * h, t));
            break;
        }
        prev = v;
    }
    let solve_abs = |mut lo: f64, mut hi: f64, target: f64| -> f64 {
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if (f(mid).abs() - target) * (f(lo).abs() - target) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let interval = if let Some((blo, bhi)) = crossing {
        // locate the zero, then walk outward to |f| = rho
        let mut lo = blo;
        let mut hi = bhi;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == (f(lo) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t_zero = 0.5 * (lo + hi);
        let mut left = 0.0;
        let mut found_left = false;
        let mut t = t_zero;
        while t > 0.0 {
            t = (t - h).max(0.0);
            if f(t).abs() >= rho {
                left = solve_abs(t, t_zero, rho);
                found_left = true;
                break;
            }
        }
        if !found_left {
            left = 0.0;
        }
        let mut right = ell;
        let mut found_right = false;
        let mut t = t_zero;
        while t < ell {
            t = (t + h).min(ell);
            if f(t).abs() >= rho {
                right = solve_abs(t_zero, t, rho);
                found_right = true;
                break;
            }
        }
        if !found_right {
            right = ell;
        }
        Some((left, right))
    } else {
        // no zero: the window exists only if an endpoint dips below rho
        if f(0.0).abs() < rho {
            Some((0.0, solve_abs(0.0, ell, rho).min(ell)))
        } else if f(ell).abs() < rho {
            Some((solve_abs(0.0, ell, rho), ell))
        } else {
            None
        }
    };
    if let Some((a, b)) = interval {
        debug_assert!(b >= a);
        debug_assert!(
            b - a <= length_bound * (1.0 + 1e-6) + 2.0 * h,
            "avoidance interval longer than its bound"
        );
    }
    Ok(AvoidanceInterval { interval, length_bound })
}

/// Oscillatory integral of `e(xi . gamma(t))` against a weight window.
#[derive(Clone, Copy, Debug)]
pub struct OscillatoryIntegral {
    pub value: Complex64,
    /// `(1/(rho |xi|)) (1/ell + kappa/rho)` with `ell` the window support
    /// length and `kappa` the arc's maximum curvature.
    pub bound_factor: f64,
    /// `|value| / bound_factor`: the constant this case requires.
    pub required_constant: f64,
}

/// High-accuracy Simpson quadrature of `integral e(xi . gamma(t)) omega(t) dt`,
/// with the non-stationarity precondition `|xi_hat . tangent| > rho` checked
/// on the window support.
pub fn arc_fourier_integral(
    arc: &dyn ArcParametrization,
    window: &WeightWindow,
    xi: [f64; 2],
    rho: f64,
) -> Result<OscillatoryIntegral, NodalError> {
    let (t0, t1) = window.support();
    if t0 < -1e-12 || t1 > arc.length() + 1e-12 {
        return Err(NodalError::InvalidParameter(
            "window support must lie inside the arc parameter domain".into(),
        ));
    }
    let xi_norm = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
    if xi_norm == 0.0 {
        return Ok(OscillatoryIntegral {
            value: Complex64::new(window.integral(2000), 0.0),
            bound_factor: f64::INFINITY,
            required_constant: 0.0,
        });
    }
    let xi_hat = [xi[0] / xi_norm, xi[1] / xi_norm];
    // precondition: the phase never stalls on the support
    let checks = 2048;
    if rho > 0.0 {
        for k in 0..=checks {
            let t = t0 + (t1 - t0) * k as f64 / checks as f64;
            let tang = arc.tangent(t);
            let v = (xi_hat[0] * tang[0] + xi_hat[1] * tang[1]).abs();
            if v <= rho {
                return Err(NodalError::PhaseTooSlow { t, value: v, rho });
            }
        }
    }
    let len = t1 - t0;
    let n = ((25.0 * xi_norm * len).ceil() as usize).max(2000);
    let h = len / n as f64;
    let integrand = |t: f64| {
        let p = arc.point(t);
        let phase = std::f64::consts::TAU * (xi[0] * p[0] + xi[1] * p[1]);
        Complex64::new(phase.cos(), phase.sin()) * window.value(t)
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let a = t0 + k as f64 * h;
        acc += (integrand(a) + integrand(a + h) + integrand(a + h / 2.0) * 4.0) * (h / 6.0);
    }
    let kappa = arc.max_curvature();
    let bound_factor = (1.0 / (rho * xi_norm)) * (1.0 / len + kappa / rho);
    let required_constant =
        if bound_factor.is_finite() && bound_factor > 0.0 { acc.norm() / bound_factor } else { 0.0 };
    Ok(OscillatoryIntegral { value: acc, bound_factor, required_constant })
}

/// Decomposition of an arc into direction-safe subintervals.
#[derive(Clone, Debug)]
pub struct GoodSubintervals {
    pub intervals: Vec<(f64, f64)>,
    pub coverage: f64,
    pub rho: f64,
    pub directions: usize,
}

/// Removes the avoidance window of every normalized frequency-difference
/// direction with `rho = c0 kappa ell / r2^2` and keeps the remaining
/// subintervals longer than `c0 ell / r2^2`.  The survivors cover at least a
/// `1 - 2 c0` fraction of the arc; anything less signals a non-regular input
/// and fails loudly.
pub fn good_subintervals(
    arc: &dyn ArcParametrization,
    circle: &LatticeCircle,
    c0: f64,
) -> Result<GoodSubintervals, NodalError> {
    if !(c0 > 0.0 && c0 < 0.01) {
        return Err(NodalError::InvalidParameter("c0 must lie in (0, 1/100)".into()));
    }
    let ell = arc.length();
    let m = circle.r2();
    if m < 2 {
        return Ok(GoodSubintervals {
            intervals: vec![(0.0, ell)],
            coverage: ell,
            rho: 0.0,
            directions: 0,
        });
    }
    let kappa = arc.min_curvature();
    let m2 = (m * m) as f64;
    let rho = c0 * kappa * ell / m2;

    // primitive integer difference directions, deduped up to sign
    let pts = circle.points();
    let mut dirs: HashSet<(i64, i64)> = HashSet::new();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let (mut da, mut db) = (pts[i].a - pts[j].a, pts[i].b - pts[j].b);
            let g = da.gcd(&db);
            if g != 0 {
                da /= g;
                db /= g;
            }
            if db < 0 || (db == 0 && da < 0) {
                da = -da;
                db = -db;
            }
            dirs.insert((da, db));
        }
    }
    let mut dirs: Vec<(i64, i64)> = dirs.into_iter().collect();
    dirs.sort();

    let mut removed: Vec<(f64, f64)> = Vec::new();
    for &(da, db) in &dirs {
        let norm = ((da * da + db * db) as f64).sqrt();
        let avoid = direction_avoidance_interval(arc, [da as f64 / norm, db as f64 / norm], rho)?;
        if let Some(seg) = avoid.interval {
            removed.push(seg);
        }
    }
    removed.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // merge and subtract from [0, ell]
    let mut kept: Vec<(f64, f64)> = Vec::new();
    let mut cursor = 0.0f64;
    for &(a, b) in &removed {
        if a > cursor {
            kept.push((cursor, a));
        }
        cursor = cursor.max(b);
    }
    if cursor < ell {
        kept.push((cursor, ell));
    }
    // margin so the direction bound is strict on the kept set
    let margin = 1e-9 * ell;
    let kept: Vec<(f64, f64)> = kept
        .into_iter()
        .map(|(a, b)| (if a > 0.0 { a + margin } else { a }, if b < ell { b - margin } else { b }))
        .filter(|&(a, b)| b - a > c0 * ell / m2)
        .collect();
    let coverage: f64 = kept.iter().map(|&(a, b)| b - a).sum();
    if coverage <= (1.0 - 2.0 * c0) * ell {
        return Err(NodalError::CoverageFailed {
            covered: coverage,
            required: (1.0 - 2.0 * c0) * ell,
        });
    }
    Ok(GoodSubintervals { intervals: kept, coverage, rho, directions: dirs.len() })
}

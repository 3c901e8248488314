//! Deterministic SVG rendering of nodal curves.
//!
//! One path per curve, the fundamental domain as the view box, fixed
//! six-decimal coordinate formatting; identical inputs produce
//! byte-identical files.  Singular-adjacent curves are drawn dashed in a
//! distinct color.

use crate::nodal_geometry::NodalCurve;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io;
use std::path::Path;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SvgOptions {
    pub size_px: u32,
    /// Stroke width as a fraction of the domain edge.
    pub stroke_width_frac: f64,
    pub background: String,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self { size_px: 800, stroke_width_frac: 0.0025, background: "#ffffff".into() }
    }
}

/// Renders the curves into an SVG document string.
pub fn render_nodal_svg(curves: &[NodalCurve], period: f64, options: &SvgOptions) -> String {
    let mut out = String::new();
    let sw = period * options.stroke_width_frac;
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{px}" height="{px}" viewBox="0 0 {p:.6} {p:.6}">"#,
        px = options.size_px,
        p = period
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{p:.6}" height="{p:.6}" fill="{bg}"/>"#,
        p = period,
        bg = options.background
    );
    // flip y so the plot uses mathematical orientation
    let _ = writeln!(out, r#"<g transform="translate(0,{p:.6}) scale(1,-1)">"#, p = period);
    for curve in curves {
        let (stroke, dash) = if curve.singular_adjacent {
            ("#c0392b", r#" stroke-dasharray="0.02,0.012""#)
        } else {
            ("#1a1a1a", "")
        };
        for piece in wrap_into_domain(&curve.vertices, period, curve.closed) {
            let mut d = String::new();
            for (i, p) in piece.iter().enumerate() {
                let cmd = if i == 0 { 'M' } else { 'L' };
                let _ = write!(d, "{}{:.6} {:.6} ", cmd, p[0], p[1]);
            }
            let _ = writeln!(
                out,
                r#"<path d="{d}" fill="none" stroke="{stroke}" stroke-width="{sw:.6}"{dash}/>"#,
                d = d.trim_end(),
            );
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

/// Writes the rendering to a file.
pub fn write_nodal_svg(
    curves: &[NodalCurve],
    period: f64,
    path: &Path,
    options: &SvgOptions,
) -> io::Result<()> {
    std::fs::write(path, render_nodal_svg(curves, period, options))
}

/// Re-wraps an unwrapped polyline into the fundamental domain, splitting it
/// where it crosses the seam.
fn wrap_into_domain(vertices: &[[f64; 2]], period: f64, closed: bool) -> Vec<Vec<[f64; 2]>> {
    if vertices.is_empty() {
        return Vec::new();
    }
    let wrap = |p: [f64; 2]| [p[0].rem_euclid(period), p[1].rem_euclid(period)];
    let mut pieces = Vec::new();
    let mut piece: Vec<[f64; 2]> = vec![wrap(vertices[0])];
    let mut extended: Vec<[f64; 2]> = vertices.to_vec();
    if closed {
        extended.push(vertices[0]);
    }
    for w in extended.windows(2) {
        let a = wrap(w[0]);
        let raw_step = [w[1][0] - w[0][0], w[1][1] - w[0][1]];
        let b = [a[0] + raw_step[0], a[1] + raw_step[1]];
        if b[0] < 0.0 || b[0] > period || b[1] < 0.0 || b[1] > period {
            // crosses the seam: finish this piece at b, then re-enter with
            // both endpoints shifted so the visible part starts at the seam
            piece.push(b);
            pieces.push(piece);
            let wb = wrap(b);
            let shift = [wb[0] - b[0], wb[1] - b[1]];
            piece = vec![[a[0] + shift[0], a[1] + shift[1]], wb];
        } else {
            piece.push(b);
        }
    }
    pieces.push(piece);
    pieces.retain(|p| p.len() >= 2);
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_curve() -> NodalCurve {
        NodalCurve {
            vertices: vec![[0.1, 0.1], [0.5, 0.5], [0.9, 0.9]],
            closed: false,
            arclength_cum: vec![0.0, 0.56, 1.13],
            curvature_samples: vec![0.0, 0.0, 0.0],
            midpoints: vec![],
            singular_adjacent: false,
            extraction_step: 0.01,
        }
    }

    #[test]
    fn empty_set_is_a_valid_document() {
        let svg = render_nodal_svg(&[], 1.0, &SvgOptions::default());
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let curves = vec![line_curve()];
        let a = render_nodal_svg(&curves, 1.0, &SvgOptions::default());
        let b = render_nodal_svg(&curves, 1.0, &SvgOptions::default());
        assert_eq!(a, b);
        assert_eq!(a.matches("<path").count(), 1);
    }

    #[test]
    fn seam_crossing_splits_the_path() {
        let curve = NodalCurve {
            vertices: vec![[0.8, 0.5], [0.95, 0.5], [1.1, 0.5]],
            closed: false,
            arclength_cum: vec![0.0, 0.15, 0.3],
            curvature_samples: vec![0.1, 0.1, 0.1],
            midpoints: vec![],
            singular_adjacent: false,
            extraction_step: 0.01,
        };
        let svg = render_nodal_svg(&[curve], 1.0, &SvgOptions::default());
        assert_eq!(svg.matches("<path").count(), 2);
    }

    #[test]
    fn singular_adjacent_styling_differs() {
        let mut curve = line_curve();
        curve.singular_adjacent = true;
        let svg = render_nodal_svg(&[curve], 1.0, &SvgOptions::default());
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("#c0392b"));
    }
}

//! Extraction -> segmentation -> width measurement, on an analytic circle
//! field (where everything has a closed form) and on a random
//! eigenfunction.
//!
//! Run with `cargo run --release --example regular_arcs`.

use torus_nodal::arc_metrics::{segment_regular_arcs, width};
use torus_nodal::eigenfunction::{Eigenfunction, EnsembleModel};
use torus_nodal::nodal_geometry::{extract_nodal_set, fields::CircleField};

fn main() {
    // the circle: constant curvature 4, so the pinching is trivial and the
    // segmentation splits only at the total-turning bound
    let field = CircleField { center: [0.5, 0.5], radius: 0.25 };
    let curves = extract_nodal_set(&field, 64).unwrap();
    println!("circle field: {} curve(s)", curves.len());
    for arc in segment_regular_arcs(&curves[0]) {
        let w = width(&arc).unwrap();
        println!(
            "  arc ell = {:.4}  kappa in [{:.3}, {:.3}]  width = {:.6}  w / (ell^2 kappa) = {:.4}",
            w.ell, w.kappa_min, w.kappa_max, w.width, w.ratio
        );
    }

    let phi = Eigenfunction::random(65, 7, EnsembleModel::Gaussian).unwrap();
    let curves = extract_nodal_set(&phi, 16).unwrap();
    println!("\nrandom eigenfunction at E = 65: {} curves", curves.len());
    let mut widest: Option<(f64, f64, f64)> = None;
    let mut arcs = 0;
    for curve in &curves {
        for arc in segment_regular_arcs(curve) {
            let w = width(&arc).unwrap();
            arcs += 1;
            if widest.map_or(true, |(prev, _, _)| w.width > prev) {
                widest = Some((w.width, w.ell, w.kappa_min));
            }
        }
    }
    println!("{arcs} regular arcs");
    if let Some((w, ell, kappa)) = widest {
        println!("widest: {w:.5} (ell = {ell:.4}, kappa_min = {kappa:.3})");
        println!("lambda^(-1/3) = {:.5} for comparison", 65f64.sqrt().powf(-1.0 / 3.0));
    }
}

//! Oscillatory integrals along arcs: Fourier decay against weight windows
//! and the good-subinterval decomposition that keeps every frequency
//! difference moving along the curve.
//!
//! Run with `cargo run --release --example oscillatory_arc`.

use torus_nodal::circle_lattice::enumerate_circle;
use torus_nodal::nodal_geometry::{
    arc_fourier_integral, good_subintervals, CircularArc, WeightWindow, WindowShape,
};

fn main() {
    let arc = CircularArc {
        center: [0.0, 0.0],
        radius: 1.0,
        start_angle: 0.0,
        orientation: 1.0,
        arc_length: 0.45,
    };
    let window = WeightWindow::new(0.05, 0.40, WindowShape::SmoothBump).unwrap();
    println!("|xi|      |integral|      bound factor   required c");
    let tangent = [-(0.225f64).sin(), (0.225f64).cos()];
    for scale in [4.0f64, 16.0, 64.0, 256.0] {
        let xi = [tangent[0] * scale, tangent[1] * scale];
        let r = arc_fourier_integral(&arc, &window, xi, 0.5).unwrap();
        println!(
            "{scale:<9} {:<15.3e} {:<14.3e} {:.4}",
            r.value.norm(),
            r.bound_factor,
            r.required_constant
        );
    }

    let circle = enumerate_circle(25).unwrap();
    let report = good_subintervals(&arc, &circle, 0.008).unwrap();
    println!(
        "\ngood subintervals for E = 25 ({} directions, rho = {:.2e}):",
        report.directions, report.rho
    );
    for (a, b) in &report.intervals {
        println!("  [{a:.4}, {b:.4}]");
    }
    println!(
        "coverage {:.4} of {:.4} (fraction {:.4})",
        report.coverage,
        arc.arc_length,
        report.coverage / arc.arc_length
    );
}

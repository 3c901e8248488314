//! Lattice points on circles: enumeration, spacing, and the exceptional
//! census.
//!
//! Run with `cargo run --release --example lattice_census`.

use torus_nodal::circle_lattice::{
    enumerate_circle, exceptional_census, max_points_on_arc, min_separation, r2, verify_jarnik,
    ArcSizeConvention,
};

fn main() {
    println!("E     r2   min gap^2   triple-product min");
    for e in [1u64, 2, 5, 25, 65, 325, 1105, 4225, 5525] {
        let circle = enumerate_circle(e).unwrap();
        let count = r2(e).unwrap();
        let sep = min_separation(&circle).map(|m| m.dist_sq).unwrap_or(0);
        let jarnik = verify_jarnik(&circle)
            .unwrap()
            .map(|r| format!("{:.4}", r.min_ratio))
            .unwrap_or_else(|| "-".into());
        println!("{e:<5} {count:<4} {sep:<11} {jarnik}");
    }

    let circle = enumerate_circle(25).unwrap();
    println!("\npoints on E = 25, by angle:");
    for p in circle.points() {
        println!("  ({:>2}, {:>2})  angle {:.4}", p.a, p.b, p.angle());
    }

    // how many points fit on short arcs
    let lambda = circle.lambda();
    for frac in [0.1, 0.25, 0.5] {
        let len = frac * std::f64::consts::TAU * lambda;
        let count = max_points_on_arc(&circle, len, ArcSizeConvention::ArcLength);
        println!("arc of {:.0}% of the circle holds at most {} points", frac * 100.0, count.count);
    }

    // energies whose circle carries an abnormally close pair
    let census = exceptional_census(2000, 0.5);
    println!(
        "\nexceptional energies up to {}: {} (vs N^(1-eps/3) = {:.1})",
        census.n, census.count, census.comparison
    );
    for entry in census.exceptional.iter().take(8) {
        println!(
            "  E = {:<5} r2 = {:<3} min gap {:.3} <= {:.3}",
            entry.e,
            entry.r2,
            (entry.min_sep_sq as f64).sqrt(),
            entry.threshold
        );
    }
}

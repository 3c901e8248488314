//! The Vandermonde-type determinant identity behind the distance-product
//! bound, verified in exact Gaussian-integer arithmetic.
//!
//! Run with `cargo run --release --example ramana_identity`.

use torus_nodal::circle_lattice::{
    distance_product_bound, enumerate_circle, ramana_determinant,
};

fn main() {
    let e = 65;
    let circle = enumerate_circle(e).unwrap();
    let points: Vec<_> = circle.points().iter().copied().take(4).collect();
    println!("four points on E = {e}: {points:?}\n");

    for k in 0..points.len() as u32 {
        let report = ramana_determinant(&points, e, k).unwrap();
        println!(
            "k = {k}: lambda^(k(k+1)) prod (Pi - Pj) = {}\n       prod Pi^k * det V        = {}\n       equal up to sign: {}, |det|^2 = {}",
            report.lhs, report.rhs, report.equal_up_to_sign, report.det_norm_sq
        );
    }

    let bound = distance_product_bound(&points, e).unwrap();
    println!(
        "\ndistance-product bound: prod |Pi - Pj|^2 = {} >= E^{} = {}  ({})",
        bound.lhs_sq,
        bound.rhs_exponent,
        bound.rhs_sq,
        if bound.holds { "holds" } else { "violated" }
    );
}

//! Scalar verifiers on eigenfunctions: the log-integral lower bound, the
//! doubling exponent, and subset lower bounds for exponential sums.
//!
//! Run with `cargo run --release --example function_theory`.

use num_complex::Complex64;
use torus_nodal::eigenfunction::{
    doubling_exponent, jensen_gap, turan_ratio, Eigenfunction, EnsembleModel, ExponentialSum1D,
    TorusConvention, WaveKind, WaveTerm,
};

fn main() {
    // equality case: for 2 cos(2 pi xi . x) the mean of log|phi| equals the
    // log of the top Fourier coefficient exactly
    let cosine = Eigenfunction::from_wave_terms(
        25,
        TorusConvention::UnitPeriod,
        &[WaveTerm { kind: WaveKind::Cos, xi: [3, 4], amplitude: 2.0 }],
    )
    .unwrap();
    for grid in [256usize, 1024, 4096] {
        let report = jensen_gap(&cosine, grid).unwrap();
        println!("equality case, grid {grid:>4}: gap = {:+.6e}", report.gap);
    }

    println!("\nrandom eigenfunctions (gap >= 0 up to quadrature error):");
    for (e, seed) in [(25u64, 1u64), (65, 2), (325, 3)] {
        let phi = Eigenfunction::random(e, seed, EnsembleModel::Gaussian).unwrap();
        let report = jensen_gap(&phi, 1024).unwrap();
        let beta = doubling_exponent(&phi, 16, &[1.0 / phi.lambda(), 2.0 / phi.lambda()]);
        println!(
            "  E = {e:<4} gap = {:+.4}  (floor {:+.4})  doubling beta = {:.3} over {} discs",
            report.gap, report.entropy_floor, beta.beta, beta.discs
        );
    }

    // subset bound: |f| on a shrinking window around its zero
    let f = ExponentialSum1D::new(
        vec![0.0, 1.0, 2.0],
        vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(-2.0, 0.0),
            Complex64::new(1.0, 0.0),
        ],
    )
    .unwrap();
    println!("\nthree-term sum |1 - e(t)|^2, Omega = [0, w]:");
    for w in [0.5, 0.25, 0.125, 0.0625] {
        let report = turan_ratio(&f, (0.0, 1.0), &[(0.0, w)]).unwrap();
        println!(
            "  |Omega| = {w:<7} sup ratio = {:.5}  fitted c = {:.4}",
            report.sup_omega / report.sup_interval,
            report.fitted_c.unwrap()
        );
    }
}

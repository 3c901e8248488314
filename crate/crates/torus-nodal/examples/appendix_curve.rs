//! Higher-derivative behavior of one implicitly defined nodal branch:
//! gentle slope and curvature, yet a fourth derivative that grows with the
//! frequency k.
//!
//! Run with `cargo run --release --example appendix_curve`.

use torus_nodal::lab::appendix::CurveExampleField;

fn main() {
    let field = CurveExampleField::new(40, 1e-3, 1e-9).unwrap();
    let x0 = -std::f64::consts::FRAC_PI_4;
    println!("k = 40, eps = 1e-3, delta = 1e-9, around x = -pi/4:\n");
    println!("x offset    y'            y''           y''''");
    for dx in [-1e-3, -5e-4, 0.0, 5e-4, 1e-3] {
        let d = field.derivatives_by_jets(x0 + dx).unwrap();
        println!("{dx:>+9.1e}  {:+.6e}  {:+.6e}  {:+.6e}", d.y1, d.y2, d.y4);
    }
    let d = field.derivatives_by_jets(x0).unwrap();
    println!("\nleading orders: y' ~ -1/k = {:+.6e}", -1.0 / 40.0);
    println!("                y'' ~ 4 eps / k = {:+.6e} (sin 2x = -1 here)", 4e-3 / 40.0);
    let oracle = field.derivatives_by_oracle(x0, 1e-4).unwrap();
    println!(
        "\nextended-precision oracle agreement: y'' {:+.6e} vs {:+.6e}, y'''' {:+.6e} vs {:+.6e}",
        d.y2, oracle.y2, d.y4, oracle.y4
    );

    println!("\nfourth-derivative growth (eps = 1e-8, delta = 1e-5 / k^2):");
    for k in [20u32, 40, 80] {
        let field = CurveExampleField::new(k, 1e-8, 1e-5 / (k as f64 * k as f64)).unwrap();
        let mut max_y4 = 0.0f64;
        for i in 0..=40 {
            let x = x0 - 1e-3 + 2e-3 * i as f64 / 40.0;
            max_y4 = max_y4.max(field.derivatives_by_jets(x).unwrap().y4.abs());
        }
        println!("  k = {k:<3} max |y''''| = {max_y4:.4e}  ratio to k: {:.4e}", max_y4 / k as f64);
    }
}

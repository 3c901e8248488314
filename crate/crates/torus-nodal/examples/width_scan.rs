//! Small width-scaling scan: maximal regular-arc width against lambda.
//!
//! Run with `cargo run --release --example width_scan`.
//! (The full study lives in `nodal-lab widths`.)

use torus_nodal::lab::config::WidthScanConfig;
use torus_nodal::lab::run_width_scan;

fn main() {
    let cfg = WidthScanConfig {
        energies: vec![25, 325, 1105],
        seeds_per_energy: 4,
        separated_energies: vec![9, 49],
        ..Default::default()
    };
    let run = run_width_scan(&cfg);
    println!("E      lambda   r2   separated   max width");
    for s in &run.report.payload.summaries {
        println!(
            "{:<6} {:<8.3} {:<4} {:<11} {}",
            s.e,
            s.lambda,
            s.r2,
            s.separated,
            s.max_width.map_or("-".into(), |w| format!("{w:.5}")),
        );
    }
    if let Some(fit) = &run.report.payload.fit {
        println!(
            "\nfitted: max width ~ lambda^{:.3} (residual {:.3})",
            fit.exponent, fit.residual
        );
    }
    print!("{}", run.report.render_check_lines());
}

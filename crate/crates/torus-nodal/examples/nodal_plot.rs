//! Extracts and renders the nodal set of the classic three-wave
//! eigenfunction cos(4x - 7y) + sin(8x - y) + sin(4x + 7y) on the 2-pi
//! torus, plus its four-wave sibling whose nodal set has crossings.
//!
//! Run with `cargo run --release --example nodal_plot`; writes SVGs into
//! the working directory.

use torus_nodal::eigenfunction::{Eigenfunction, TorusConvention, WaveKind, WaveTerm};
use torus_nodal::lab::svg::{write_nodal_svg, SvgOptions};
use torus_nodal::nodal_geometry::{extract_nodal_set, singular_points, total_nodal_length, ScalarField};

fn main() -> std::io::Result<()> {
    let smooth = Eigenfunction::from_wave_terms(
        65,
        TorusConvention::TwoPiPeriod,
        &[
            WaveTerm { kind: WaveKind::Cos, xi: [4, -7], amplitude: 1.0 },
            WaveTerm { kind: WaveKind::Sin, xi: [8, -1], amplitude: 1.0 },
            WaveTerm { kind: WaveKind::Sin, xi: [4, 7], amplitude: 1.0 },
        ],
    )
    .unwrap();
    let crossing = Eigenfunction::from_wave_terms(
        65,
        TorusConvention::TwoPiPeriod,
        &[
            WaveTerm { kind: WaveKind::Sin, xi: [4, 7], amplitude: 1.0 },
            WaveTerm { kind: WaveKind::Sin, xi: [4, -7], amplitude: 1.0 },
            WaveTerm { kind: WaveKind::Sin, xi: [8, 1], amplitude: 1.0 },
            WaveTerm { kind: WaveKind::Sin, xi: [8, -1], amplitude: 1.0 },
        ],
    )
    .unwrap();

    for (name, phi) in [("nodal_smooth.svg", &smooth), ("nodal_crossing.svg", &crossing)] {
        let curves = extract_nodal_set(phi, 12).unwrap();
        let period = ScalarField::period(phi);
        let length = total_nodal_length(&curves, period);
        let singular = singular_points(phi, 256);
        println!(
            "{name}: {} curves, length {:.3} ({:.3} per lambda), {} singular points",
            curves.len(),
            length,
            length / phi.lambda() / period,
            singular.len()
        );
        write_nodal_svg(&curves, period, std::path::Path::new(name), &SvgOptions::default())?;
    }
    Ok(())
}

//! Plot runner: one eigenfunction in, one SVG of its nodal set out.

use super::config::{PlotConfig, PlotSource};
use super::svg::render_nodal_svg;
use super::{CheckOutcome, ExperimentReport, RunOutput};
use crate::eigenfunction::Eigenfunction;
use crate::nodal_geometry::{extract_nodal_set, total_nodal_length, ScalarField};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlotPayload {
    pub e: u64,
    pub curves: usize,
    pub singular_adjacent_curves: usize,
    pub total_length: f64,
}

pub fn run_plot(cfg: &PlotConfig) -> std::io::Result<RunOutput<PlotConfig, PlotPayload>> {
    let phi = match &cfg.source {
        PlotSource::Random { e, seed, ensemble } => Eigenfunction::random(*e, *seed, *ensemble)
            .map_err(|err| std::io::Error::new(std::io::ErrorKind::InvalidInput, err))?,
        PlotSource::File { path } => {
            let text = std::fs::read_to_string(path)?;
            Eigenfunction::from_json(&text)
                .map_err(|err| std::io::Error::new(std::io::ErrorKind::InvalidData, err))?
        }
    };
    let curves = extract_nodal_set(&phi, cfg.cells_per_wavelength)
        .map_err(|err| std::io::Error::new(std::io::ErrorKind::InvalidData, err))?;
    let period = ScalarField::period(&phi);
    let body = render_nodal_svg(&curves, period, &cfg.svg_options);

    let payload = PlotPayload {
        e: phi.e(),
        curves: curves.len(),
        singular_adjacent_curves: curves.iter().filter(|c| c.singular_adjacent).count(),
        total_length: total_nodal_length(&curves, period),
    };
    let mut report = ExperimentReport::new(cfg.clone(), payload);
    report.checks.push(CheckOutcome::new(
        "svg rendered",
        true,
        true,
        format!("{} curves, total length {:.3}", report.payload.curves, report.payload.total_length),
    ));
    Ok(RunOutput { report, artifacts: vec![("nodal.svg".into(), body.into_bytes())] })
}

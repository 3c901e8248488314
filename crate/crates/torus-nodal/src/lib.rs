//! Geometry of nodal lines of Laplacian eigenfunctions on the flat torus.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! circle_lattice -> eigenfunction -> nodal_geometry -> arc_metrics
//! (integer points      (trig            (curves,         (regular arcs,
//!  on |xi|^2 = E)       polynomials)     curvature)       widths)
//! ```
//!
//! plus [`lab`], an experiment runner that turns the individual verifiers
//! into reproducible desk-scale studies with JSON/CSV/SVG outputs.
//!
//! Everything arithmetic about lattice points (distance products,
//! Vandermonde-type determinants over the Gaussian integers) is exact;
//! floating point enters only for angles, quadrature and reporting.
//!
//! See the `examples/` directory for one runnable program per capability,
//! and the `nodal-lab` binary for the batch experiment interface.

pub mod arc_metrics;
pub mod circle_lattice;
pub mod eigenfunction;
pub mod lab;
pub mod nodal_geometry;

pub use circle_lattice::{enumerate_circle, r2, LatticeCircle, LatticePoint};
pub use eigenfunction::{Eigenfunction, EnsembleModel, TorusConvention};
pub use nodal_geometry::{extract_nodal_set, NodalCurve, ScalarField};

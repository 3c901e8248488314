use torus_nodal::arc_metrics::{segment_regular_arcs_indexed, width};
use torus_nodal::eigenfunction::{Eigenfunction, EnsembleModel};

use torus_nodal::nodal_geometry::extract_nodal_set;
fn main() {
    for cpw in [8u32, 16] {
        let mut count = 0; let mut bad = 0;
        let (mut rmin, mut rmax) = (f64::INFINITY, 0.0f64);
        for e in [25u64, 325, 1105, 4225, 5525, 9, 49, 121, 529, 2209] {
            for idx in 0..20u64 {
                let seed = 0u64.wrapping_add(idx.wrapping_mul(0x9e3779b97f4a7c15));
                let phi = Eigenfunction::random(e, seed, EnsembleModel::Gaussian).unwrap();
                let curves = extract_nodal_set(&phi, cpw).unwrap();
                for (ci, c) in curves.iter().enumerate() {
                    for arc in segment_regular_arcs_indexed(c, ci) {
                        let w = width(&arc).unwrap();
                        count += 1;
                        rmin = rmin.min(w.ratio); rmax = rmax.max(w.ratio);
                        if w.ratio < 1.0/16.0 || w.ratio > 1.0 {
                            bad += 1;
                            if bad < 6 { println!("cpw {cpw} E {e} seed {seed}: ratio {:.4} ell {:.4} kmin {:.3} kmax {:.3} w {:.6}", w.ratio, w.ell, w.kappa_min, w.kappa_max, w.width); }
                        }
                    }
                }
            }
        }
        println!("cpw {cpw}: {count} arcs, {bad} outside, ratio range [{rmin:.4}, {rmax:.4}]\n");
    }
}

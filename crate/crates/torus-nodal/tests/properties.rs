//! Property tests for the structural invariants: enumeration against brute
//! force, clustering as an exact partition, determinant identities on random
//! tuples, reality of folded evaluation, width monotonicity.

use num_complex::Complex64;
use proptest::prelude::*;
use torus_nodal::arc_metrics::{width, ArcSample, RegularArc};
use torus_nodal::circle_lattice::{
    angle_order, cluster_frequencies, enumerate_circle, ramana_determinant, LatticePoint,
};
use torus_nodal::eigenfunction::{Eigenfunction, EnsembleModel, TorusConvention};
use torus_nodal::nodal_geometry::{total_curvature_polygon, WeightWindow, WindowShape};

fn brute_force(e: u64) -> Vec<LatticePoint> {
    let root = (e as f64).sqrt().ceil() as i64;
    let mut out = Vec::new();
    for a in -root..=root {
        for b in -root..=root {
            if (a * a + b * b) as u64 == e {
                out.push(LatticePoint::new(a, b));
            }
        }
    }
    out.sort_by(|p, q| angle_order(*p, *q));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_brute_force(e in 1u64..3000) {
        let circle = enumerate_circle(e).unwrap();
        prop_assert_eq!(circle.points(), brute_force(e).as_slice());
    }

    #[test]
    fn angles_are_sorted_and_distinct(e in 1u64..3000) {
        let circle = enumerate_circle(e).unwrap();
        let angles = circle.angles();
        for w in angles.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn clustering_is_an_exact_partition(e in 1u64..2000, threshold in 0.5f64..50.0) {
        let circle = enumerate_circle(e).unwrap();
        let clusters = cluster_frequencies(&circle, threshold);
        let total: usize = clusters.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(total, circle.r2());
        // distinct clusters strictly farther than the threshold
        for (i, a) in clusters.iter().enumerate() {
            for b in clusters.iter().skip(i + 1) {
                for p in &a.members {
                    for q in &b.members {
                        prop_assert!(p.dist(*q) > threshold);
                    }
                }
            }
            prop_assert!(a.diameter <= threshold * circle.r2() as f64 + 1e-9);
        }
    }

    #[test]
    fn determinant_identity_on_random_tuples(
        e in 1u64..5000,
        pick in proptest::collection::vec(0usize..64, 2..6),
        k_raw in 0u32..6,
    ) {
        let circle = enumerate_circle(e).unwrap();
        if circle.r2() < pick.len() {
            return Ok(());
        }
        let mut points: Vec<LatticePoint> =
            pick.iter().map(|&i| circle.points()[i % circle.r2()]).collect();
        points.sort();
        points.dedup();
        if points.len() < 2 {
            return Ok(());
        }
        let k = k_raw % points.len() as u32;
        let report = ramana_determinant(&points, e, k).unwrap();
        prop_assert!(report.equal_up_to_sign);
        prop_assert!(report.det_nonzero);
    }

    #[test]
    fn folded_evaluation_is_real(e in proptest::sample::select(vec![25u64, 65, 85, 325]),
                                 seed in 0u64..1000,
                                 x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let phi = Eigenfunction::random(e, seed, EnsembleModel::Gaussian).unwrap();
        let z: Complex64 = phi.as_trig_polynomial().evaluate_complex([x, y]);
        let budget: f64 = phi.coefficients().values().map(|a| a.norm()).sum();
        prop_assert!(z.im.abs() <= 1e-12 * budget);
        prop_assert!((z.re - phi.evaluate([x, y])).abs() <= 1e-12 * budget);
    }

    #[test]
    fn truncating_an_arc_never_increases_width(
        radius in 0.3f64..2.0,
        span in 0.15f64..0.45,
        cut_lo in 0usize..200,
        cut_hi in 0usize..200,
    ) {
        let n = 600usize;
        let arc_len = span * radius.min(1.0);
        let samples: Vec<ArcSample> = (0..=n)
            .map(|k| {
                let s = arc_len * k as f64 / n as f64;
                let a = s / radius;
                ArcSample {
                    point: [radius * a.cos(), radius * a.sin()],
                    tangent: [-a.sin(), a.cos()],
                    curvature: 1.0 / radius,
                    s,
                }
            })
            .collect();
        let arc = RegularArc::from_samples(samples).unwrap();
        let full = width(&arc).unwrap().width;
        let lo = cut_lo.min(150);
        let hi = n + 1 - cut_hi.min(150);
        if hi - lo > 10 {
            let sub = arc.truncated(lo, hi).unwrap();
            let w = width(&sub).unwrap().width;
            prop_assert!(w <= full * (1.0 + 1e-9));
        }
    }

    #[test]
    fn convex_polygon_turning_is_full(n in 3usize..60, rot in 0.0f64..6.28) {
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|k| {
                let a = rot + std::f64::consts::TAU * k as f64 / n as f64;
                [a.cos(), a.sin()]
            })
            .collect();
        let total = total_curvature_polygon(&pts, true);
        prop_assert!((total - std::f64::consts::TAU).abs() < 1e-9);
    }

    #[test]
    fn weight_windows_integrate_to_one(t0 in -2.0f64..2.0, len in 0.01f64..3.0) {
        for shape in [WindowShape::SmoothBump, WindowShape::Triangle] {
            let w = WeightWindow::new(t0, t0 + len, shape).unwrap();
            prop_assert!((w.integral(4000) - 1.0).abs() < 1e-7);
            prop_assert!(w.value(t0 - 0.1) == 0.0 && w.value(t0 + len + 0.1) == 0.0);
        }
    }

    #[test]
    fn eigenfunction_json_round_trips(e in proptest::sample::select(vec![25u64, 65, 325]),
                                      seed in 0u64..500) {
        let phi = Eigenfunction::random(e, seed, EnsembleModel::Unimodular).unwrap();
        let back = Eigenfunction::from_json(&phi.to_json()).unwrap();
        prop_assert_eq!(phi.coefficients(), back.coefficients());
        prop_assert_eq!(phi.convention(), TorusConvention::UnitPeriod);
    }
}

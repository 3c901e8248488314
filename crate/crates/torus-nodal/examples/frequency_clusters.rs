//! Partition of a circle's lattice points into frequency clusters:
//! connected components of the graph with edges at distance <= threshold.
//!
//! Run with `cargo run --release --example frequency_clusters`.

use torus_nodal::circle_lattice::{cluster_frequencies, enumerate_circle, min_separation};

fn main() {
    let e = 325;
    let circle = enumerate_circle(e).unwrap();
    let sep = min_separation(&circle).unwrap();
    println!(
        "E = {e}: r2 = {}, closest pair {:?} at distance {:.3}\n",
        circle.r2(),
        sep.pair,
        sep.dist()
    );
    for threshold in [2.0, 5.0, 8.0, 2.0 * circle.lambda()] {
        let clusters = cluster_frequencies(&circle, threshold);
        let sizes: Vec<usize> = clusters.iter().map(|c| c.members.len()).collect();
        println!("threshold {threshold:>6.2}: {} clusters, sizes {:?}", clusters.len(), sizes);
    }

    println!("\nclusters at threshold 5:");
    for (i, cluster) in cluster_frequencies(&circle, 5.0).iter().enumerate() {
        println!("  [{i}] diameter {:.3}: {:?}", cluster.diameter, cluster.members);
    }
}

//! Personalized PageRank by walk sampling: geometric walk lengths and
//! per-vertex visit counts from a single source.
//!
//! Run with: cargo run --release --example personalized_pagerank

use radixwalk::{ppr_walks, BiasMode, DynGraph, GroupThresholds};

fn main() -> radixwalk::Result<()> {
    // Two triangles bridged by one edge; mass should concentrate around
    // the source's triangle.
    let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
    for &(s, d) in &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)] {
        g.insert_edge(s, d, 1.0)?;
    }

    let sources = vec![0u32; 100_000];
    let (walks, visits) = ppr_walks(&g, &sources, 0.2, 11)?;
    let mean = walks.iter().map(|w| w.steps() as f64).sum::<f64>() / walks.len() as f64;
    println!("mean walk length {mean:.3} (expected 1/0.2 = 5)");

    let total: u64 = visits.iter().sum();
    for (v, count) in visits.iter().enumerate() {
        println!("vertex {v}: visit share {:.4}", *count as f64 / total as f64);
    }
    Ok(())
}

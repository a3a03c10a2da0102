//! Stream single-edge inserts and deletes into a dynamic graph and watch
//! the per-update work stay bounded regardless of degree.
//!
//! Run with: cargo run --release --example streaming_updates

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radixwalk::{scratch_equivalence, BiasMode, DynGraph, GroupThresholds};

fn main() -> radixwalk::Result<()> {
    let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    // Grow a hub vertex, then churn it with mixed updates.
    for i in 0..50_000u32 {
        g.insert_edge(0, i + 1, rng.random_range(1u64..1 << 20) as f64)?;
    }
    let mut worst = 0;
    for _ in 0..10_000 {
        if rng.random::<bool>() {
            let dst = rng.random_range(1..=50_000u32);
            g.insert_edge(0, dst, rng.random_range(1u64..1 << 20) as f64)?;
        } else {
            let view = g.neighbor_view(0)?;
            let pick = view.neighbors()[rng.random_range(0..view.degree())].id;
            g.delete_edge(0, pick)?;
        }
        worst = worst.max(g.sampler(0)?.last_update_mutations());
    }
    println!(
        "hub degree {} after churn, worst update touched {worst} groups",
        g.degree(0)
    );

    // The incremental structure must match a from-scratch rebuild.
    let report = scratch_equivalence(&g, &[0]);
    print!("{}", report.render());
    Ok(())
}

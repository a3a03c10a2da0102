//! Adaptive group representations on a power-law graph: dense, sparse,
//! one-element and regular storage picked per group, against the
//! all-regular baseline.
//!
//! Run with: cargo run --release --example adaptive_groups

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radixwalk::{generate_biases, BiasDistribution, BiasMode, DynGraph, GroupThresholds};

fn power_law_edges(n: u32, m: usize, seed: u64) -> Vec<(u32, u32, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u32, u32)> = (0..m)
        .map(|_| {
            let u: f64 = rng.random();
            let dst = ((n as f64 * u * u) as u32).min(n - 1);
            (rng.random_range(0..n), dst)
        })
        .collect();
    let biases = generate_biases(&pairs, BiasDistribution::DegreePowerLaw, seed).unwrap();
    pairs.into_iter().zip(biases).map(|((s, d), w)| (s, d, w)).collect()
}

fn main() -> radixwalk::Result<()> {
    let edges = power_law_edges(50_000, 200_000, 17);
    let adaptive = DynGraph::from_edges(&edges, BiasMode::Integer, false, GroupThresholds::default())?;
    let baseline =
        DynGraph::from_edges(&edges, BiasMode::Integer, false, GroupThresholds::all_regular())?;

    let mut kinds: HashMap<&'static str, usize> = HashMap::new();
    for u in adaptive.vertices() {
        for (_, kind, _) in adaptive.sampler(u)?.group_kinds() {
            *kinds.entry(kind.name()).or_default() += 1;
        }
    }
    let mut sorted: Vec<_> = kinds.into_iter().collect();
    sorted.sort();
    for (kind, count) in sorted {
        println!("{kind:>12} groups: {count}");
    }

    let a = adaptive.total_memory_slots();
    let b = baseline.total_memory_slots();
    println!("adaptive slots {a} vs all-regular {b} ({:.1}%)", 100.0 * a as f64 / b as f64);
    Ok(())
}

//! Second-order walks via rejection sampling, checked against the
//! brute-force transition distribution.
//!
//! Run with: cargo run --release --example node2vec

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use radixwalk::{
    brute_force_second_order, node2vec_step, node2vec_walks, BiasMode, DynGraph, GroupThresholds,
};

fn main() -> radixwalk::Result<()> {
    // Path 0-1-2: with p=0.5, q=2 a walker at 1 coming from 0
    // backtracks with probability 0.8.
    let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
    g.insert_edge(0, 1, 1.0)?;
    g.insert_edge(1, 2, 1.0)?;

    let (p, q) = (0.5, 2.0);
    let exact = brute_force_second_order(&g, 0, 1, p, q)?;
    let ids: Vec<u32> = g.neighbor_view(1)?.ids().collect();
    println!("exact step distribution from (prev=0, cur=1):");
    for (id, pr) in ids.iter().zip(&exact) {
        println!("  -> {id}: {pr:.4}");
    }

    let f_max = (1.0 / p).max(1.0).max(1.0 / q);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut back = 0u64;
    let trials = 100_000;
    for _ in 0..trials {
        if node2vec_step(&g, 0, 1, p, q, f_max, &mut rng)? == 0 {
            back += 1;
        }
    }
    println!("empirical backtrack rate {:.4} over {trials} trials", back as f64 / trials as f64);

    let walks = node2vec_walks(&g, &[0, 1, 2], 8, p, q, 7)?;
    for w in &walks {
        println!("walk {:?}", w.vertices);
    }
    Ok(())
}

//! Build a per-vertex sampler, inspect its radix groups, and compare
//! sampled frequencies against the exact distribution.
//!
//! Run with: cargo run --release --example weighted_sampling

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use radixwalk::{BiasMode, GroupThresholds, VertexSampler};

fn main() -> radixwalk::Result<()> {
    // Neighbors 1, 4, 5 with integer biases 5, 4, 3.
    let entries = [(1u32, 5.0), (4, 4.0), (5, 3.0)];
    let sampler = VertexSampler::build(&entries, BiasMode::Integer, GroupThresholds::default())?;

    println!("degree {}  total bias {}", sampler.degree(), sampler.total_bias());
    for (bit, kind, size) in sampler.group_kinds() {
        println!("group 2^{bit}: {} members, {}", size, kind.name());
    }

    let exact = sampler.exact_distribution()?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 1_000_000;
    let mut counts = vec![0u64; sampler.degree()];
    for _ in 0..n {
        counts[sampler.sample_neighbor(&mut rng)?] += 1;
    }

    println!("{:>8} {:>10} {:>10}", "neighbor", "exact", "empirical");
    for (i, neighbor) in sampler.neighbors().iter().enumerate() {
        println!(
            "{:>8} {:>10.6} {:>10.6}",
            neighbor.id,
            exact[i],
            counts[i] as f64 / n as f64
        );
    }
    Ok(())
}

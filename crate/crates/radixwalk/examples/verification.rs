//! Verification harness: scratch-rebuild equivalence, fault injection,
//! and a chi-square goodness-of-fit test on sampled counts.
//!
//! Run with: cargo run --release --example verification

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radixwalk::{chi_square_gof, scratch_equivalence, BiasMode, DynGraph, GroupThresholds};

fn main() -> radixwalk::Result<()> {
    let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5_000 {
        let src = rng.random_range(0..32u32);
        let dst = rng.random_range(0..32u32);
        if rng.random::<bool>() || !g.has_edge(src, dst) {
            g.insert_edge(src, dst, rng.random_range(1u64..1 << 16) as f64)?;
        } else {
            g.delete_edge(src, dst)?;
        }
    }

    let vertices: Vec<u32> = g.vertices().collect();
    let report = scratch_equivalence(&g, &vertices);
    print!("{}", report.render());

    // Chi-square on one vertex's empirical counts.
    let s = g.sampler(0)?;
    let expected = s.exact_distribution()?;
    let mut counts = vec![0u64; s.degree()];
    for _ in 0..1_000_000 {
        counts[s.sample_neighbor(&mut rng)?] += 1;
    }
    let (stat, dof) = chi_square_gof(&counts, &expected)?;
    println!("chi-square {stat:.2} with {dof} degrees of freedom");

    // Inject a fault; the checker must notice.
    g.corrupt_vertex(0);
    let report = scratch_equivalence(&g, &[0]);
    println!("after corruption: {} violations", report.violations.len());
    Ok(())
}

//! Generate a timestamped update stream, apply it in one batch, and
//! compare against streaming the same updates one by one.
//!
//! Run with: cargo run --release --example batched_updates

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radixwalk::{
    apply_batch, generate_update_stream, BiasMode, DynGraph, GroupThresholds, UpdateMode,
};

fn main() -> radixwalk::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let edges: Vec<(u32, u32, f64)> = (0..200_000)
        .map(|_| {
            (
                rng.random_range(0..64u32),
                rng.random_range(0..64u32),
                rng.random_range(1u64..1 << 20) as f64,
            )
        })
        .collect();

    // Reserve 10 * batchsize edges for the stream; the rest is the
    // initial graph.
    let batchsize = 5_000;
    let seq_start = (edges.len() - 10 * batchsize) as u64;
    let (initial, stream) =
        generate_update_stream(&edges, batchsize, UpdateMode::Mixed, 42, seq_start)?;
    println!("initial edges {}, streamed updates {}", initial.len(), stream.len());

    let thresholds = GroupThresholds::default();
    let mut batched = DynGraph::from_edges(&initial, BiasMode::Integer, false, thresholds)?;
    let mut streamed = DynGraph::from_edges(&initial, BiasMode::Integer, false, thresholds)?;

    let t = Instant::now();
    let stats = apply_batch(&mut batched, &stream)?;
    let batch_secs = t.elapsed().as_secs_f64();

    let t = Instant::now();
    for u in &stream {
        streamed.apply_update(u)?;
    }
    let stream_secs = t.elapsed().as_secs_f64();

    print!("{}", stats.render());
    println!("batch {batch_secs:.3}s vs streaming {stream_secs:.3}s ({:.1}x)", stream_secs / batch_secs);
    Ok(())
}

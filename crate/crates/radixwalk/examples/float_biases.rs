//! Floating-point biases: the amortization factor lambda scales each
//! bias into an integer part (radix groups) plus a residual handled by
//! the rejection-sampled decimal group.
//!
//! Run with: cargo run --release --example float_biases

use radixwalk::{choose_lambda, scale_float_bias, BiasMode, GroupThresholds, VertexSampler};

fn main() -> radixwalk::Result<()> {
    let biases = [0.554, 0.726, 0.320];
    let choice = choose_lambda(&biases)?;
    println!("lambda {}  constraint met {}", choice.lambda, choice.constraint_met);

    for &w in &biases {
        let bv = scale_float_bias(w, choice.lambda)?;
        println!("  {w} -> integer {} + residual {}", bv.integer, bv.residual);
    }

    let entries: Vec<(u32, f64)> = biases.iter().enumerate().map(|(i, &w)| (i as u32, w)).collect();
    let s = VertexSampler::build(&entries, BiasMode::Float, GroupThresholds::default())?;
    for (bit, kind, size) in s.group_kinds() {
        println!("group 2^{bit}: {size} members, {}", kind.name());
    }
    // Residual mass is exactly 1.0 out of 16.0 here.
    println!("decimal group probability {}", s.decimal_group_probability());

    let exact = s.exact_distribution()?;
    for (n, p) in s.neighbors().iter().zip(&exact) {
        println!("neighbor {}: p = {p:.6}", n.id);
    }
    Ok(())
}

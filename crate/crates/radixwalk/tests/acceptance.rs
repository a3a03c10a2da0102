//! Acceptance suite: one test per numbered criterion, each printing a
//! single `criterion N PASS/FAIL` line with the measured values.
//!
//! Tests share a global lock so they run one at a time; the two
//! wall-clock criteria (6 and 7) would otherwise race the statistical
//! ones for cores.

use std::collections::HashMap;
use std::hint::black_box;
use std::io::Cursor;
use std::sync::{Mutex, MutexGuard};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use radixwalk::graph::{DynGraph, EdgeUpdate, UpdateOp};
use radixwalk::radix::{BiasMode, GroupThresholds, SampleTrace, VertexSampler};
use radixwalk::{
    apply_batch, brute_force_second_order, choose_lambda, deepwalk_walks, generate_biases,
    generate_update_stream, node2vec_step, ppr_walks, scratch_equivalence, tv_distance,
    BiasDistribution, CdfSampler, Error, UpdateMode,
};

static GATE: Mutex<()> = Mutex::new(());

fn gate() -> MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(n: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {n} {verdict}: {name} ({detail})");
    assert!(pass, "criterion {n} {name}: {detail}");
}

fn running_example() -> DynGraph {
    DynGraph::load_edge_list(
        Cursor::new("2 1 5\n2 4 4\n2 5 3\n"),
        BiasMode::Integer,
        true,
        GroupThresholds::default(),
    )
    .unwrap()
}

fn random_integer_sampler(rng: &mut ChaCha8Rng, max_degree: usize) -> VertexSampler {
    let degree = rng.random_range(1..=max_degree);
    let entries: Vec<(u32, f64)> = (0..degree)
        .map(|i| (i as u32, rng.random_range(1u64..1 << 20) as f64))
        .collect();
    VertexSampler::build(&entries, BiasMode::Integer, GroupThresholds::default()).unwrap()
}

/// Empirical per-neighbor-index frequencies over `n` draws.
fn empirical_distribution(s: &VertexSampler, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; s.degree()];
    for _ in 0..n {
        counts[s.sample_neighbor(&mut rng).unwrap()] += 1;
    }
    counts.iter().map(|&c| c as f64 / n as f64).collect()
}

#[test]
fn criterion_1_distribution_correctness() {
    let _g = gate();
    let started = Instant::now();
    let example = running_example();
    let mut samplers: Vec<VertexSampler> = vec![VertexSampler::build_scaled(
        example.sampler(2).unwrap().neighbors(),
        BiasMode::Integer,
        1.0,
        GroupThresholds::default(),
    )];
    for case in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + case);
        samplers.push(random_integer_sampler(&mut rng, 64));
    }
    let (max_exact_err, max_tv) = samplers
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let exact = s.exact_distribution().unwrap();
            let total: f64 = s.neighbors().iter().map(|n| n.bias.scaled()).sum();
            let exact_err = s
                .neighbors()
                .iter()
                .zip(&exact)
                .map(|(n, p)| (p - n.bias.scaled() / total).abs())
                .fold(0.0f64, f64::max);
            let emp = empirical_distribution(s, 1_000_000, 2000 + i as u64);
            let tv = tv_distance(&emp, &exact).unwrap();
            (exact_err, tv)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    let elapsed = started.elapsed().as_secs_f64();
    let pass = max_exact_err <= 1e-9 && max_tv < 0.005 && elapsed < 60.0;
    report(
        1,
        "distribution correctness",
        pass,
        &format!(
            "501 vertices, max exact error {max_exact_err:.2e} (bound 1e-9), \
             max TV over 1e6 samples {max_tv:.5} (bound 0.005), {elapsed:.1}s"
        ),
    );
}

/// Random streaming sequence on a 16-vertex pool, then a full
/// scratch-equivalence check. Returns the violation count.
fn streamed_sequence_violations(mode: BiasMode, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = DynGraph::new(mode, false, GroupThresholds::default());
    let ops = rng.random_range(1..=200);
    for _ in 0..ops {
        let src = rng.random_range(0..16u32);
        let dst = rng.random_range(0..16u32);
        if rng.random_range(0..5) < 3 || !g.has_edge(src, dst) {
            let bias = match mode {
                BiasMode::Integer => rng.random_range(1u64..1 << 20) as f64,
                BiasMode::Float => {
                    rng.random_range(1u64..1 << 20) as f64 / rng.random_range(1u32..=1000) as f64
                }
            };
            g.insert_edge(src, dst, bias).unwrap();
        } else {
            g.delete_edge(src, dst).unwrap();
        }
    }
    let vertices: Vec<u32> = (0..g.vertex_count() as u32).collect();
    scratch_equivalence(&g, &vertices).violations.len()
}

#[test]
fn criterion_2_incremental_vs_scratch_equivalence() {
    let _g = gate();
    let started = Instant::now();
    let violations: usize = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let mode = if i < 500 { BiasMode::Integer } else { BiasMode::Float };
            streamed_sequence_violations(mode, 3000 + i)
        })
        .sum();
    let elapsed = started.elapsed().as_secs_f64();
    let pass = violations == 0 && elapsed < 120.0;
    report(
        2,
        "incremental vs scratch equivalence",
        pass,
        &format!(
            "1000 sequences (500 integer + 500 float), {violations} violations, {elapsed:.1}s"
        ),
    );
}

fn mass_by_id(g: &DynGraph, u: u32) -> HashMap<u32, f64> {
    let mut out = HashMap::new();
    if g.degree(u) == 0 {
        return out;
    }
    let sampler = g.sampler(u).unwrap();
    let dist = sampler.exact_distribution().unwrap();
    for (n, p) in sampler.neighbors().iter().zip(&dist) {
        *out.entry(n.id).or_insert(0.0) += p;
    }
    out
}

fn live_multiset(g: &DynGraph, u: u32) -> Vec<(u32, u64, u64, u64)> {
    let mut out: Vec<_> = g
        .sampler(u)
        .map(|s| {
            s.neighbors()
                .iter()
                .map(|n| (n.id, n.bias.integer, n.bias.residual.to_bits(), n.seq))
                .collect()
        })
        .unwrap_or_default();
    out.sort_unstable();
    out
}

/// One batch-vs-replay case over a 24-vertex pool; small pools force
/// plenty of duplicate edges. Returns mismatch descriptions.
fn batch_replay_case(seed: u64, updates: usize, directed: bool) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<(u32, u32, f64)> = (0..rng.random_range(0..80))
        .map(|_| {
            (
                rng.random_range(0..24u32),
                rng.random_range(0..24u32),
                rng.random_range(1u64..256) as f64,
            )
        })
        .collect();
    let thresholds = GroupThresholds::default();
    let mut batched = DynGraph::from_edges(&base, BiasMode::Integer, directed, thresholds).unwrap();
    let mut streamed = DynGraph::from_edges(&base, BiasMode::Integer, directed, thresholds).unwrap();
    let seq0 = batched.next_seq();
    let batch: Vec<EdgeUpdate> = (0..updates)
        .map(|i| {
            let insert = rng.random::<bool>();
            EdgeUpdate {
                op: if insert { UpdateOp::Insert } else { UpdateOp::Delete },
                src: rng.random_range(0..24),
                dst: rng.random_range(0..24),
                bias: if insert { rng.random_range(1u64..256) as f64 } else { 0.0 },
                seq: seq0 + i as u64,
            }
        })
        .collect();
    let stats = apply_batch(&mut batched, &batch).unwrap();
    let mut stream_failures = 0u64;
    for u in &batch {
        match streamed.apply_update(u) {
            Ok(()) => {}
            Err(Error::NoSuchEdge) => stream_failures += 1,
            Err(e) => return vec![format!("replay error: {e}")],
        }
    }

    let mut mismatches = Vec::new();
    if directed && stats.failed_deletes != stream_failures {
        mismatches.push(format!(
            "failed deletes: batch {} vs replay {stream_failures}",
            stats.failed_deletes
        ));
    }
    let max_count = batched.vertex_count().max(streamed.vertex_count());
    for u in 0..max_count as u32 {
        if live_multiset(&batched, u) != live_multiset(&streamed, u) {
            mismatches.push(format!("vertex {u}: live edge multisets differ"));
            continue;
        }
        let a = mass_by_id(&batched, u);
        let b = mass_by_id(&streamed, u);
        for (id, p) in &a {
            if (p - b.get(id).copied().unwrap_or(0.0)).abs() > 1e-9 {
                mismatches.push(format!("vertex {u} neighbor {id}: mass differs"));
            }
        }
    }
    mismatches
}

#[test]
fn criterion_3_batch_stream_equivalence() {
    let _g = gate();
    let started = Instant::now();
    let mismatches: Vec<String> = (0..200u64)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(4000 + i);
            let updates = if i < 190 { rng.random_range(1..=300) } else { 10_000 };
            batch_replay_case(4500 + i, updates, i % 2 == 0)
        })
        .collect();
    let elapsed = started.elapsed().as_secs_f64();
    let pass = mismatches.is_empty() && elapsed < 120.0;
    report(
        3,
        "batch equals streaming replay",
        pass,
        &format!(
            "200 batches (190 small, 10 of 10k updates), {} mismatches, {elapsed:.1}s{}",
            mismatches.len(),
            mismatches.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    );
}

#[test]
fn criterion_4_float_bias_lambda() {
    let _g = gate();
    // Three-edge float vertex: λ = 10 scales the biases to 5.54, 7.26
    // and 3.20; integer mass 15, residual mass exactly 1.0, so the
    // residual group holds exactly 1/16 of the total.
    let biases = [0.554, 0.726, 0.320];
    let choice = choose_lambda(&biases).unwrap();
    let entries: Vec<(u32, f64)> = biases.iter().enumerate().map(|(i, &b)| (i as u32, b)).collect();
    let s = VertexSampler::build(&entries, BiasMode::Float, GroupThresholds::default()).unwrap();
    let example_ok = choice.lambda == 10.0
        && choice.constraint_met
        && s.lambda_constraint_met()
        && s.decimal_group_probability() == 1.0 / 16.0;

    let mut constrained = 0usize;
    let mut bound_violations = 0usize;
    for case in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + case);
        let degree = rng.random_range(2..=100usize);
        let entries: Vec<(u32, f64)> = (0..degree)
            .map(|i| {
                let mantissa: f64 = rng.random_range(0.1..10.0);
                let exp: i32 = rng.random_range(-3..=3);
                (i as u32, mantissa * 10f64.powi(exp))
            })
            .collect();
        let s = VertexSampler::build(&entries, BiasMode::Float, GroupThresholds::default()).unwrap();
        if s.lambda_constraint_met() {
            constrained += 1;
            if s.decimal_group_probability() >= 1.0 / degree as f64 {
                bound_violations += 1;
            }
        }
    }
    let pass = example_ok && bound_violations == 0;
    report(
        4,
        "float-bias amortization factor",
        pass,
        &format!(
            "example λ=10 with residual share exactly 1/16: {example_ok}; \
             {constrained}/100 random vertices met the constraint, \
             {bound_violations} broke the 1/d residual bound"
        ),
    );
}

#[test]
fn criterion_5_update_cost_bound() {
    let _g = gate();
    let mut worst = 0u32;
    for (case, &degree) in [100usize, 1_000, 10_000, 100_000, 1_000_000].iter().enumerate() {
        for mode in [BiasMode::Integer, BiasMode::Float] {
            if mode == BiasMode::Float && degree > 10_000 {
                continue;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(6000 + case as u64);
            let entries: Vec<(u32, f64)> = (0..degree)
                .map(|i| {
                    let w = rng.random_range(1u64..1 << 20) as f64;
                    let b = match mode {
                        BiasMode::Integer => w,
                        BiasMode::Float => w / 1000.0,
                    };
                    (i as u32, b)
                })
                .collect();
            let mut s = VertexSampler::build(&entries, mode, GroupThresholds::default()).unwrap();
            for i in 0..30 {
                let w = rng.random_range(1u64..1 << 20) as f64;
                let b = if mode == BiasMode::Float { w / 1000.0 } else { w };
                s.insert(degree as u32 + i, b, (degree + i as usize) as u64).unwrap();
                worst = worst.max(s.last_update_mutations());
            }
            for _ in 0..30 {
                let idx = rng.random_range(0..s.degree());
                s.delete(idx).unwrap();
                worst = worst.max(s.last_update_mutations());
            }
        }
    }
    let pass = worst <= 65;
    report(
        5,
        "streaming update mutation bound",
        pass,
        &format!("degrees 1e2..1e6, both bias modes: worst update touched {worst} groups (bound 65)"),
    );
}

fn uniform_bias_entries(degree: usize, seed: u64) -> Vec<(u32, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..degree)
        .map(|i| (i as u32, rng.random_range(1u64..1 << 20) as f64))
        .collect()
}

fn time_radix_ns(s: &VertexSampler, n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = 0usize;
    for _ in 0..n / 4 {
        acc ^= s.sample_neighbor(&mut rng).unwrap();
    }
    let started = Instant::now();
    for _ in 0..n {
        acc ^= s.sample_neighbor(&mut rng).unwrap();
    }
    let ns = started.elapsed().as_nanos() as f64 / n as f64;
    black_box(acc);
    ns
}

fn time_its_ns(s: &CdfSampler, n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = 0usize;
    for _ in 0..n / 4 {
        acc ^= s.sample(&mut rng);
    }
    let started = Instant::now();
    for _ in 0..n {
        acc ^= s.sample(&mut rng);
    }
    let ns = started.elapsed().as_nanos() as f64 / n as f64;
    black_box(acc);
    ns
}

#[test]
fn criterion_6_constant_time_sampling_trend() {
    let _g = gate();
    let n = 2_000_000;
    let small_entries = uniform_bias_entries(100, 7000);
    let big_entries = uniform_bias_entries(1_000_000, 7001);
    let small =
        VertexSampler::build(&small_entries, BiasMode::Integer, GroupThresholds::default()).unwrap();
    let big =
        VertexSampler::build(&big_entries, BiasMode::Integer, GroupThresholds::default()).unwrap();
    let small_biases: Vec<f64> = small_entries.iter().map(|&(_, w)| w).collect();
    let big_biases: Vec<f64> = big_entries.iter().map(|&(_, w)| w).collect();
    let its_small = CdfSampler::build(&small_biases).unwrap();
    let its_big = CdfSampler::build(&big_biases).unwrap();

    // Best of three timed runs per configuration to shed scheduler noise.
    let best = |f: &dyn Fn(u64) -> f64| (0..3).map(|r| f(7100 + r)).fold(f64::INFINITY, f64::min);
    let radix_small = best(&|seed| time_radix_ns(&small, n, seed));
    let radix_big = best(&|seed| time_radix_ns(&big, n, seed));
    let its_small_ns = best(&|seed| time_its_ns(&its_small, n, seed));
    let its_big_ns = best(&|seed| time_its_ns(&its_big, n, seed));

    let radix_ratio = radix_big / radix_small;
    let its_ratio = its_big_ns / its_small_ns;
    let pass = radix_ratio <= 3.0 && its_ratio > 3.0;
    report(
        6,
        "constant-time sampling trend",
        pass,
        &format!(
            "radix {radix_small:.1}ns @1e2 vs {radix_big:.1}ns @1e6 (ratio {radix_ratio:.2}, bound 3.0); \
             reference ITS {its_small_ns:.1}ns vs {its_big_ns:.1}ns (ratio {its_ratio:.2}, must exceed 3.0)"
        ),
    );
}

#[test]
fn criterion_7_batched_update_speedup() {
    let _g = gate();
    let mut rng = ChaCha8Rng::seed_from_u64(7500);
    let edges: Vec<(u32, u32, f64)> = (0..350_000)
        .map(|_| {
            (
                rng.random_range(0..30u32),
                rng.random_range(0..30u32),
                rng.random_range(1u64..1 << 20) as f64,
            )
        })
        .collect();
    let seq_start = (edges.len() - 100_000) as u64;
    let (initial, stream) =
        generate_update_stream(&edges, 10_000, UpdateMode::Mixed, 7501, seq_start).unwrap();
    let thresholds = GroupThresholds::default();
    let mut batched = DynGraph::from_edges(&initial, BiasMode::Integer, false, thresholds).unwrap();
    let mut streamed = DynGraph::from_edges(&initial, BiasMode::Integer, false, thresholds).unwrap();

    let started = Instant::now();
    let stats = apply_batch(&mut batched, &stream).unwrap();
    let batch_secs = started.elapsed().as_secs_f64();

    let started = Instant::now();
    for u in &stream {
        streamed.apply_update(u).unwrap();
    }
    let stream_secs = started.elapsed().as_secs_f64();

    // Both paths must land on the same state for the timing to mean
    // anything.
    let mut diverged = 0;
    for u in (0..30).step_by(3) {
        let a = mass_by_id(&batched, u);
        let b = mass_by_id(&streamed, u);
        if a.len() != b.len() || a.iter().any(|(id, p)| (p - b[id]).abs() > 1e-9) {
            diverged += 1;
        }
    }
    let speedup = stream_secs / batch_secs;
    let pass = speedup >= 10.0 && stats.failed_deletes == 0 && diverged == 0;
    report(
        7,
        "batched update speedup",
        pass,
        &format!(
            "100k mixed updates: batch {batch_secs:.3}s vs stream {stream_secs:.3}s \
             ({speedup:.1}x, floor 10x), {diverged} diverged spot checks"
        ),
    );
}

/// Random graph with hub-skewed destinations and degree-derived biases.
fn power_law_edges(n: u32, m: usize, seed: u64) -> Vec<(u32, u32, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u32, u32)> = (0..m)
        .map(|_| {
            let src = rng.random_range(0..n);
            let u: f64 = rng.random();
            let dst = ((n as f64 * u * u) as u32).min(n - 1);
            (src, dst)
        })
        .collect();
    let biases = generate_biases(&pairs, BiasDistribution::DegreePowerLaw, seed).unwrap();
    pairs
        .into_iter()
        .zip(biases)
        .map(|((s, d), w)| (s, d, w))
        .collect()
}

#[test]
fn criterion_8_adaptive_representation_memory() {
    let _g = gate();
    let edges = power_law_edges(100_000, 400_000, 8000);
    let adaptive =
        DynGraph::from_edges(&edges, BiasMode::Integer, false, GroupThresholds::default()).unwrap();
    let baseline =
        DynGraph::from_edges(&edges, BiasMode::Integer, false, GroupThresholds::all_regular())
            .unwrap();
    let adaptive_slots = adaptive.total_memory_slots();
    let baseline_slots = baseline.total_memory_slots();
    let ratio = adaptive_slots as f64 / baseline_slots as f64;

    let mut rng = ChaCha8Rng::seed_from_u64(8001);
    let live: Vec<u32> = adaptive.vertices().collect();
    let sample: Vec<u32> = (0..2000).map(|_| live[rng.random_range(0..live.len())]).collect();
    let equivalence = scratch_equivalence(&adaptive, &sample);

    let avg_degree = 2.0 * edges.len() as f64 / 100_000.0;
    let pass = ratio <= 0.5 && equivalence.is_clean() && avg_degree >= 8.0;
    report(
        8,
        "adaptive representation memory",
        pass,
        &format!(
            "1e5 vertices, avg degree {avg_degree:.1}: {adaptive_slots} adaptive slots vs \
             {baseline_slots} all-regular ({:.1}% , bound 50%); equivalence violations {}",
            100.0 * ratio,
            equivalence.violations.len()
        ),
    );
}

#[test]
fn criterion_9_node2vec_second_order_distribution() {
    let _g = gate();
    let started = Instant::now();
    let combos = [(0.5, 2.0), (1.0, 1.0), (2.0, 0.5)];
    let worst_tv: f64 = (0..50u64)
        .into_par_iter()
        .map(|case| {
            let mut rng = ChaCha8Rng::seed_from_u64(9000 + case);
            let n = rng.random_range(4..=10u32);
            let mut edges: Vec<(u32, u32, f64)> = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.random::<bool>() {
                        edges.push((i, j, rng.random_range(1u64..=10) as f64));
                    }
                }
            }
            if edges.is_empty() {
                edges.push((0, 1, 1.0));
            }
            let g =
                DynGraph::from_edges(&edges, BiasMode::Integer, false, GroupThresholds::default())
                    .unwrap();
            let (prev, cur, _) = edges[0];
            let mut worst: f64 = 0.0;
            for (ci, &(p, q)) in combos.iter().enumerate() {
                let brute = brute_force_second_order(&g, prev, cur, p, q).unwrap();
                let ids: Vec<u32> =
                    g.sampler(cur).unwrap().neighbors().iter().map(|n| n.id).collect();
                let mut expected: HashMap<u32, f64> = HashMap::new();
                for (id, pr) in ids.iter().zip(&brute) {
                    *expected.entry(*id).or_insert(0.0) += pr;
                }
                let f_max = (1.0 / p).max(1.0).max(1.0 / q);
                let mut step_rng = ChaCha8Rng::seed_from_u64(9100 + case * 10 + ci as u64);
                let mut counts: HashMap<u32, u64> = HashMap::new();
                let trials = 1_000_000;
                for _ in 0..trials {
                    let next = node2vec_step(&g, prev, cur, p, q, f_max, &mut step_rng).unwrap();
                    *counts.entry(next).or_insert(0) += 1;
                }
                let mut keys: Vec<u32> = expected.keys().copied().collect();
                keys.sort_unstable();
                let want: Vec<f64> = keys.iter().map(|k| expected[k]).collect();
                let got: Vec<f64> = keys
                    .iter()
                    .map(|k| counts.get(k).copied().unwrap_or(0) as f64 / trials as f64)
                    .collect();
                worst = worst.max(tv_distance(&got, &want).unwrap());
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    let elapsed = started.elapsed().as_secs_f64();
    let pass = worst_tv < 0.01;
    report(
        9,
        "node2vec second-order correctness",
        pass,
        &format!(
            "50 graphs x 3 (p,q) combos x 1e6 trials: worst TV {worst_tv:.5} (bound 0.01), {elapsed:.1}s"
        ),
    );
}

#[test]
fn criterion_10_walk_lengths() {
    let _g = gate();
    let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
    for i in 0..64u32 {
        g.insert_edge(i, (i + 1) % 64, 1.0).unwrap();
    }
    let sources: Vec<u32> = (0..1_000_000u32).map(|i| i % 64).collect();
    let (walks, _) = ppr_walks(&g, &sources, 1.0 / 80.0, 10_000).unwrap();
    let mean_steps = walks.iter().map(|w| w.steps() as f64).sum::<f64>() / walks.len() as f64;

    let starts: Vec<u32> = (0..64).collect();
    let dw = deepwalk_walks(&g, &starts, 80, 10_001).unwrap();
    let all_full = dw.iter().all(|w| w.vertices.len() == 81);

    let pass = (mean_steps - 80.0).abs() < 0.5 && all_full;
    report(
        10,
        "walk length distributions",
        pass,
        &format!(
            "PPR mean steps {mean_steps:.3} over 1e6 walks (80 ± 0.5); \
             all DeepWalk walks 81 vertices: {all_full}"
        ),
    );
}

#[test]
fn criterion_11_dense_rejection_efficiency() {
    let _g = gate();
    let edges = power_law_edges(20_000, 100_000, 11_000);
    let g =
        DynGraph::from_edges(&edges, BiasMode::Integer, false, GroupThresholds::default()).unwrap();
    let live: Vec<u32> = g.vertices().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11_001);
    let mut trace = SampleTrace::default();
    for _ in 0..2_000_000 {
        let u = live[rng.random_range(0..live.len())];
        g.sampler(u).unwrap().sample_neighbor_traced(&mut rng, &mut trace).unwrap();
    }
    let mean = trace.dense_iterations as f64 / trace.dense_selections as f64;
    let pass = trace.dense_selections > 0 && mean < 2.5;
    report(
        11,
        "dense rejection efficiency",
        pass,
        &format!(
            "power-law workload, {} dense group selections: mean {mean:.3} rejection \
             iterations (bound 2.5)",
            trace.dense_selections
        ),
    );
}

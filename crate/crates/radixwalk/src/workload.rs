//! Evaluation inputs: update-stream generation from a base edge list and
//! synthetic bias assignment.

use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeUpdate, UpdateOp};

/// Which operations an update stream contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateMode {
    Insertion,
    Deletion,
    Mixed,
}

impl UpdateMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "insertion" => Ok(UpdateMode::Insertion),
            "deletion" => Ok(UpdateMode::Deletion),
            "mixed" => Ok(UpdateMode::Mixed),
            other => Err(Error::Config(format!("unknown update mode {other:?}"))),
        }
    }
}

/// Splits the full edge list into an initial set A and a reserve B of
/// `10·batchsize` edges, then emits `10·batchsize` timestamped updates:
/// deletions target a uniform live edge of A, insertions move a uniform
/// unused edge of B into A, and Mixed flips a fair coin per event.
/// Timestamps start at `seq_start` (the sequence number right after the
/// initial set) and increase by one per event.
pub fn generate_update_stream(
    edges: &[(u32, u32, f64)],
    batchsize: usize,
    mode: UpdateMode,
    seed: u64,
    seq_start: u64,
) -> Result<(Vec<(u32, u32, f64)>, Vec<EdgeUpdate>)> {
    let reserve = 10 * batchsize;
    if edges.len() <= reserve {
        return Err(Error::WorkloadInfeasible(format!(
            "need more than {reserve} edges, got {}",
            edges.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shuffled = edges.to_vec();
    shuffled.shuffle(&mut rng);
    let mut reserve_b = shuffled.split_off(shuffled.len() - reserve);
    let initial = shuffled.clone();
    let mut live = shuffled;

    let mut stream = Vec::with_capacity(reserve);
    for i in 0..reserve {
        let insert = match mode {
            UpdateMode::Insertion => true,
            UpdateMode::Deletion => false,
            UpdateMode::Mixed => rng.random::<bool>(),
        };
        let seq = seq_start + i as u64;
        if insert {
            if reserve_b.is_empty() {
                return Err(Error::WorkloadInfeasible(
                    "insertion reserve exhausted".into(),
                ));
            }
            let pick = rng.random_range(0..reserve_b.len());
            let (src, dst, bias) = reserve_b.swap_remove(pick);
            live.push((src, dst, bias));
            stream.push(EdgeUpdate { op: UpdateOp::Insert, src, dst, bias, seq });
        } else {
            if live.is_empty() {
                return Err(Error::WorkloadInfeasible(
                    "no live edges left to delete".into(),
                ));
            }
            let pick = rng.random_range(0..live.len());
            let (src, dst, _) = live.swap_remove(pick);
            stream.push(EdgeUpdate { op: UpdateOp::Delete, src, dst, bias: 0.0, seq });
        }
    }
    Ok((initial, stream))
}

/// Synthetic bias generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BiasDistribution {
    /// Bias of edge (u, v) = degree(v), counting every endpoint
    /// occurrence in the edge list. Degree-derived biases follow the
    /// graph's own power law.
    DegreePowerLaw,
    /// Uniform integers in [1, max].
    Uniform { max: u64 },
    /// round(Exp(rate)) + 1.
    Exponential { rate: f64 },
}

/// One bias per edge, deterministic in `seed`.
pub fn generate_biases(
    edges: &[(u32, u32)],
    distribution: BiasDistribution,
    seed: u64,
) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match distribution {
        BiasDistribution::DegreePowerLaw => {
            let n = edges
                .iter()
                .map(|&(s, d)| s.max(d) as usize + 1)
                .max()
                .unwrap_or(0);
            let mut degree = vec![0u64; n];
            for &(s, d) in edges {
                degree[s as usize] += 1;
                degree[d as usize] += 1;
            }
            Ok(edges.iter().map(|&(_, d)| degree[d as usize] as f64).collect())
        }
        BiasDistribution::Uniform { max } => {
            if max < 1 {
                return Err(Error::Config("uniform bias needs max >= 1".into()));
            }
            Ok(edges
                .iter()
                .map(|_| rng.random_range(1..=max) as f64)
                .collect())
        }
        BiasDistribution::Exponential { rate } => {
            if !(rate > 0.0) {
                return Err(Error::Config("exponential bias needs rate > 0".into()));
            }
            Ok(edges
                .iter()
                .map(|_| {
                    let u: f64 = rng.random();
                    (-(1.0 - u).ln() / rate).round() + 1.0
                })
                .collect())
        }
    }
}

/// Writes a stream as one update per line:
/// `I src dst bias seq` or `D src dst seq`.
pub fn write_stream<W: Write>(mut w: W, stream: &[EdgeUpdate]) -> Result<()> {
    for u in stream {
        match u.op {
            UpdateOp::Insert => writeln!(w, "I {} {} {} {}", u.src, u.dst, u.bias, u.seq)?,
            UpdateOp::Delete => writeln!(w, "D {} {} {}", u.src, u.dst, u.seq)?,
        }
    }
    Ok(())
}

/// Parses the line format written by [`write_stream`].
pub fn parse_stream<R: BufRead>(r: R) -> Result<Vec<EdgeUpdate>> {
    let mut out = Vec::new();
    for (line_no, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse { line: line_no + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let update = match fields.as_slice() {
            ["I", src, dst, bias, seq] => EdgeUpdate {
                op: UpdateOp::Insert,
                src: src.parse().map_err(|_| bad(format!("bad src {src:?}")))?,
                dst: dst.parse().map_err(|_| bad(format!("bad dst {dst:?}")))?,
                bias: bias.parse().map_err(|_| bad(format!("bad bias {bias:?}")))?,
                seq: seq.parse().map_err(|_| bad(format!("bad seq {seq:?}")))?,
            },
            ["D", src, dst, seq] => EdgeUpdate {
                op: UpdateOp::Delete,
                src: src.parse().map_err(|_| bad(format!("bad src {src:?}")))?,
                dst: dst.parse().map_err(|_| bad(format!("bad dst {dst:?}")))?,
                bias: 0.0,
                seq: seq.parse().map_err(|_| bad(format!("bad seq {seq:?}")))?,
            },
            _ => return Err(bad(format!("expected update line, got {line:?}"))),
        };
        out.push(update);
    }
    Ok(out)
}

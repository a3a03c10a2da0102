//! Random-walk applications: biased DeepWalk, second-order node2vec via
//! rejection sampling, and personalized PageRank.
//!
//! Walkers run in parallel over a read-only graph. Each walker draws from
//! its own RNG substream keyed by (seed, walker id), so results are
//! deterministic regardless of scheduling or thread count. Dead-end
//! vertices truncate walks instead of erroring: deletions can strand a
//! walker mid-application.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::DynGraph;

/// Hyper-parameters shared by the walk applications.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkConfig {
    pub walk_length: usize,
    pub p: f64,
    pub q: f64,
    pub termination_prob: f64,
    pub seed: u64,
}

impl Default for WalkConfig {
    fn default() -> Self {
        Self {
            walk_length: 80,
            p: 0.5,
            q: 2.0,
            termination_prob: 1.0 / 80.0,
            seed: 0,
        }
    }
}

/// One walk path; the first vertex is the start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub vertices: Vec<u32>,
}

impl Walk {
    /// Steps taken (edges traversed).
    pub fn steps(&self) -> usize {
        self.vertices.len() - 1
    }
}

fn walker_rng(seed: u64, walker_id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(walker_id);
    rng
}

fn check_start(g: &DynGraph, start: u32) -> Result<()> {
    if (start as usize) < g.vertex_count() {
        Ok(())
    } else {
        Err(Error::UnknownVertex(start))
    }
}

fn step<R: Rng + ?Sized>(g: &DynGraph, at: u32, rng: &mut R) -> Result<Option<u32>> {
    let sampler = g.sampler(at)?;
    if sampler.degree() == 0 {
        return Ok(None);
    }
    let idx = sampler.sample_neighbor(rng)?;
    Ok(Some(sampler.neighbors()[idx].id))
}

/// First-order biased walks of exactly `walk_length` steps (early stop
/// only at a dead end).
pub fn deepwalk_walks(g: &DynGraph, starts: &[u32], walk_length: usize, seed: u64) -> Result<Vec<Walk>> {
    starts
        .par_iter()
        .enumerate()
        .map(|(walker, &start)| {
            check_start(g, start)?;
            let mut rng = walker_rng(seed, walker as u64);
            let mut vertices = Vec::with_capacity(walk_length + 1);
            vertices.push(start);
            let mut cur = start;
            for _ in 0..walk_length {
                match step(g, cur, &mut rng)? {
                    Some(next) => {
                        vertices.push(next);
                        cur = next;
                    }
                    None => break,
                }
            }
            Ok(Walk { vertices })
        })
        .collect()
}

/// Second-order reweighting factor: 1/p to backtrack, 1 toward a common
/// neighbor of the previous vertex, 1/q otherwise.
pub fn node2vec_factor(g: &DynGraph, prev: u32, candidate: u32, p: f64, q: f64) -> f64 {
    if candidate == prev {
        1.0 / p
    } else if g.has_edge(prev, candidate) {
        1.0
    } else {
        1.0 / q
    }
}

/// One second-order step from `cur` given history `prev`. Proposals come
/// from the static bias distribution; a proposal `v` is accepted iff
/// `u · f_max < f(prev, v)`, which yields the normalized product of the
/// bias distribution and the second-order factor.
pub fn node2vec_step<R: Rng + ?Sized>(
    g: &DynGraph,
    prev: u32,
    cur: u32,
    p: f64,
    q: f64,
    f_max: f64,
    rng: &mut R,
) -> Result<u32> {
    let sampler = g.sampler(cur)?;
    loop {
        let idx = sampler.sample_neighbor(rng)?;
        let candidate = sampler.neighbors()[idx].id;
        let coin: f64 = rng.random();
        if coin * f_max < node2vec_factor(g, prev, candidate, p, q) {
            return Ok(candidate);
        }
    }
}

/// Second-order walks; the first step has no history and is plain biased
/// sampling, later steps go through [`node2vec_step`].
pub fn node2vec_walks(
    g: &DynGraph,
    starts: &[u32],
    walk_length: usize,
    p: f64,
    q: f64,
    seed: u64,
) -> Result<Vec<Walk>> {
    if !(p > 0.0) || !(q > 0.0) {
        return Err(Error::Config(format!("p and q must be positive, got p={p} q={q}")));
    }
    let f_max = (1.0 / p).max(1.0).max(1.0 / q);
    starts
        .par_iter()
        .enumerate()
        .map(|(walker, &start)| {
            check_start(g, start)?;
            let mut rng = walker_rng(seed, walker as u64);
            let mut vertices = Vec::with_capacity(walk_length + 1);
            vertices.push(start);
            let mut cur = start;
            let mut prev: Option<u32> = None;
            for _ in 0..walk_length {
                let sampler = g.sampler(cur)?;
                if sampler.degree() == 0 {
                    break;
                }
                let next = match prev {
                    None => {
                        let idx = sampler.sample_neighbor(&mut rng)?;
                        sampler.neighbors()[idx].id
                    }
                    Some(prev) => node2vec_step(g, prev, cur, p, q, f_max, &mut rng)?,
                };
                vertices.push(next);
                prev = Some(cur);
                cur = next;
            }
            Ok(Walk { vertices })
        })
        .collect()
}

/// Personalized-PageRank walks: after every step the walker stops with
/// probability `termination_prob`, so step counts are geometric with mean
/// `1/termination_prob` (always at least one step). Returns the walks and
/// per-vertex visit counts; the start vertex is counted as visited.
pub fn ppr_walks(
    g: &DynGraph,
    sources: &[u32],
    termination_prob: f64,
    seed: u64,
) -> Result<(Vec<Walk>, Vec<u64>)> {
    if !(termination_prob > 0.0 && termination_prob <= 1.0) {
        return Err(Error::Config(format!(
            "termination probability must be in (0, 1], got {termination_prob}"
        )));
    }
    let walks: Vec<Walk> = sources
        .par_iter()
        .enumerate()
        .map(|(walker, &start)| {
            check_start(g, start)?;
            let mut rng = walker_rng(seed, walker as u64);
            let mut vertices = vec![start];
            let mut cur = start;
            loop {
                match step(g, cur, &mut rng)? {
                    Some(next) => {
                        vertices.push(next);
                        cur = next;
                    }
                    None => break,
                }
                if rng.random::<f64>() < termination_prob {
                    break;
                }
            }
            Ok(Walk { vertices })
        })
        .collect::<Result<_>>()?;
    let mut visits = vec![0u64; g.vertex_count()];
    for walk in &walks {
        for &v in &walk.vertices {
            visits[v as usize] += 1;
        }
    }
    Ok((walks, visits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radix::{BiasMode, GroupThresholds};
    use std::io::Cursor;

    fn running_example() -> DynGraph {
        DynGraph::load_edge_list(
            Cursor::new("2 1 5\n2 4 4\n2 5 3\n"),
            BiasMode::Integer,
            true,
            GroupThresholds::default(),
        )
        .unwrap()
    }

    fn cycle(n: u32) -> DynGraph {
        let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
        for i in 0..n {
            g.insert_edge(i, (i + 1) % n, 1.0).unwrap();
        }
        g
    }

    #[test]
    fn zero_length_walk_is_the_start() {
        let g = running_example();
        let walks = deepwalk_walks(&g, &[2], 0, 1).unwrap();
        assert_eq!(walks[0].vertices, vec![2]);
    }

    #[test]
    fn connected_graph_gives_full_length_walks() {
        let g = cycle(6);
        let walks = deepwalk_walks(&g, &(0..6).collect::<Vec<_>>(), 80, 1).unwrap();
        for w in &walks {
            assert_eq!(w.vertices.len(), 81);
        }
    }

    #[test]
    fn dead_end_truncates() {
        let g = running_example();
        // Vertex 1 has no outgoing edges in the directed load.
        let walks = deepwalk_walks(&g, &[1], 5, 1).unwrap();
        assert_eq!(walks[0].vertices, vec![1]);
        let walks = deepwalk_walks(&g, &[2], 5, 1).unwrap();
        assert_eq!(walks[0].vertices.len(), 2);
    }

    #[test]
    fn unknown_start_errors() {
        let g = running_example();
        assert!(matches!(
            deepwalk_walks(&g, &[99], 5, 1),
            Err(Error::UnknownVertex(99))
        ));
    }

    #[test]
    fn first_step_frequencies_match_bias() {
        let g = running_example();
        let starts = vec![2u32; 100_000];
        let walks = deepwalk_walks(&g, &starts, 1, 9).unwrap();
        let mut counts = [0u64; 3];
        for w in &walks {
            match w.vertices[1] {
                1 => counts[0] += 1,
                4 => counts[1] += 1,
                5 => counts[2] += 1,
                other => panic!("unexpected step target {other}"),
            }
        }
        let expect = [5.0 / 12.0, 4.0 / 12.0, 3.0 / 12.0];
        for (c, want) in counts.iter().zip(expect) {
            assert!((*c as f64 / 100_000.0 - want).abs() < 0.01);
        }
    }

    #[test]
    fn factor_cases() {
        let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
        g.insert_edge(0, 1, 1.0).unwrap();
        g.insert_edge(1, 2, 1.0).unwrap();
        assert_eq!(node2vec_factor(&g, 0, 0, 0.5, 2.0), 2.0);
        assert_eq!(node2vec_factor(&g, 0, 1, 0.5, 2.0), 1.0);
        assert_eq!(node2vec_factor(&g, 0, 2, 0.5, 2.0), 0.5);
    }

    #[test]
    fn second_order_path_graph_distribution() {
        // Path 0-1-2, unit biases: from (prev=0, cur=1) the normalized
        // second-order distribution is 0 → 0.8, 2 → 0.2.
        let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
        g.insert_edge(0, 1, 1.0).unwrap();
        g.insert_edge(1, 2, 1.0).unwrap();
        let starts = vec![0u32; 100_000];
        let walks = node2vec_walks(&g, &starts, 2, 0.5, 2.0, 5).unwrap();
        let mut back = 0u64;
        let mut forward = 0u64;
        for w in &walks {
            assert_eq!(w.vertices[1], 1, "only neighbor of 0");
            match w.vertices[2] {
                0 => back += 1,
                2 => forward += 1,
                other => panic!("unexpected vertex {other}"),
            }
        }
        let n = (back + forward) as f64;
        assert!((back as f64 / n - 0.8).abs() < 0.01);
        assert!((forward as f64 / n - 0.2).abs() < 0.01);
    }

    #[test]
    fn neutral_hyperparameters_accept_everything() {
        let g = cycle(5);
        let walks = node2vec_walks(&g, &[0, 1, 2], 80, 1.0, 1.0, 3).unwrap();
        for w in &walks {
            assert_eq!(w.vertices.len(), 81);
        }
    }

    #[test]
    fn node2vec_rejects_bad_hyperparameters() {
        let g = cycle(3);
        assert!(matches!(
            node2vec_walks(&g, &[0], 2, 0.0, 1.0, 1),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn ppr_termination_one_takes_one_step() {
        let g = cycle(4);
        let (walks, visits) = ppr_walks(&g, &[0, 1, 2, 3], 1.0, 2).unwrap();
        for w in &walks {
            assert_eq!(w.steps(), 1);
        }
        assert_eq!(visits.iter().sum::<u64>(), 8);
    }

    #[test]
    fn ppr_two_vertex_graph_alternates() {
        let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
        g.insert_edge(0, 1, 1.0).unwrap();
        let (walks, visits) = ppr_walks(&g, &[0; 10_000], 0.5, 4).unwrap();
        for w in &walks {
            for (i, &v) in w.vertices.iter().enumerate() {
                assert_eq!(v as usize, i % 2, "walk strictly alternates");
            }
        }
        assert!(visits[0] >= 10_000 && visits[1] >= 10_000);
    }

    #[test]
    fn ppr_rejects_bad_termination() {
        let g = cycle(3);
        assert!(matches!(ppr_walks(&g, &[0], 0.0, 1), Err(Error::Config(_))));
        assert!(matches!(ppr_walks(&g, &[0], 1.5, 1), Err(Error::Config(_))));
    }

    #[test]
    fn walks_are_reproducible() {
        let g = cycle(8);
        let starts: Vec<u32> = (0..8).collect();
        let a = deepwalk_walks(&g, &starts, 40, 77).unwrap();
        let b = deepwalk_walks(&g, &starts, 40, 77).unwrap();
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = pool.install(|| deepwalk_walks(&g, &starts, 40, 77).unwrap());
        assert_eq!(a, c, "independent of thread count");
    }
}

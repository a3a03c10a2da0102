//! Oracles and statistical tests: distribution distances, goodness of
//! fit, brute-force second-order references, and incremental-vs-scratch
//! equivalence checks.

use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::DynGraph;
use crate::radix::VertexSampler;

fn check_distribution(p: &[f64]) -> Result<()> {
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-6 {
        return Err(Error::Config(format!("distribution sums to {sum}, not 1")));
    }
    Ok(())
}

/// Total variation distance `½·Σ|p_i − q_i|`.
pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    check_distribution(p)?;
    check_distribution(q)?;
    Ok(p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0)
}

/// Pearson goodness-of-fit statistic `Σ(O−E)²/E` with `categories − 1`
/// degrees of freedom. Every expected count must be at least 5.
pub fn chi_square_gof(observed: &[u64], expected: &[f64]) -> Result<(f64, usize)> {
    if observed.len() != expected.len() {
        return Err(Error::LengthMismatch(observed.len(), expected.len()));
    }
    check_distribution(expected)?;
    let n: u64 = observed.iter().sum();
    let mut statistic = 0.0;
    for (&o, &e) in observed.iter().zip(expected) {
        let e = e * n as f64;
        if e < 5.0 {
            return Err(Error::BinTooSmall(e));
        }
        statistic += (o as f64 - e).powi(2) / e;
    }
    Ok((statistic, observed.len() - 1))
}

/// Outcome of [`scratch_equivalence`]: per-vertex violations, empty when
/// every checked vertex matches its from-scratch rebuild.
#[derive(Debug, Clone, Default)]
pub struct EquivalenceReport {
    pub checked: usize,
    pub violations: Vec<(u32, String)>,
}

impl EquivalenceReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Line-oriented text form, one `key value` or violation per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "checked_vertices {}", self.checked).unwrap();
        writeln!(out, "violations {}", self.violations.len()).unwrap();
        for (v, msg) in &self.violations {
            writeln!(out, "violation vertex {v}: {msg}").unwrap();
        }
        out
    }
}

/// Rebuilds each vertex's sampler from scratch over the identical live
/// neighbor list and compares exact distributions within 1e-9, plus the
/// incremental structure's own invariants (bijections, conservation).
pub fn scratch_equivalence(g: &DynGraph, vertices: &[u32]) -> EquivalenceReport {
    let violations: Vec<(u32, String)> = vertices
        .par_iter()
        .flat_map_iter(|&u| {
            let mut local = Vec::new();
            let sampler = match g.sampler(u) {
                Ok(s) => s,
                Err(e) => {
                    local.push((u, e.to_string()));
                    return local.into_iter();
                }
            };
            for msg in sampler.check_invariants() {
                local.push((u, msg));
            }
            if sampler.degree() > 0 {
                let scratch = VertexSampler::build_scaled(
                    sampler.neighbors(),
                    sampler.mode(),
                    sampler.lambda(),
                    sampler.thresholds(),
                );
                let live = sampler.exact_distribution().unwrap_or_default();
                let rebuilt = scratch.exact_distribution().unwrap_or_default();
                for (i, (a, b)) in live.iter().zip(&rebuilt).enumerate() {
                    if (a - b).abs() > 1e-9 {
                        local.push((
                            u,
                            format!("neighbor {i}: incremental {a} vs scratch {b}"),
                        ));
                    }
                }
            }
            local.into_iter()
        })
        .collect();
    EquivalenceReport { checked: vertices.len(), violations }
}

/// Exact second-order step distribution from `(prev, cur)`: the
/// per-neighbor product of bias and second-order factor, normalized.
/// Indexed by position in `cur`'s neighbor list.
pub fn brute_force_second_order(
    g: &DynGraph,
    prev: u32,
    cur: u32,
    p: f64,
    q: f64,
) -> Result<Vec<f64>> {
    let sampler = g.sampler(cur)?;
    if sampler.degree() == 0 {
        return Err(Error::EmptyVertex);
    }
    let mut weights: Vec<f64> = sampler
        .neighbors()
        .iter()
        .map(|n| n.bias.scaled() * crate::walks::node2vec_factor(g, prev, n.id, p, q))
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Ok(weights)
}

/// Reference sampler using inverse transform sampling over a prefix-sum
/// table: O(d) construction, O(log d) per draw. The comparison baseline
/// for the constant-time claim of the hierarchical sampler.
#[derive(Debug, Clone)]
pub struct CdfSampler {
    prefix: Vec<f64>,
}

impl CdfSampler {
    pub fn build(biases: &[f64]) -> Result<Self> {
        if biases.is_empty() || biases.iter().any(|&b| !(b > 0.0)) {
            return Err(Error::DegenerateDistribution);
        }
        let mut prefix = Vec::with_capacity(biases.len());
        let mut acc = 0.0;
        for &b in biases {
            acc += b;
            prefix.push(acc);
        }
        Ok(Self { prefix })
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.prefix.last().unwrap();
        let x: f64 = rng.random::<f64>() * total;
        self.prefix.partition_point(|&c| c <= x).min(self.prefix.len() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radix::{BiasMode, GroupThresholds};
    use rand::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;
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

    #[test]
    fn tv_basics() {
        assert_eq!(tv_distance(&[0.5, 0.5], &[0.5, 0.5]).unwrap(), 0.0);
        assert_eq!(tv_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert!(matches!(
            tv_distance(&[1.0], &[0.5, 0.5]),
            Err(Error::LengthMismatch(1, 2))
        ));
        assert!(tv_distance(&[0.7, 0.7], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn tv_is_a_metric() {
        let p = [0.2, 0.3, 0.5];
        let q = [0.4, 0.4, 0.2];
        let r = [0.1, 0.6, 0.3];
        let d = |a: &[f64], b: &[f64]| tv_distance(a, b).unwrap();
        assert_eq!(d(&p, &q), d(&q, &p));
        assert_eq!(d(&p, &p), 0.0);
        assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r) + 1e-15);
    }

    #[test]
    fn chi_square_exact_fit_is_zero() {
        let (stat, dof) = chi_square_gof(&[250, 250, 250, 250], &[0.25; 4]).unwrap();
        assert_eq!(stat, 0.0);
        assert_eq!(dof, 3);
    }

    #[test]
    fn chi_square_rejects_small_bins() {
        assert!(matches!(
            chi_square_gof(&[9, 1], &[0.9, 0.1]),
            Err(Error::BinTooSmall(_))
        ));
    }

    #[test]
    fn chi_square_on_sampled_counts() {
        let g = running_example();
        let s = g.sampler(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut counts = [0u64; 3];
        for _ in 0..1_000_000 {
            counts[s.sample_neighbor(&mut rng).unwrap()] += 1;
        }
        let expected = s.exact_distribution().unwrap();
        let (stat, dof) = chi_square_gof(&counts, &expected).unwrap();
        assert_eq!(dof, 2);
        assert!(stat < 13.82, "χ²(2) 99.9% quantile exceeded: {stat}");
    }

    #[test]
    fn fresh_graph_is_equivalent() {
        let g = running_example();
        let vertices: Vec<u32> = g.vertices().collect();
        let report = scratch_equivalence(&g, &vertices);
        assert!(report.is_clean(), "{}", report.render());
    }

    #[test]
    fn equivalence_after_streaming_updates() {
        let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..2000 {
            let src = (rng.next_u32() % 64) as u32;
            let dst = (rng.next_u32() % 64) as u32;
            if rng.random::<bool>() || !g.has_edge(src, dst) {
                let bias = (rng.next_u32() % (1 << 20) + 1) as f64;
                g.insert_edge(src, dst, bias).unwrap();
            } else {
                g.delete_edge(src, dst).unwrap();
            }
        }
        let vertices: Vec<u32> = (0..64).collect();
        let report = scratch_equivalence(&g, &vertices);
        assert!(report.is_clean(), "{}", report.render());
    }

    #[test]
    fn corruption_is_reported() {
        let mut g = running_example();
        g.corrupt_vertex(2);
        let report = scratch_equivalence(&g, &[2]);
        assert!(!report.is_clean());
        assert!(report.render().contains("conservation"));
    }

    #[test]
    fn second_order_neutral_equals_first_order() {
        let g = running_example();
        let brute = brute_force_second_order(&g, 1, 2, 1.0, 1.0).unwrap();
        let first = g.sampler(2).unwrap().exact_distribution().unwrap();
        for (a, b) in brute.iter().zip(&first) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn second_order_path_example() {
        let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
        g.insert_edge(0, 1, 1.0).unwrap();
        g.insert_edge(1, 2, 1.0).unwrap();
        let dist = brute_force_second_order(&g, 0, 1, 0.5, 2.0).unwrap();
        let ids: Vec<u32> = g.neighbor_view(1).unwrap().ids().collect();
        for (id, p) in ids.iter().zip(&dist) {
            let want = if *id == 0 { 0.8 } else { 0.2 };
            assert!((p - want).abs() < 1e-12);
        }
    }

    #[test]
    fn second_order_triangle_example() {
        let mut g = DynGraph::new(BiasMode::Integer, false, GroupThresholds::default());
        g.insert_edge(0, 1, 1.0).unwrap();
        g.insert_edge(1, 2, 1.0).unwrap();
        g.insert_edge(0, 2, 1.0).unwrap();
        let dist = brute_force_second_order(&g, 0, 1, 0.5, 2.0).unwrap();
        let ids: Vec<u32> = g.neighbor_view(1).unwrap().ids().collect();
        for (id, p) in ids.iter().zip(&dist) {
            let want = if *id == 0 { 2.0 / 3.0 } else { 1.0 / 3.0 };
            assert!((p - want).abs() < 1e-12);
        }
    }

    #[test]
    fn cdf_sampler_matches_biases() {
        let biases = [5.0, 4.0, 3.0];
        let s = CdfSampler::build(&biases).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut counts = [0u64; 3];
        for _ in 0..200_000 {
            counts[s.sample(&mut rng)] += 1;
        }
        for (c, want) in counts.iter().zip([5.0 / 12.0, 4.0 / 12.0, 3.0 / 12.0]) {
            assert!((*c as f64 / 200_000.0 - want).abs() < 0.01);
        }
        assert!(CdfSampler::build(&[]).is_err());
        assert!(CdfSampler::build(&[1.0, 0.0]).is_err());
    }
}

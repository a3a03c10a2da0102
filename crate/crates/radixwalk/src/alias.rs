//! Vose-style alias tables for O(1) categorical sampling.
//!
//! The tables here back the inter-group stage of the hierarchical sampler,
//! so they stay small (one bucket per materialized bias group). Tables are
//! immutable after construction and rebuilt whole on update.

use rand::Rng;

use crate::error::{Error, Result};

/// Constant-time categorical sampler over a fixed set of nonnegative biases.
///
/// Construction is deterministic: the small/large worklists are seeded in
/// ascending index order and ties at the mean go to the large list, so
/// identical inputs produce bit-identical tables.
#[derive(Debug, Clone, PartialEq)]
pub struct AliasTable {
    prob: Vec<f64>,
    alias: Vec<usize>,
    total: f64,
}

impl AliasTable {
    /// Builds a table from unnormalized biases in O(n).
    pub fn build(biases: &[f64]) -> Result<Self> {
        if biases.is_empty() {
            return Err(Error::DegenerateDistribution);
        }
        let mut total = 0.0;
        for &b in biases {
            if !b.is_finite() || b < 0.0 {
                return Err(Error::InvalidBias(b));
            }
            total += b;
        }
        if total <= 0.0 {
            return Err(Error::DegenerateDistribution);
        }

        let n = biases.len();
        let mut scaled: Vec<f64> = biases.iter().map(|&b| b * n as f64 / total).collect();
        let mut small = Vec::new();
        let mut large = Vec::new();
        for (i, &s) in scaled.iter().enumerate() {
            if s < 1.0 {
                small.push(i);
            } else {
                large.push(i);
            }
        }

        let mut prob = vec![1.0; n];
        let mut alias: Vec<usize> = (0..n).collect();
        while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
            small.pop();
            prob[s] = scaled[s];
            alias[s] = l;
            scaled[l] -= 1.0 - scaled[s];
            if scaled[l] < 1.0 {
                large.pop();
                small.push(l);
            }
        }
        // Leftovers in either list carry probability 1 up to rounding.
        for i in small {
            prob[i] = 1.0;
            alias[i] = i;
        }

        Ok(Self { prob, alias, total })
    }

    pub fn len(&self) -> usize {
        self.prob.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prob.is_empty()
    }

    /// Sum of the input biases.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// Resolves one (bucket, coin) pair to the sampled index.
    #[inline]
    pub fn lookup(&self, bucket: usize, coin: f64) -> usize {
        if coin < self.prob[bucket] {
            bucket
        } else {
            self.alias[bucket]
        }
    }

    /// Samples one index with probability `bias[i] / total`.
    ///
    /// Always consumes exactly two draws: a uniform bucket and a coin.
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let bucket = rng.random_range(0..self.prob.len());
        let coin: f64 = rng.random();
        self.lookup(bucket, coin)
    }

    /// The exact distribution induced by the table, computed by summing each
    /// index's mass across its own bucket and every alias reference.
    pub fn induced_distribution(&self) -> Vec<f64> {
        let n = self.prob.len();
        let mut dist = vec![0.0; n];
        for b in 0..n {
            dist[b] += self.prob[b] / n as f64;
            dist[self.alias[b]] += (1.0 - self.prob[b]) / n as f64;
        }
        dist
    }
}

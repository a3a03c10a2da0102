//! Graph-level store: per-vertex samplers, adjacency membership and
//! sequence-stamped edge mutations.

use std::collections::HashMap;
use std::io::BufRead;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::radix::{choose_lambda, BiasMode, GroupThresholds, Neighbor, VertexSampler};

/// Kind of one streamed edge update.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateOp {
    Insert,
    Delete,
}

/// One timestamped edge mutation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeUpdate {
    pub op: UpdateOp,
    pub src: u32,
    pub dst: u32,
    /// Only meaningful for insertions.
    pub bias: f64,
    pub seq: u64,
}

/// Per-vertex state: the sampler plus live adjacency counts (instance
/// counts per neighbor id, so duplicate edges are tracked).
#[derive(Debug)]
pub(crate) struct VertexEntry {
    pub(crate) sampler: VertexSampler,
    live: HashMap<u32, u32>,
    lambda_pinned: bool,
}

impl VertexEntry {
    fn new(mode: BiasMode, thresholds: GroupThresholds) -> Self {
        Self {
            sampler: VertexSampler::new(mode, 1.0, thresholds),
            live: HashMap::new(),
            lambda_pinned: mode == BiasMode::Integer,
        }
    }

    fn from_sampler(sampler: VertexSampler) -> Self {
        let mut live = HashMap::new();
        for n in sampler.neighbors() {
            *live.entry(n.id).or_insert(0) += 1;
        }
        Self { sampler, live, lambda_pinned: true }
    }

    /// λ is fixed when the vertex first receives mass; later inserts
    /// reuse it even if the residual constraint degrades (flagged, not
    /// rescaled).
    fn pin_lambda(&mut self, first_bias: f64) -> Result<()> {
        if self.lambda_pinned {
            return Ok(());
        }
        debug_assert_eq!(self.sampler.degree(), 0);
        let choice = choose_lambda(&[first_bias])?;
        self.sampler = VertexSampler::new(
            BiasMode::Float,
            choice.lambda,
            self.sampler.thresholds(),
        );
        self.lambda_pinned = true;
        Ok(())
    }

    pub(crate) fn insert_deferred(&mut self, other: u32, bias: f64, seq: u64) -> Result<()> {
        self.pin_lambda(bias)?;
        self.sampler.insert_deferred(other, bias, seq)?;
        *self.live.entry(other).or_insert(0) += 1;
        Ok(())
    }

    fn insert_streaming(&mut self, other: u32, bias: f64, seq: u64) -> Result<()> {
        self.pin_lambda(bias)?;
        self.sampler.insert(other, bias, seq)?;
        *self.live.entry(other).or_insert(0) += 1;
        Ok(())
    }

    pub(crate) fn note_removed(&mut self, other: u32) {
        match self.live.get_mut(&other) {
            Some(count) if *count > 1 => *count -= 1,
            Some(_) => {
                self.live.remove(&other);
            }
            None => debug_assert!(false, "removal of untracked neighbor"),
        }
    }

    fn contains(&self, other: u32) -> bool {
        self.live.contains_key(&other)
    }

    /// Neighbor-list index of an instance of `other`: the one stamped
    /// `seq` when given, otherwise the earliest live instance.
    fn find_instance(&self, other: u32, seq: Option<u64>) -> Option<usize> {
        let mut best: Option<(u64, usize)> = None;
        for (idx, n) in self.sampler.neighbors().iter().enumerate() {
            if n.id != other {
                continue;
            }
            match seq {
                Some(s) => {
                    if n.seq == s {
                        return Some(idx);
                    }
                }
                None => {
                    if best.is_none_or(|(s, _)| n.seq < s) {
                        best = Some((n.seq, idx));
                    }
                }
            }
        }
        best.map(|(_, idx)| idx)
    }
}

/// Read-only snapshot of a vertex's adjacency.
pub struct NeighborView<'a> {
    neighbors: &'a [Neighbor],
    lambda: f64,
}

impl<'a> NeighborView<'a> {
    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors(&self) -> &'a [Neighbor] {
        self.neighbors
    }

    pub fn ids(&self) -> impl Iterator<Item = u32> + 'a {
        self.neighbors.iter().map(|n| n.id)
    }

    /// Bias in the caller's original scale (λ removed).
    pub fn raw_bias(&self, index: usize) -> f64 {
        self.neighbors[index].bias.scaled() / self.lambda
    }
}

/// Dynamic graph with a hierarchical sampler per vertex.
#[derive(Debug)]
pub struct DynGraph {
    mode: BiasMode,
    directed: bool,
    thresholds: GroupThresholds,
    entries: Vec<VertexEntry>,
    next_seq: AtomicU64,
}

impl DynGraph {
    pub fn new(mode: BiasMode, directed: bool, thresholds: GroupThresholds) -> Self {
        Self {
            mode,
            directed,
            thresholds,
            entries: Vec::new(),
            next_seq: AtomicU64::new(0),
        }
    }

    /// Parses "src dst bias" lines ('#' starts a comment, bias defaults
    /// to 1) and builds all vertex samplers. Sequence numbers follow
    /// file order; in float mode λ is chosen per vertex from its full
    /// initial bias set.
    pub fn load_edge_list<R: BufRead>(
        reader: R,
        mode: BiasMode,
        directed: bool,
        thresholds: GroupThresholds,
    ) -> Result<Self> {
        let mut edges: Vec<(u32, u32, f64)> = Vec::new();
        for (line_no, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let parse_id = |field: Option<&str>| -> Result<u32> {
                field
                    .ok_or(())
                    .and_then(|f| f.parse().map_err(|_| ()))
                    .map_err(|_| Error::Parse {
                        line: line_no + 1,
                        message: format!("expected \"src dst [bias]\", got {line:?}"),
                    })
            };
            let src = parse_id(fields.next())?;
            let dst = parse_id(fields.next())?;
            let bias: f64 = match fields.next() {
                Some(f) => f.parse().map_err(|_| Error::Parse {
                    line: line_no + 1,
                    message: format!("invalid bias {f:?}"),
                })?,
                None => 1.0,
            };
            if !bias.is_finite() || bias <= 0.0 {
                return Err(Error::Parse {
                    line: line_no + 1,
                    message: format!("bias must be positive, got {bias}"),
                });
            }
            edges.push((src, dst, bias));
        }
        Self::from_edges(&edges, mode, directed, thresholds)
    }

    /// Builds a graph from an in-memory edge list; sequence numbers
    /// follow slice order.
    pub fn from_edges(
        edges: &[(u32, u32, f64)],
        mode: BiasMode,
        directed: bool,
        thresholds: GroupThresholds,
    ) -> Result<Self> {
        let vertex_count = edges
            .iter()
            .map(|&(s, d, _)| s.max(d) as usize + 1)
            .max()
            .unwrap_or(0);
        let mut adjacency: Vec<Vec<(u32, f64, u64)>> = vec![Vec::new(); vertex_count];
        for (i, &(src, dst, bias)) in edges.iter().enumerate() {
            let seq = i as u64;
            adjacency[src as usize].push((dst, bias, seq));
            if !directed && src != dst {
                adjacency[dst as usize].push((src, bias, seq));
            }
        }

        let mut entries = Vec::with_capacity(vertex_count);
        for list in &adjacency {
            let sampler = VertexSampler::build_with(list, mode, None, thresholds)?;
            entries.push(VertexEntry::from_sampler(sampler));
        }
        Ok(Self {
            mode,
            directed,
            thresholds,
            entries,
            next_seq: AtomicU64::new(edges.len() as u64),
        })
    }

    pub fn mode(&self) -> BiasMode {
        self.mode
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn thresholds(&self) -> GroupThresholds {
        self.thresholds
    }

    pub fn vertex_count(&self) -> usize {
        self.entries.len()
    }

    pub fn next_seq(&self) -> u64 {
        self.next_seq.load(Ordering::Relaxed)
    }

    pub(crate) fn bump_seq(&mut self, to: u64) {
        let current = self.next_seq.get_mut();
        if *current < to {
            *current = to;
        }
    }

    /// Grows the vertex set so `id` is addressable.
    pub fn ensure_vertex(&mut self, id: u32) {
        while self.entries.len() <= id as usize {
            self.entries.push(VertexEntry::new(self.mode, self.thresholds));
        }
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [VertexEntry] {
        &mut self.entries
    }

    fn entry(&self, u: u32) -> Result<&VertexEntry> {
        self.entries.get(u as usize).ok_or(Error::UnknownVertex(u))
    }

    pub fn sampler(&self, u: u32) -> Result<&VertexSampler> {
        Ok(&self.entry(u)?.sampler)
    }

    pub fn degree(&self, u: u32) -> usize {
        self.entries
            .get(u as usize)
            .map_or(0, |e| e.sampler.degree())
    }

    /// True when at least one live (u, v) instance exists.
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.entries
            .get(u as usize)
            .is_some_and(|e| e.contains(v))
    }

    pub fn neighbor_view(&self, u: u32) -> Result<NeighborView<'_>> {
        let entry = self.entry(u)?;
        Ok(NeighborView {
            neighbors: entry.sampler.neighbors(),
            lambda: entry.sampler.lambda(),
        })
    }

    /// Inserts one edge, stamping it with the next sequence number.
    /// Undirected graphs mirror the mutation on both endpoints under the
    /// same stamp.
    pub fn insert_edge(&mut self, src: u32, dst: u32, bias: f64) -> Result<u64> {
        let seq = self.next_seq.fetch_add(1, Ordering::Relaxed);
        self.insert_edge_stamped(src, dst, bias, seq)?;
        Ok(seq)
    }

    fn insert_edge_stamped(&mut self, src: u32, dst: u32, bias: f64, seq: u64) -> Result<()> {
        self.ensure_vertex(src.max(dst));
        self.entries[src as usize].insert_streaming(dst, bias, seq)?;
        if !self.directed && src != dst {
            self.entries[dst as usize].insert_streaming(src, bias, seq)?;
        }
        Ok(())
    }

    /// Deletes the live (src, dst) instance with the smallest sequence
    /// number.
    pub fn delete_edge(&mut self, src: u32, dst: u32) -> Result<()> {
        let entry = self
            .entries
            .get_mut(src as usize)
            .ok_or(Error::NoSuchEdge)?;
        let idx = entry.find_instance(dst, None).ok_or(Error::NoSuchEdge)?;
        let removed = entry.sampler.delete(idx)?;
        entry.note_removed(dst);
        if !self.directed && src != dst {
            let mirror = &mut self.entries[dst as usize];
            let idx = mirror
                .find_instance(src, Some(removed.seq))
                .expect("undirected edges are mirrored");
            mirror.sampler.delete(idx)?;
            mirror.note_removed(src);
        }
        Ok(())
    }

    /// Replaces the bias of the earliest live (src, dst) instance:
    /// a deletion followed by an insertion under a fresh stamp.
    pub fn update_bias(&mut self, src: u32, dst: u32, new_bias: f64) -> Result<()> {
        if !self.has_edge(src, dst) {
            return Err(Error::NoSuchEdge);
        }
        self.delete_edge(src, dst)?;
        self.insert_edge(src, dst, new_bias)?;
        Ok(())
    }

    /// Applies one streamed update under the stream's own timestamp, so
    /// a replay reproduces the stamps a batched application would assign.
    pub fn apply_update(&mut self, update: &EdgeUpdate) -> Result<()> {
        let result = match update.op {
            UpdateOp::Insert => {
                self.insert_edge_stamped(update.src, update.dst, update.bias, update.seq)
            }
            UpdateOp::Delete => self.delete_edge(update.src, update.dst),
        };
        self.bump_seq(update.seq + 1);
        result
    }

    /// Index/residual slot total across all vertex samplers.
    pub fn total_memory_slots(&self) -> usize {
        self.entries.iter().map(|e| e.sampler.memory_slots()).sum()
    }

    /// Test fixture: corrupts one vertex's cached group sum so the
    /// equivalence checker has something to report.
    #[doc(hidden)]
    pub fn corrupt_vertex(&mut self, u: u32) {
        self.entries[u as usize].sampler.corrupt_group_sum();
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.entries.len() as u32).filter(|&u| self.entries[u as usize].sampler.degree() > 0)
    }
}

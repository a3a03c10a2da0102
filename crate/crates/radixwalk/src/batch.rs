//! High-throughput batched updates.
//!
//! A batch is partitioned by vertex; every touched vertex then runs
//! insert → delete → rebuild, with deletions compacted through the
//! two-phase delete-and-swap. Vertices are processed in parallel; the
//! final state matches streaming the same updates in timestamp order.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DynGraph, EdgeUpdate, UpdateOp};
use crate::radix::GroupKind;

/// One element relocation performed by [`parallel_delete_and_swap`]:
/// the survivor at `from` (in the staged tail window) filled the marked
/// slot `to` in the front region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub from: usize,
    pub to: usize,
}

/// Two-phase removal of `positions` from a compact array.
///
/// Phase 1 stages the last N elements and discards the γ staged elements
/// that are themselves marked; the remaining N−γ survivors cannot be
/// deleted. Phase 2 moves those survivors into the N−γ marked slots of
/// the front region. Every move is independent (sources and targets are
/// disjoint), so no survivor is overwritten before being read.
///
/// Returns the moves so callers can patch dependent inverted indices.
pub fn parallel_delete_and_swap<T>(list: &mut Vec<T>, positions: &[usize]) -> Result<Vec<Move>> {
    let n = positions.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let len = list.len();
    if n > len {
        return Err(Error::InvalidPositions);
    }
    let mut marked = vec![false; len];
    for &p in positions {
        if p >= len || marked[p] {
            return Err(Error::InvalidPositions);
        }
        marked[p] = true;
    }
    let new_len = len - n;
    let survivors: Vec<usize> = (new_len..len).filter(|&i| !marked[i]).collect();
    let holes: Vec<usize> = (0..new_len).filter(|&i| marked[i]).collect();
    debug_assert_eq!(survivors.len(), holes.len());
    let moves: Vec<Move> = survivors
        .into_iter()
        .zip(holes)
        .map(|(from, to)| Move { from, to })
        .collect();
    for mv in &moves {
        list.swap(mv.from, mv.to);
    }
    list.truncate(new_len);
    Ok(moves)
}

/// One update as seen from a single endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexUpdate {
    pub op: UpdateOp,
    pub other: u32,
    pub bias: f64,
    pub seq: u64,
}

/// Stable partition of a batch into per-vertex update lists; timestamp
/// order is preserved within each list. Undirected updates contribute to
/// both endpoints.
pub fn partition_updates_by_vertex(
    batch: &[EdgeUpdate],
    directed: bool,
) -> BTreeMap<u32, Vec<VertexUpdate>> {
    let mut map: BTreeMap<u32, Vec<VertexUpdate>> = BTreeMap::new();
    for u in batch {
        map.entry(u.src).or_default().push(VertexUpdate {
            op: u.op,
            other: u.dst,
            bias: u.bias,
            seq: u.seq,
        });
        if !directed && u.src != u.dst {
            map.entry(u.dst).or_default().push(VertexUpdate {
                op: u.op,
                other: u.src,
                bias: u.bias,
                seq: u.seq,
            });
        }
    }
    map
}

/// Counters and timings from one [`apply_batch`] call.
#[derive(Debug, Clone, Default)]
pub struct BatchStats {
    pub inserts: u64,
    pub deletes: u64,
    /// Deletions that had no live target under sequential timestamp
    /// semantics; recorded and skipped, never applied silently.
    pub failed_deletes: u64,
    pub touched_vertices: u64,
    pub transitions: HashMap<(GroupKind, GroupKind), u64>,
    pub elapsed: Duration,
}

impl BatchStats {
    pub fn merge(&mut self, other: &BatchStats) {
        self.inserts += other.inserts;
        self.deletes += other.deletes;
        self.failed_deletes += other.failed_deletes;
        self.touched_vertices += other.touched_vertices;
        for (&k, &v) in &other.transitions {
            *self.transitions.entry(k).or_default() += v;
        }
        self.elapsed += other.elapsed;
    }

    /// Flat `key value` record, one field per line, deterministic order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "inserts {}", self.inserts).unwrap();
        writeln!(out, "deletes {}", self.deletes).unwrap();
        writeln!(out, "failed_deletes {}", self.failed_deletes).unwrap();
        writeln!(out, "touched_vertices {}", self.touched_vertices).unwrap();
        let mut keys: Vec<_> = self.transitions.iter().collect();
        keys.sort_by_key(|((from, to), _)| (from.name(), to.name()));
        for ((from, to), count) in keys {
            writeln!(out, "transition_{}_{} {}", from.name(), to.name(), count).unwrap();
        }
        writeln!(out, "elapsed_us {}", self.elapsed.as_micros()).unwrap();
        out
    }
}

/// Applies a timestamp-ordered batch: per touched vertex all insertions
/// first (append-only), then all deletions (earliest live instance first,
/// two-phase delete-and-swap), then exactly one rebuild. Deletions whose
/// target was never live at their timestamp are counted as failures and
/// skipped, matching what sequential replay would have rejected.
pub fn apply_batch(g: &mut DynGraph, batch: &[EdgeUpdate]) -> Result<BatchStats> {
    for pair in batch.windows(2) {
        if pair[1].seq <= pair[0].seq {
            return Err(Error::InvalidBatch(
                "timestamps must be strictly increasing".into(),
            ));
        }
    }
    let directed = g.directed();
    let per_vertex = partition_updates_by_vertex(batch, directed);
    if let Some((&max_vertex, _)) = per_vertex.iter().next_back() {
        g.ensure_vertex(max_vertex);
    }
    let max_seq = batch.last().map(|u| u.seq);

    let started = Instant::now();
    let mut stats = g
        .entries_mut()
        .par_iter_mut()
        .enumerate()
        .filter_map(|(i, entry)| per_vertex.get(&(i as u32)).map(|updates| (entry, updates)))
        .map(|(entry, updates)| apply_vertex_updates(entry, updates.as_slice()))
        .try_reduce(BatchStats::default, |mut a, b| {
            a.merge(&b);
            Ok(a)
        })?;
    stats.elapsed = started.elapsed();
    if let Some(seq) = max_seq {
        g.bump_seq(seq + 1);
    }
    Ok(stats)
}

fn apply_vertex_updates(
    entry: &mut crate::graph::VertexEntry,
    updates: &[VertexUpdate],
) -> Result<BatchStats> {
    let mut stats = BatchStats {
        touched_vertices: 1,
        ..BatchStats::default()
    };

    // Insert phase: append-only, no inter-group rebuild.
    for u in updates {
        if u.op == UpdateOp::Insert {
            entry.insert_deferred(u.other, u.bias, u.seq)?;
            stats.inserts += 1;
        }
    }

    // Delete phase: resolve each deletion to the earliest live instance
    // with a smaller timestamp, then remove all targets in one two-phase
    // delete-and-swap pass.
    let mut instances: HashMap<u32, VecDeque<(u64, usize)>> = HashMap::new();
    for (idx, n) in entry.sampler.neighbors().iter().enumerate() {
        instances.entry(n.id).or_default().push_back((n.seq, idx));
    }
    for queue in instances.values_mut() {
        queue.make_contiguous().sort_unstable();
    }
    let mut doomed = Vec::new();
    for u in updates {
        if u.op != UpdateOp::Delete {
            continue;
        }
        let target = instances
            .get_mut(&u.other)
            .and_then(|q| match q.front() {
                Some(&(seq, _)) if seq < u.seq => q.pop_front(),
                _ => None,
            });
        match target {
            Some((_, idx)) => {
                doomed.push(idx);
                stats.deletes += 1;
                entry.note_removed(u.other);
            }
            None => stats.failed_deletes += 1,
        }
    }
    entry.sampler.delete_many(&doomed)?;

    for transition in entry.sampler.rebuild() {
        *stats.transitions.entry(transition).or_default() += 1;
    }
    Ok(stats)
}

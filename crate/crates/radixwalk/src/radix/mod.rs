//! Radix-factorized per-vertex weighted sampling.
//!
//! Each edge bias is decomposed into its set binary bits; every bit
//! position forms a group whose members all contribute the same mass
//! `2^k`, so intra-group sampling is uniform. An alias table over group
//! sums drives inter-group selection, giving O(1) sampling overall while
//! a streaming insert or delete only touches the groups of one bias
//! (at most the bit width plus the residual group).

mod group;

use std::collections::HashMap;

use rand::Rng;

use crate::alias::AliasTable;
use crate::batch::parallel_delete_and_swap;
use crate::error::{Error, Result};

pub(crate) use group::{DecimalGroup, GroupRepr, NO_SLOT};

/// Bit width of integer biases.
pub const RADIX_BITS: u32 = 64;

/// How edge biases are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiasMode {
    /// Biases are positive integers; no residual group ever exists.
    Integer,
    /// Biases are positive reals, λ-scaled into an integer part plus a
    /// residual in [0,1).
    Float,
}

/// A λ-scaled bias split into integer and residual parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasValue {
    pub integer: u64,
    pub residual: f64,
}

impl BiasValue {
    pub fn from_integer(w: u64) -> Self {
        Self { integer: w, residual: 0.0 }
    }

    /// The λ-scaled bias this value reconstructs.
    pub fn scaled(&self) -> f64 {
        self.integer as f64 + self.residual
    }
}

/// Adaptive representation chosen for a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Dense,
    OneElement,
    Sparse,
    Regular,
    Decimal,
}

impl GroupKind {
    pub const ALL: [GroupKind; 5] = [
        GroupKind::Dense,
        GroupKind::OneElement,
        GroupKind::Sparse,
        GroupKind::Regular,
        GroupKind::Decimal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GroupKind::Dense => "dense",
            GroupKind::OneElement => "one_element",
            GroupKind::Sparse => "sparse",
            GroupKind::Regular => "regular",
            GroupKind::Decimal => "decimal",
        }
    }
}

/// Cardinality thresholds (in percent of degree) steering group
/// classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupThresholds {
    pub alpha: u32,
    pub beta: u32,
    /// Forces every group into the regular representation. Baseline for
    /// memory comparisons.
    pub force_regular: bool,
}

impl Default for GroupThresholds {
    fn default() -> Self {
        Self { alpha: 40, beta: 10, force_regular: false }
    }
}

impl GroupThresholds {
    pub fn all_regular() -> Self {
        Self { force_regular: true, ..Self::default() }
    }
}

/// Iterator over the set bit positions of an integer bias.
#[derive(Debug, Clone)]
pub struct SetBits(u64);

impl Iterator for SetBits {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let k = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(k)
    }
}

/// Set bit positions of `w`, ascending. `Σ 2^k` over the result equals `w`.
#[inline]
pub fn decompose_bias(w: u64) -> SetBits {
    SetBits(w)
}

/// Multiplies `w` by `10^exp` in the decimal domain: the shortest decimal
/// representation of `w` is exponent-shifted and re-parsed, so the result
/// is the f64 nearest to the true decimal product. Keeps residuals of
/// text-sourced biases free of binary multiplication noise.
pub fn decimal_shift(w: f64, exp: i32) -> f64 {
    if exp == 0 {
        return w;
    }
    let s = format!("{:e}", w);
    let (mantissa, e) = s.split_once('e').expect("f64 scientific form");
    let e: i32 = e.parse().expect("f64 exponent");
    format!("{mantissa}e{}", e + exp).parse().expect("shifted f64")
}

/// Splits `w·λ` into integer part and residual. λ must be a power of ten.
pub fn scale_float_bias(w: f64, lambda: f64) -> Result<BiasValue> {
    if !w.is_finite() || w <= 0.0 {
        return Err(Error::InvalidBias(w));
    }
    let exp = lambda.log10().round() as i32;
    let scaled = if (0..=18).contains(&exp) && 10f64.powi(exp) == lambda {
        decimal_shift(w, exp)
    } else {
        w * lambda
    };
    if !(scaled < 1.8446744073709552e19) {
        return Err(Error::LambdaOverflow { bias: w, lambda });
    }
    let integer = scaled.floor();
    Ok(BiasValue { integer: integer as u64, residual: scaled - integer })
}

/// Result of the λ search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaChoice {
    pub lambda: f64,
    /// True when the residual mass satisfies `W_D/(W_I+W_D) < 1/d`.
    /// Sampling stays correct either way; only the O(1) bound degrades.
    pub constraint_met: bool,
}

/// Smallest λ in {10^0..10^9} whose residual mass stays below `1/d` of the
/// total. Falls back to the largest usable λ with `constraint_met: false`.
pub fn choose_lambda(biases: &[f64]) -> Result<LambdaChoice> {
    let d = biases.len();
    assert!(d >= 1, "choose_lambda needs at least one bias");
    for &w in biases {
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::InvalidBias(w));
        }
    }
    let mut fallback = None;
    for exp in 0..=9 {
        let lambda = 10f64.powi(exp);
        let mut w_int = 0u128;
        let mut w_dec = 0.0f64;
        let mut overflow = false;
        for &w in biases {
            match scale_float_bias(w, lambda) {
                Ok(bv) => {
                    w_int += bv.integer as u128;
                    w_dec += bv.residual;
                }
                Err(_) => {
                    overflow = true;
                    break;
                }
            }
        }
        if overflow {
            break;
        }
        let total = w_int as f64 + w_dec;
        if w_dec / total < 1.0 / d as f64 {
            return Ok(LambdaChoice { lambda, constraint_met: true });
        }
        fallback = Some(lambda);
    }
    match fallback {
        Some(lambda) => Ok(LambdaChoice { lambda, constraint_met: false }),
        None => Err(Error::LambdaOverflow { bias: biases[0], lambda: 1.0 }),
    }
}

/// Picks the representation for a group of `group_size` members on a
/// vertex of degree `degree`. One-element groups are checked first: they
/// are strictly cheaper than the dense representation and exact.
pub fn classify_group(group_size: usize, degree: usize, t: &GroupThresholds) -> GroupKind {
    debug_assert!(group_size >= 1 && group_size <= degree);
    if t.force_regular {
        return GroupKind::Regular;
    }
    if group_size == 1 {
        GroupKind::OneElement
    } else if 100 * group_size > t.alpha as usize * degree {
        GroupKind::Dense
    } else if 100 * group_size < t.beta as usize * degree {
        GroupKind::Sparse
    } else {
        GroupKind::Regular
    }
}

/// One entry of a vertex's neighbor list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub id: u32,
    pub bias: BiasValue,
    pub seq: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GroupSel {
    Bit(u32),
    Decimal,
}

#[derive(Debug, Clone)]
struct InterTable {
    table: AliasTable,
    buckets: Vec<GroupSel>,
}

/// Rejection-loop statistics gathered by [`VertexSampler::sample_neighbor_traced`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SampleTrace {
    pub dense_selections: u64,
    pub dense_iterations: u64,
    pub decimal_selections: u64,
    pub decimal_iterations: u64,
}

impl SampleTrace {
    pub fn merge(&mut self, other: &SampleTrace) {
        self.dense_selections += other.dense_selections;
        self.dense_iterations += other.dense_iterations;
        self.decimal_selections += other.decimal_selections;
        self.decimal_iterations += other.decimal_iterations;
    }
}

/// Group-kind changes performed by one rebuild.
pub type GroupTransitions = Vec<(GroupKind, GroupKind)>;

/// Per-vertex hierarchical sampling structure.
#[derive(Debug)]
pub struct VertexSampler {
    mode: BiasMode,
    lambda: f64,
    lambda_constraint_met: bool,
    thresholds: GroupThresholds,
    neighbors: Vec<Neighbor>,
    groups: Vec<Option<GroupRepr>>,
    active_bits: u64,
    decimal: Option<DecimalGroup>,
    int_sum: u128,
    inter: Option<InterTable>,
    last_update_mutations: u32,
}

impl VertexSampler {
    /// Empty sampler. In float mode λ stays fixed for the sampler's
    /// lifetime; violations of the residual constraint are flagged, never
    /// rescaled.
    pub fn new(mode: BiasMode, lambda: f64, thresholds: GroupThresholds) -> Self {
        Self {
            mode,
            lambda,
            lambda_constraint_met: true,
            thresholds,
            neighbors: Vec::new(),
            groups: vec![None; RADIX_BITS as usize],
            active_bits: 0,
            decimal: None,
            int_sum: 0,
            inter: None,
            last_update_mutations: 0,
        }
    }

    /// Builds a sampler from scratch: inserts every neighbor, then
    /// classifies all groups at the final degree and builds the
    /// inter-group table. In float mode λ is chosen here unless pinned.
    pub fn build_with(
        entries: &[(u32, f64, u64)],
        mode: BiasMode,
        lambda: Option<f64>,
        thresholds: GroupThresholds,
    ) -> Result<Self> {
        let lambda = match (mode, lambda) {
            (BiasMode::Integer, _) => 1.0,
            (BiasMode::Float, Some(l)) => l,
            (BiasMode::Float, None) if entries.is_empty() => 1.0,
            (BiasMode::Float, None) => {
                let biases: Vec<f64> = entries.iter().map(|&(_, w, _)| w).collect();
                let choice = choose_lambda(&biases)?;
                choice.lambda
            }
        };
        let mut sampler = Self::new(mode, lambda, thresholds);
        if mode == BiasMode::Float && !entries.is_empty() {
            let biases: Vec<f64> = entries.iter().map(|&(_, w, _)| w).collect();
            sampler.lambda_constraint_met = lambda_constraint_met(&biases, lambda)?;
        }
        for &(id, bias, seq) in entries {
            sampler.insert_deferred(id, bias, seq)?;
        }
        sampler.rebuild();
        Ok(sampler)
    }

    /// Convenience build with sequence numbers assigned in input order.
    pub fn build(entries: &[(u32, f64)], mode: BiasMode, thresholds: GroupThresholds) -> Result<Self> {
        let with_seq: Vec<(u32, f64, u64)> = entries
            .iter()
            .enumerate()
            .map(|(i, &(id, w))| (id, w, i as u64))
            .collect();
        Self::build_with(&with_seq, mode, None, thresholds)
    }

    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors(&self) -> &[Neighbor] {
        &self.neighbors
    }

    pub fn mode(&self) -> BiasMode {
        self.mode
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn lambda_constraint_met(&self) -> bool {
        self.lambda_constraint_met
    }

    pub fn thresholds(&self) -> GroupThresholds {
        self.thresholds
    }

    /// Total λ-scaled bias (integer sum plus residual sum).
    pub fn total_bias(&self) -> f64 {
        self.int_sum as f64 + self.decimal.as_ref().map_or(0.0, |d| d.sum)
    }

    /// Group membership mutations performed by the most recent insert or
    /// delete: one per bit group of the updated bias plus the residual
    /// group. Index renames caused by neighbor-list compaction are O(1)
    /// patches and tracked separately from this bound.
    pub fn last_update_mutations(&self) -> u32 {
        self.last_update_mutations
    }

    /// The materialized group kinds, keyed by bit position, plus the
    /// residual group if present.
    pub fn group_kinds(&self) -> Vec<(u32, GroupKind, usize)> {
        let mut out: Vec<(u32, GroupKind, usize)> = decompose_bias(self.active_bits)
            .map(|k| {
                let g = self.groups[k as usize].as_ref().unwrap();
                (k, g.kind(), g.len())
            })
            .collect();
        if let Some(d) = &self.decimal {
            out.push((RADIX_BITS, GroupKind::Decimal, d.len()));
        }
        out
    }

    /// Inter-group selection probability of the residual group, per the
    /// current alias table inputs. Zero without a residual group.
    pub fn decimal_group_probability(&self) -> f64 {
        match &self.decimal {
            Some(d) if d.len() > 0 => d.sum / self.total_bias(),
            _ => 0.0,
        }
    }

    fn bias_value(&self, bias: f64) -> Result<BiasValue> {
        match self.mode {
            BiasMode::Integer => {
                if !bias.is_finite() || bias < 0.0 || bias.fract() != 0.0
                    || bias >= 1.8446744073709552e19
                {
                    return Err(Error::InvalidBias(bias));
                }
                if bias == 0.0 {
                    return Err(Error::ZeroBiasEdge);
                }
                Ok(BiasValue::from_integer(bias as u64))
            }
            BiasMode::Float => scale_float_bias(bias, self.lambda),
        }
    }

    /// Streaming insert: appends the neighbor, updates its groups and
    /// rebuilds the inter-group table.
    pub fn insert(&mut self, id: u32, bias: f64, seq: u64) -> Result<()> {
        self.insert_deferred(id, bias, seq)?;
        self.rebuild_inter_table();
        Ok(())
    }

    /// Insert without the inter-group rebuild. The caller must call
    /// [`rebuild`](Self::rebuild) (or another streaming update) before
    /// sampling again.
    pub fn insert_deferred(&mut self, id: u32, bias: f64, seq: u64) -> Result<()> {
        let bv = self.bias_value(bias)?;
        self.insert_value_deferred(id, bv, seq);
        Ok(())
    }

    /// Deferred insert of an already-scaled bias. Used to rebuild a
    /// sampler from another's neighbor list without re-scaling noise.
    pub(crate) fn insert_value_deferred(&mut self, id: u32, bv: BiasValue, seq: u64) {
        let idx = self.neighbors.len() as u32;
        self.neighbors.push(Neighbor { id, bias: bv, seq });
        let degree = self.neighbors.len();
        let mut mutations = 0u32;
        for k in decompose_bias(bv.integer) {
            mutations += 1;
            let slot = &mut self.groups[k as usize];
            match slot {
                None => {
                    *slot = Some(GroupRepr::One { member: idx });
                    self.active_bits |= 1 << k;
                }
                Some(repr) => {
                    if let GroupRepr::One { member } = *repr {
                        // Second member arrives: promote per the current
                        // classification.
                        let kind = classify_group(2, degree, &self.thresholds);
                        *repr = GroupRepr::from_members(kind, vec![member, idx], degree);
                    } else {
                        repr.push(idx, degree);
                    }
                }
            }
        }
        if bv.residual > 0.0 {
            mutations += 1;
            self.decimal.get_or_insert_with(DecimalGroup::default).push(idx, bv.residual);
        }
        self.int_sum += bv.integer as u128;
        self.last_update_mutations = mutations;
        self.inter = None;
    }

    /// From-scratch rebuild of the exact neighbor list of another sampler,
    /// preserving every scaled bias bit-for-bit. The reference oracle for
    /// incremental-vs-scratch equivalence checks.
    pub fn build_scaled(
        neighbors: &[Neighbor],
        mode: BiasMode,
        lambda: f64,
        thresholds: GroupThresholds,
    ) -> Self {
        let mut sampler = Self::new(mode, lambda, thresholds);
        for n in neighbors {
            sampler.insert_value_deferred(n.id, n.bias, n.seq);
        }
        sampler.rebuild();
        sampler
    }

    /// Streaming delete by neighbor index (position in the neighbor list).
    pub fn delete(&mut self, index: usize) -> Result<Neighbor> {
        let removed = self.delete_deferred(index)?;
        self.rebuild_inter_table();
        Ok(removed)
    }

    /// Delete without the inter-group rebuild.
    pub fn delete_deferred(&mut self, index: usize) -> Result<Neighbor> {
        if index >= self.neighbors.len() {
            return Err(Error::NoSuchEdge);
        }
        let removed = self.neighbors[index];
        let mut mutations = 0u32;
        for k in decompose_bias(removed.bias.integer) {
            mutations += 1;
            self.remove_from_group(k, index as u32);
        }
        if removed.bias.residual > 0.0 {
            mutations += 1;
            let decimal = self.decimal.as_mut().expect("residual recorded in decimal group");
            decimal.remove(index as u32);
            if decimal.len() == 0 {
                self.decimal = None;
            }
        }
        self.int_sum -= removed.bias.integer as u128;

        let last = self.neighbors.len() - 1;
        self.neighbors.swap_remove(index);
        if index != last {
            let moved = self.neighbors[index];
            for k in decompose_bias(moved.bias.integer) {
                self.groups[k as usize]
                    .as_mut()
                    .expect("moved neighbor's group exists")
                    .rename(last as u32, index as u32);
            }
            if moved.bias.residual > 0.0 {
                self.decimal.as_mut().unwrap().rename(last as u32, index as u32);
            }
        }
        self.last_update_mutations = mutations;
        self.inter = None;
        Ok(removed)
    }

    fn remove_from_group(&mut self, k: u32, idx: u32) {
        let slot = &mut self.groups[k as usize];
        let repr = slot.as_mut().expect("bias bit implies group");
        match repr {
            GroupRepr::One { member } => {
                debug_assert_eq!(*member, idx);
                *slot = None;
                self.active_bits &= !(1 << k);
            }
            GroupRepr::Dense { .. } => {
                repr.remove(idx);
                match repr.len() {
                    0 => {
                        *slot = None;
                        self.active_bits &= !(1 << k);
                    }
                    1 => {
                        let member = repr.collect_members()[0];
                        *repr = GroupRepr::One { member };
                    }
                    _ => {}
                }
            }
            _ => {
                repr.remove(idx);
                if repr.len() == 1 {
                    let member = repr.members().unwrap()[0];
                    *repr = GroupRepr::One { member };
                } else if repr.len() == 0 {
                    *slot = None;
                    self.active_bits &= !(1 << k);
                }
            }
        }
    }

    /// Batched deletion of several neighbor indices: a two-phase
    /// delete-and-swap per group, then one compaction of the neighbor
    /// list. Kinds are left to the following [`rebuild`](Self::rebuild).
    pub fn delete_many(&mut self, indices: &[usize]) -> Result<()> {
        if indices.is_empty() {
            return Ok(());
        }
        let mut seen = vec![false; self.neighbors.len()];
        for &i in indices {
            if i >= self.neighbors.len() || seen[i] {
                return Err(Error::InvalidPositions);
            }
            seen[i] = true;
        }

        // Per-group slot lists of members being deleted.
        let mut group_slots: HashMap<u32, Vec<usize>> = HashMap::new();
        let mut dense_losses: Vec<u32> = Vec::new();
        for &i in indices {
            let bv = self.neighbors[i].bias;
            for k in decompose_bias(bv.integer) {
                match self.groups[k as usize].as_mut().unwrap() {
                    repr @ GroupRepr::Dense { .. } => {
                        repr.remove(i as u32);
                        dense_losses.push(k);
                    }
                    GroupRepr::One { .. } => {
                        group_slots.entry(k).or_default().push(0);
                    }
                    GroupRepr::Sparse { inverted, .. } => {
                        group_slots
                            .entry(k)
                            .or_default()
                            .push(inverted[&(i as u32)] as usize);
                    }
                    GroupRepr::Regular { inverted, .. } => {
                        group_slots.entry(k).or_default().push(inverted[i] as usize);
                    }
                }
            }
            if bv.residual > 0.0 {
                let decimal = self.decimal.as_mut().unwrap();
                decimal.remove(i as u32);
            }
            self.int_sum -= bv.integer as u128;
        }
        if self.decimal.as_ref().is_some_and(|d| d.len() == 0) {
            self.decimal = None;
        }
        for k in dense_losses {
            let slot = &mut self.groups[k as usize];
            if slot.as_ref().is_some_and(|g| g.len() == 0) {
                *slot = None;
                self.active_bits &= !(1 << k);
            }
        }
        for (k, slots) in group_slots {
            let holder = &mut self.groups[k as usize];
            match holder.as_mut().unwrap() {
                GroupRepr::One { .. } => {
                    *holder = None;
                    self.active_bits &= !(1 << k);
                }
                GroupRepr::Sparse { members, inverted } => {
                    for &s in &slots {
                        inverted.remove(&members[s]);
                    }
                    let moves = parallel_delete_and_swap(members, &slots)?;
                    for mv in moves {
                        inverted.insert(members[mv.to], mv.to as u32);
                    }
                    if members.is_empty() {
                        *holder = None;
                        self.active_bits &= !(1 << k);
                    }
                }
                GroupRepr::Regular { members, inverted } => {
                    for &s in &slots {
                        inverted[members[s] as usize] = NO_SLOT;
                    }
                    let moves = parallel_delete_and_swap(members, &slots)?;
                    for mv in moves {
                        inverted[members[mv.to] as usize] = mv.to as u32;
                    }
                    if members.is_empty() {
                        *holder = None;
                        self.active_bits &= !(1 << k);
                    }
                }
                GroupRepr::Dense { .. } => unreachable!(),
            }
        }

        // Compact the neighbor list and patch surviving indices.
        let moves = parallel_delete_and_swap(&mut self.neighbors, indices)?;
        for mv in moves {
            let moved = self.neighbors[mv.to];
            for k in decompose_bias(moved.bias.integer) {
                self.groups[k as usize]
                    .as_mut()
                    .unwrap()
                    .rename(mv.from as u32, mv.to as u32);
            }
            if moved.bias.residual > 0.0 {
                self.decimal.as_mut().unwrap().rename(mv.from as u32, mv.to as u32);
            }
        }
        self.inter = None;
        Ok(())
    }

    /// Re-classifies every group at the current degree, converts
    /// representations on kind changes and rebuilds the inter-group
    /// table. Idempotent.
    pub fn rebuild(&mut self) -> GroupTransitions {
        let degree = self.neighbors.len();
        let mut transitions = Vec::new();
        if degree > 0 {
            for k in decompose_bias(self.active_bits) {
                let repr = self.groups[k as usize].as_mut().unwrap();
                let from = repr.kind();
                let to = classify_group(repr.len(), degree, &self.thresholds);
                if from != to {
                    let members = repr.collect_members();
                    *repr = GroupRepr::from_members(to, members, degree);
                    transitions.push((from, to));
                }
            }
        }
        if let Some(decimal) = &mut self.decimal {
            decimal.refresh();
        }
        self.rebuild_inter_table();
        transitions
    }

    fn rebuild_inter_table(&mut self) {
        let mut biases = Vec::new();
        let mut buckets = Vec::new();
        for k in decompose_bias(self.active_bits) {
            let len = self.groups[k as usize].as_ref().unwrap().len() as u128;
            biases.push((len << k) as f64);
            buckets.push(GroupSel::Bit(k));
        }
        if let Some(decimal) = &self.decimal {
            if decimal.len() > 0 {
                biases.push(decimal.sum);
                buckets.push(GroupSel::Decimal);
            }
        }
        self.inter = if biases.is_empty() {
            None
        } else {
            Some(InterTable {
                table: AliasTable::build(&biases).expect("group sums are positive"),
                buckets,
            })
        };
    }

    /// Samples a neighbor index with probability proportional to its
    /// λ-scaled bias.
    #[inline]
    pub fn sample_neighbor<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        self.sample_impl(rng, None)
    }

    /// Like [`sample_neighbor`](Self::sample_neighbor) but records
    /// rejection-loop iteration counts.
    pub fn sample_neighbor_traced<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        trace: &mut SampleTrace,
    ) -> Result<usize> {
        self.sample_impl(rng, Some(trace))
    }

    fn sample_impl<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        mut trace: Option<&mut SampleTrace>,
    ) -> Result<usize> {
        if self.neighbors.is_empty() {
            return Err(Error::EmptyVertex);
        }
        let inter = self
            .inter
            .as_ref()
            .expect("inter-group table pending rebuild after deferred updates");
        let bucket = inter.table.sample(rng);
        match inter.buckets[bucket] {
            GroupSel::Bit(k) => match self.groups[k as usize].as_ref().unwrap() {
                GroupRepr::One { member } => Ok(*member as usize),
                GroupRepr::Sparse { members, .. } | GroupRepr::Regular { members, .. } => {
                    let slot = rng.random_range(0..members.len());
                    Ok(members[slot] as usize)
                }
                GroupRepr::Dense { bits, .. } => {
                    if let Some(t) = trace.as_deref_mut() {
                        t.dense_selections += 1;
                    }
                    loop {
                        if let Some(t) = trace.as_deref_mut() {
                            t.dense_iterations += 1;
                        }
                        let i = rng.random_range(0..self.neighbors.len());
                        if group::bit_get(bits, i as u32) {
                            return Ok(i);
                        }
                    }
                }
            },
            GroupSel::Decimal => {
                let decimal = self.decimal.as_ref().unwrap();
                if let Some(t) = trace.as_deref_mut() {
                    t.decimal_selections += 1;
                }
                loop {
                    if let Some(t) = trace.as_deref_mut() {
                        t.decimal_iterations += 1;
                    }
                    let slot = rng.random_range(0..decimal.members.len());
                    let coin: f64 = rng.random();
                    if coin * decimal.max < decimal.residuals[slot] {
                        return Ok(decimal.members[slot] as usize);
                    }
                }
            }
        }
    }

    /// The analytically summed selection probability of every neighbor,
    /// computed from the group structure (not from the stored biases):
    /// each group contributes its inter-group probability split over its
    /// members, with dense membership resolved from the bias bits and the
    /// residual group weighted by residual mass.
    pub fn exact_distribution(&self) -> Result<Vec<f64>> {
        if self.neighbors.is_empty() {
            return Err(Error::EmptyVertex);
        }
        let total = self.total_bias();
        let mut dist = vec![0.0; self.neighbors.len()];
        for k in decompose_bias(self.active_bits) {
            let pow = (1u128 << k) as f64 / total;
            match self.groups[k as usize].as_ref().unwrap() {
                GroupRepr::One { member } => dist[*member as usize] += pow,
                GroupRepr::Sparse { members, .. } | GroupRepr::Regular { members, .. } => {
                    for &m in members {
                        dist[m as usize] += pow;
                    }
                }
                GroupRepr::Dense { .. } => {
                    let mask = 1u64 << k;
                    for (i, n) in self.neighbors.iter().enumerate() {
                        if n.bias.integer & mask != 0 {
                            dist[i] += pow;
                        }
                    }
                }
            }
        }
        if let Some(decimal) = &self.decimal {
            for (slot, &m) in decimal.members.iter().enumerate() {
                dist[m as usize] += decimal.residuals[slot] / total;
            }
        }
        Ok(dist)
    }

    /// Count of stored index/residual slots across all group structures.
    /// The neighbor list itself is excluded (owned by the graph store).
    pub fn memory_slots(&self) -> usize {
        let degree = self.neighbors.len();
        let mut slots = 0;
        for k in decompose_bias(self.active_bits) {
            slots += self.groups[k as usize].as_ref().unwrap().slot_cost(degree);
        }
        if let Some(decimal) = &self.decimal {
            slots += 2 * decimal.len();
        }
        slots
    }

    /// Structural self-check: inverted-index bijections, dense counts,
    /// conservation of mass and the induced inter-group distribution.
    /// Returns human-readable violations, empty when sound.
    pub fn check_invariants(&self) -> Vec<String> {
        let mut violations = Vec::new();
        let degree = self.neighbors.len();
        let mut bit_mass = 0u128;
        for k in decompose_bias(self.active_bits) {
            let repr = self.groups[k as usize].as_ref().unwrap();
            let mask = 1u64 << k;
            let true_count = self
                .neighbors
                .iter()
                .filter(|n| n.bias.integer & mask != 0)
                .count();
            if repr.len() != true_count {
                violations.push(format!(
                    "group 2^{k}: stored size {} != actual membership {true_count}",
                    repr.len()
                ));
            }
            bit_mass += (repr.len() as u128) << k;
            match repr {
                GroupRepr::Dense { .. } => {
                    for (i, n) in self.neighbors.iter().enumerate() {
                        if (n.bias.integer & mask != 0) != repr.is_dense_member(i as u32) {
                            violations.push(format!(
                                "group 2^{k}: dense bitset disagrees with bias at {i}"
                            ));
                        }
                    }
                }
                GroupRepr::One { member } => {
                    if *member as usize >= degree
                        || self.neighbors[*member as usize].bias.integer & mask == 0
                    {
                        violations.push(format!("group 2^{k}: one-element member invalid"));
                    }
                }
                GroupRepr::Sparse { members, inverted } => {
                    if inverted.len() != members.len() {
                        violations.push(format!("group 2^{k}: sparse inverted size mismatch"));
                    }
                    for (slot, &m) in members.iter().enumerate() {
                        if inverted.get(&m) != Some(&(slot as u32)) {
                            violations.push(format!("group 2^{k}: sparse bijection broken at {m}"));
                        }
                    }
                }
                GroupRepr::Regular { members, inverted } => {
                    for (slot, &m) in members.iter().enumerate() {
                        if inverted.get(m as usize) != Some(&(slot as u32)) {
                            violations
                                .push(format!("group 2^{k}: regular bijection broken at {m}"));
                        }
                    }
                    let occupied = inverted.iter().filter(|&&s| s != NO_SLOT).count();
                    if occupied != members.len() {
                        violations.push(format!("group 2^{k}: regular inverted has stale slots"));
                    }
                }
            }
        }
        let true_int: u128 = self.neighbors.iter().map(|n| n.bias.integer as u128).sum();
        if bit_mass != true_int {
            violations.push(format!(
                "conservation: group sums {bit_mass} != neighbor integer mass {true_int}"
            ));
        }
        if self.int_sum != true_int {
            violations.push(format!(
                "conservation: cached integer mass {} != neighbor integer mass {true_int}",
                self.int_sum
            ));
        }
        let true_residual: f64 = self.neighbors.iter().map(|n| n.bias.residual).sum();
        let stored_residual = self.decimal.as_ref().map_or(0.0, |d| d.sum);
        if (true_residual - stored_residual).abs() > 1e-9 {
            violations.push(format!(
                "conservation: residual sum {stored_residual} != neighbor residual mass {true_residual}"
            ));
        }
        if let Some(decimal) = &self.decimal {
            let expected = self
                .neighbors
                .iter()
                .filter(|n| n.bias.residual > 0.0)
                .count();
            if decimal.len() != expected {
                violations.push(format!(
                    "decimal group size {} != neighbors with residuals {expected}",
                    decimal.len()
                ));
            }
            for (slot, &m) in decimal.members.iter().enumerate() {
                if decimal.inverted.get(&m) != Some(&(slot as u32)) {
                    violations.push(format!("decimal group: bijection broken at {m}"));
                }
            }
        }
        if let Some(inter) = &self.inter {
            let total = self.total_bias();
            let induced = inter.table.induced_distribution();
            for (b, sel) in inter.buckets.iter().enumerate() {
                let expected = match sel {
                    GroupSel::Bit(k) => {
                        ((self.groups[*k as usize].as_ref().unwrap().len() as u128) << k) as f64
                            / total
                    }
                    GroupSel::Decimal => self.decimal.as_ref().unwrap().sum / total,
                };
                if (induced[b] - expected).abs() > 1e-9 {
                    violations.push(format!(
                        "inter-group bucket {b}: induced {} != group share {expected}",
                        induced[b]
                    ));
                }
            }
        }
        violations
    }

    /// Test fixture: breaks the cached integer mass so conservation
    /// checks report a violation.
    #[doc(hidden)]
    pub fn corrupt_group_sum(&mut self) {
        self.int_sum += 1;
    }

    #[cfg(test)]
    pub(crate) fn group_members(&self, k: u32) -> Option<Vec<u32>> {
        self.groups[k as usize].as_ref().map(|g| g.collect_members())
    }

    #[cfg(test)]
    pub(crate) fn group_sum(&self, k: u32) -> u128 {
        self.groups[k as usize]
            .as_ref()
            .map_or(0, |g| (g.len() as u128) << k)
    }
}

fn lambda_constraint_met(biases: &[f64], lambda: f64) -> Result<bool> {
    let mut w_int = 0u128;
    let mut w_dec = 0.0f64;
    for &w in biases {
        let bv = scale_float_bias(w, lambda)?;
        w_int += bv.integer as u128;
        w_dec += bv.residual;
    }
    let total = w_int as f64 + w_dec;
    Ok(w_dec / total < 1.0 / biases.len() as f64)
}

//! Per-bit group storage and the residual (decimal) group.
//!
//! Groups store *neighbor indices* (positions in the owning vertex's
//! neighbor list), not neighbor ids, so a tail-swap in the neighbor list
//! can be patched through the inverted indices in O(1) per group.

use std::collections::HashMap;

use crate::radix::GroupKind;

/// Sentinel for unoccupied slots in a regular group's inverted array.
pub(crate) const NO_SLOT: u32 = u32::MAX;

/// Storage representation of one bit-position group.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum GroupRepr {
    /// Membership kept as one bit per neighbor index (neighbor `i`
    /// belongs iff bit `k` of its integer bias is set). The bitset keeps
    /// the rejection test cache-resident on high-degree vertices, where
    /// probing the neighbor list itself would miss on every iteration.
    Dense { count: usize, bits: Vec<u64> },
    /// Exactly one member; no index structures at all.
    One { member: u32 },
    /// Compact member array with an associative inverted index sized by
    /// the group, not by the degree.
    Sparse {
        members: Vec<u32>,
        inverted: HashMap<u32, u32>,
    },
    /// Compact member array with a degree-sized inverted array.
    Regular { members: Vec<u32>, inverted: Vec<u32> },
}

#[inline]
pub(crate) fn bit_get(bits: &[u64], idx: u32) -> bool {
    bits[idx as usize / 64] >> (idx % 64) & 1 != 0
}

#[inline]
fn bit_set(bits: &mut Vec<u64>, idx: u32) {
    let word = idx as usize / 64;
    if word >= bits.len() {
        bits.resize(word + 1, 0);
    }
    bits[word] |= 1 << (idx % 64);
}

#[inline]
fn bit_clear(bits: &mut [u64], idx: u32) {
    bits[idx as usize / 64] &= !(1 << (idx % 64));
}

impl GroupRepr {
    pub fn kind(&self) -> GroupKind {
        match self {
            GroupRepr::Dense { .. } => GroupKind::Dense,
            GroupRepr::One { .. } => GroupKind::OneElement,
            GroupRepr::Sparse { .. } => GroupKind::Sparse,
            GroupRepr::Regular { .. } => GroupKind::Regular,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            GroupRepr::Dense { count, .. } => *count,
            GroupRepr::One { .. } => 1,
            GroupRepr::Sparse { members, .. } => members.len(),
            GroupRepr::Regular { members, .. } => members.len(),
        }
    }

    /// Builds a representation of the requested kind from an explicit
    /// member list.
    pub fn from_members(kind: GroupKind, members: Vec<u32>, degree: usize) -> Self {
        match kind {
            GroupKind::Dense => {
                let mut bits = vec![0u64; degree.div_ceil(64)];
                for &m in &members {
                    bit_set(&mut bits, m);
                }
                GroupRepr::Dense { count: members.len(), bits }
            }
            GroupKind::OneElement => {
                debug_assert_eq!(members.len(), 1);
                GroupRepr::One { member: members[0] }
            }
            GroupKind::Sparse => {
                let inverted = members
                    .iter()
                    .enumerate()
                    .map(|(slot, &m)| (m, slot as u32))
                    .collect();
                GroupRepr::Sparse { members, inverted }
            }
            GroupKind::Regular => {
                let mut inverted = vec![NO_SLOT; degree];
                for (slot, &m) in members.iter().enumerate() {
                    inverted[m as usize] = slot as u32;
                }
                GroupRepr::Regular { members, inverted }
            }
            GroupKind::Decimal => unreachable!("decimal kind is assigned structurally"),
        }
    }

    /// Appends a member. `degree` is the current neighbor-list length,
    /// used to size regular inverted arrays.
    pub fn push(&mut self, idx: u32, degree: usize) {
        match self {
            GroupRepr::Dense { count, bits } => {
                bit_set(bits, idx);
                *count += 1;
            }
            GroupRepr::One { .. } => unreachable!("one-element groups are promoted before push"),
            GroupRepr::Sparse { members, inverted } => {
                inverted.insert(idx, members.len() as u32);
                members.push(idx);
            }
            GroupRepr::Regular { members, inverted } => {
                if inverted.len() < degree {
                    inverted.resize(degree, NO_SLOT);
                }
                inverted[idx as usize] = members.len() as u32;
                members.push(idx);
            }
        }
    }

    /// Removes a member by neighbor index via the inverted index,
    /// swap-with-tail. Dense groups only adjust the count.
    pub fn remove(&mut self, idx: u32) {
        match self {
            GroupRepr::Dense { count, bits } => {
                debug_assert!(bit_get(bits, idx));
                bit_clear(bits, idx);
                *count -= 1;
            }
            GroupRepr::One { member } => {
                debug_assert_eq!(*member, idx);
            }
            GroupRepr::Sparse { members, inverted } => {
                let slot = inverted.remove(&idx).expect("member not in sparse group") as usize;
                let last = members.len() - 1;
                members.swap(slot, last);
                members.pop();
                if slot < members.len() {
                    inverted.insert(members[slot], slot as u32);
                }
            }
            GroupRepr::Regular { members, inverted } => {
                let slot = inverted[idx as usize] as usize;
                debug_assert_ne!(slot as u32, NO_SLOT);
                inverted[idx as usize] = NO_SLOT;
                let last = members.len() - 1;
                members.swap(slot, last);
                members.pop();
                if slot < members.len() {
                    inverted[members[slot] as usize] = slot as u32;
                }
            }
        }
    }

    /// Renames a stored neighbor index after a neighbor-list tail swap.
    pub fn rename(&mut self, from: u32, to: u32) {
        match self {
            GroupRepr::Dense { bits, .. } => {
                debug_assert!(bit_get(bits, from));
                bit_clear(bits, from);
                bit_set(bits, to);
            }
            GroupRepr::One { member } => {
                debug_assert_eq!(*member, from);
                *member = to;
            }
            GroupRepr::Sparse { members, inverted } => {
                let slot = inverted.remove(&from).expect("member not in sparse group");
                members[slot as usize] = to;
                inverted.insert(to, slot);
            }
            GroupRepr::Regular { members, inverted } => {
                let slot = inverted[from as usize];
                debug_assert_ne!(slot, NO_SLOT);
                inverted[from as usize] = NO_SLOT;
                members[slot as usize] = to;
                inverted[to as usize] = slot;
            }
        }
    }

    /// Explicit member list. Dense groups reconstruct it from the
    /// membership bitset.
    pub fn collect_members(&self) -> Vec<u32> {
        match self {
            GroupRepr::Dense { bits, .. } => bits
                .iter()
                .enumerate()
                .flat_map(|(word, &w)| {
                    (0..64)
                        .filter(move |b| w >> b & 1 != 0)
                        .map(move |b| (word * 64 + b) as u32)
                })
                .collect(),
            GroupRepr::One { member } => vec![*member],
            GroupRepr::Sparse { members, .. } | GroupRepr::Regular { members, .. } => {
                members.clone()
            }
        }
    }

    pub fn is_dense_member(&self, idx: u32) -> bool {
        match self {
            GroupRepr::Dense { bits, .. } => {
                (idx as usize) < bits.len() * 64 && bit_get(bits, idx)
            }
            _ => false,
        }
    }

    pub fn members(&self) -> Option<&[u32]> {
        match self {
            GroupRepr::Sparse { members, .. } | GroupRepr::Regular { members, .. } => {
                Some(members)
            }
            _ => None,
        }
    }

    /// Index slots this representation occupies, per the slot-count metric:
    /// members plus inverted entries (degree-sized for regular groups).
    pub fn slot_cost(&self, degree: usize) -> usize {
        match self {
            GroupRepr::Dense { .. } => 0,
            GroupRepr::One { .. } => 1,
            GroupRepr::Sparse { members, .. } => 2 * members.len(),
            GroupRepr::Regular { members, .. } => members.len() + degree,
        }
    }
}

/// Residual masses of λ-scaled floating-point biases, sampled by rejection
/// against the tracked maximum residual.
#[derive(Debug, Clone, Default)]
pub(crate) struct DecimalGroup {
    pub members: Vec<u32>,
    pub residuals: Vec<f64>,
    pub inverted: HashMap<u32, u32>,
    pub sum: f64,
    pub max: f64,
}

impl DecimalGroup {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn push(&mut self, idx: u32, residual: f64) {
        debug_assert!(residual > 0.0);
        self.inverted.insert(idx, self.members.len() as u32);
        self.members.push(idx);
        self.residuals.push(residual);
        self.sum += residual;
        if residual > self.max {
            self.max = residual;
        }
    }

    pub fn remove(&mut self, idx: u32) -> f64 {
        let slot = self.inverted.remove(&idx).expect("member not in decimal group") as usize;
        let last = self.members.len() - 1;
        self.members.swap(slot, last);
        self.residuals.swap(slot, last);
        let residual = self.residuals.pop().unwrap();
        self.members.pop();
        if slot < self.members.len() {
            self.inverted.insert(self.members[slot], slot as u32);
        }
        self.sum -= residual;
        if residual >= self.max {
            self.max = self.residuals.iter().cloned().fold(0.0, f64::max);
        }
        residual
    }

    pub fn rename(&mut self, from: u32, to: u32) {
        let slot = self.inverted.remove(&from).expect("member not in decimal group");
        self.members[slot as usize] = to;
        self.inverted.insert(to, slot);
    }

    /// Recomputes the cached sum and maximum, bounding floating-point drift
    /// accumulated by incremental updates.
    pub fn refresh(&mut self) {
        self.sum = self.residuals.iter().sum();
        self.max = self.residuals.iter().cloned().fold(0.0, f64::max);
    }
}

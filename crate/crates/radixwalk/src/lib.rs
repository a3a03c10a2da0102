//! Dynamic-graph random-walk engine built on radix-factorized weighted
//! sampling: O(1) neighbor draws, bounded-work streaming edge updates,
//! batched parallel updates with adaptive group representations, and
//! walk applications (DeepWalk, node2vec, personalized PageRank) with a
//! statistical verification harness.

pub mod alias;
pub mod batch;
pub mod cli;
pub mod error;
pub mod graph;
pub mod radix;
pub mod verify;
pub mod walks;
pub mod workload;

pub use alias::AliasTable;
pub use batch::{apply_batch, parallel_delete_and_swap, BatchStats, Move};
pub use error::{Error, Result};
pub use graph::{DynGraph, EdgeUpdate, NeighborView, UpdateOp};
pub use radix::{
    choose_lambda, classify_group, decompose_bias, scale_float_bias, BiasMode, BiasValue,
    GroupKind, GroupThresholds, LambdaChoice, SampleTrace, VertexSampler,
};
pub use verify::{
    brute_force_second_order, chi_square_gof, scratch_equivalence, tv_distance, CdfSampler,
    EquivalenceReport,
};
pub use walks::{
    deepwalk_walks, node2vec_factor, node2vec_step, node2vec_walks, ppr_walks, Walk, WalkConfig,
};
pub use workload::{
    generate_biases, generate_update_stream, parse_stream, write_stream, BiasDistribution,
    UpdateMode,
};

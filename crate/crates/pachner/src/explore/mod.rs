//! Exploration on top of the move machinery: seeded random walks,
//! flip-graph enumeration up to isomorphism, and bistellar simplification.

mod flip_graph;
mod simplify;
mod walk;

pub use flip_graph::{
    build_flip_graph, connectivity_certificate, FlipEdge, FlipGraph, PathCertificate,
};
pub use simplify::{simplify, SearchReport, SearchStats, SimplifyOptions, Verdict};
pub use walk::random_walk;

use thiserror::Error;

use crate::simplex::Simplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExploreError {
    #[error("no admissible move within the vertex budget")]
    NoAdmissibleMove,
    #[error("vertex budget {budget} is below the current vertex count {needed}")]
    BudgetTooSmall { budget: usize, needed: usize },
    #[error("complex is not a closed pseudomanifold")]
    NotClosed,
    #[error("complex is not isomorphic to any node of the flip graph")]
    NodeNotInGraph,
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("move application failed during search: {0}")]
    Move(#[from] crate::moves::MoveError),
}

/// Derives a per-restart or per-walk seed from a master seed. SplitMix64;
/// deterministic and stateless so restarts can run independently.
pub(crate) fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn simplex_labels(s: &Simplex) -> String {
    s.vertices()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

//! Seeded random walks through the move graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ExploreError;
use crate::complex::Complex;
use crate::moves::{self, MoveSite};
use crate::trace::Trace;

/// Returns the sites admissible under a vertex budget: fresh-vertex
/// (kind d) moves are dropped when they would exceed it.
pub(crate) fn budgeted_moves(c: &Complex, vertex_budget: usize) -> Vec<MoveSite> {
    let d = c.dim();
    let vertices = c.vertex_count();
    moves::enumerate_moves(c)
        .into_iter()
        .filter(|s| s.kind() != d || vertices + 1 <= vertex_budget)
        .collect()
}

/// Applies `steps` uniformly random admissible moves, deterministic given
/// the seed. Returns the end complex and a replayable trace whose recorded
/// end state is the returned complex.
pub fn random_walk(
    c: &Complex,
    steps: usize,
    vertex_budget: usize,
    seed: u64,
) -> Result<(Complex, Trace), ExploreError> {
    if vertex_budget < c.vertex_count() {
        return Err(ExploreError::BudgetTooSmall {
            budget: vertex_budget,
            needed: c.vertex_count(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = Trace::new("input", Some(seed));
    let mut current = c.clone();
    for _ in 0..steps {
        let sites = budgeted_moves(&current, vertex_budget);
        if sites.is_empty() {
            return Err(ExploreError::NoAdmissibleMove);
        }
        let site = sites[rng.gen_range(0..sites.len())].clone();
        current = moves::apply_move(&current, &site)?;
        trace.push_move(site);
    }
    trace.end = Some(current.clone());
    Ok((current, trace))
}

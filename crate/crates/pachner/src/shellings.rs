//! Elementary shellings and inverse shellings on pseudomanifolds with
//! boundary.
//!
//! Deleting (or adding) a facet this way induces a Pachner move on the
//! boundary complex. The admissibility predicate is chosen so the induced
//! boundary change is definitionally a Pachner move, and every application
//! returns a [`BoundaryMoveWitness`] whose verification is part of the
//! postcondition, which keeps the reconstruction falsifiable.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::complex::{Complex, ComplexError};
use crate::moves::{self, MoveSite};
use crate::simplex::Simplex;
use crate::trace::Trace;

/// A facet `σ` with the face decomposition `σ = A ∗ B` certifying an
/// elementary shelling: the boundary ridges of `σ` are exactly the ridges
/// containing `A` (equivalently `{σ \ {b} : b ∈ B}`), and `B` is not a
/// face of `∂C`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShellingSite {
    pub sigma: Simplex,
    pub a: Simplex,
    pub b: Simplex,
}

/// Certifies that a shelling induced a Pachner move on the boundary:
/// `apply_move(before, site) = after`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMoveWitness {
    pub before: Complex,
    pub after: Complex,
    pub site: MoveSite,
}

impl BoundaryMoveWitness {
    /// Re-runs the boundary move and compares facet sets exactly.
    pub fn verify(&self) -> bool {
        matches!(moves::apply_move(&self.before, &self.site), Ok(c) if c == self.after)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShellingError {
    #[error("complex is closed; shellings need a nonempty boundary")]
    ClosedComplex,
    #[error(transparent)]
    NotPseudomanifold(ComplexError),
    #[error("inadmissible shelling at {sigma}: {reason}")]
    Inadmissible { sigma: Simplex, reason: String },
    #[error("facet {0} is already present")]
    FacetPresent(Simplex),
    #[error("facet {sigma} does not glue along the boundary: {reason}")]
    GluingNotOnBoundary { sigma: Simplex, reason: String },
    #[error("adding {0} would put a ridge into three facets")]
    WouldBreakPseudomanifold(Simplex),
}

fn boundary_or_err(c: &Complex) -> Result<Complex, ShellingError> {
    match c.boundary_complex() {
        Ok(Some(b)) => Ok(b),
        Ok(None) => Err(ShellingError::ClosedComplex),
        Err(e) => Err(ShellingError::NotPseudomanifold(e)),
    }
}

/// The unique candidate decomposition of a facet: `B` collects the
/// directions whose opposite ridge is free. Returns a site only when both
/// parts are nonempty and `B` is not a face of the boundary.
fn site_at_facet(c: &Complex, boundary: &Complex, sigma: &Simplex) -> Option<ShellingSite> {
    let incidence = c.ridge_incidence();
    let mut b_verts = Vec::new();
    let mut a_verts = Vec::new();
    for v in sigma.vertices() {
        if incidence.get(&sigma.without(*v)) == Some(&1) {
            b_verts.push(*v);
        } else {
            a_verts.push(*v);
        }
    }
    if a_verts.is_empty() || b_verts.is_empty() {
        return None;
    }
    let a = Simplex::try_from_labels(a_verts.iter().map(|v| v.0)).unwrap();
    let b = Simplex::try_from_labels(b_verts.iter().map(|v| v.0)).unwrap();
    if boundary.contains_face(&b) {
        return None;
    }
    Some(ShellingSite {
        sigma: sigma.clone(),
        a,
        b,
    })
}

/// Enumerates every admissible elementary shelling (facet deletion), in
/// facet order. Deleting the last facet is excluded; the terminal deletion
/// is reported separately by [`terminal_deletion`].
pub fn enumerate_shellings(c: &Complex) -> Result<Vec<ShellingSite>, ShellingError> {
    let boundary = boundary_or_err(c)?;
    if c.facet_count() < 2 {
        return Ok(Vec::new());
    }
    Ok(c.facets()
        .iter()
        .filter_map(|sigma| site_at_facet(c, &boundary, sigma))
        .collect())
}

/// The degenerate last-facet deletion, reported only when the complex is a
/// single facet. The empty complex is not a valid value, so this deletion
/// is never part of [`enumerate_shellings`].
pub fn terminal_deletion(c: &Complex) -> Option<Simplex> {
    if c.facet_count() == 1 {
        c.facets().iter().next().cloned()
    } else {
        None
    }
}

/// Deletes the facet of an admissible site and returns the new complex
/// with the verified boundary-move witness. Admissibility is re-verified.
pub fn apply_shelling(
    c: &Complex,
    site: &ShellingSite,
) -> Result<(Complex, BoundaryMoveWitness), ShellingError> {
    let fail = |reason: &str| ShellingError::Inadmissible {
        sigma: site.sigma.clone(),
        reason: reason.to_string(),
    };
    let boundary = boundary_or_err(c)?;
    if !c.facets().contains(&site.sigma) {
        return Err(fail("sigma is not a facet"));
    }
    if c.facet_count() < 2 {
        return Err(fail("deleting the last facet is excluded"));
    }
    if site.a.union(&site.b) != site.sigma || !site.a.is_disjoint(&site.b) {
        return Err(fail("A and B do not partition sigma"));
    }
    let expected = site_at_facet(c, &boundary, &site.sigma)
        .ok_or_else(|| fail("facet admits no shelling decomposition"))?;
    if expected.a != site.a || expected.b != site.b {
        return Err(fail("boundary ridges of sigma are not exactly the ridges containing A"));
    }
    let result = Complex::from_simplices(
        c.facets()
            .iter()
            .filter(|f| **f != site.sigma)
            .cloned(),
    )
    .expect("at least one facet remains");
    let after = boundary_or_err(&result)?;
    let witness = BoundaryMoveWitness {
        before: boundary,
        after,
        site: MoveSite::new(site.a.clone(), site.b.clone()),
    };
    if !witness.verify() {
        return Err(fail("induced boundary move failed verification"));
    }
    Ok((result, witness))
}

/// Adds a facet `sigma_new` glued along free ridges of `∂C`: the inverse
/// elementary shelling. Returns the new complex with the verified
/// boundary-move witness.
pub fn apply_inverse_shelling(
    c: &Complex,
    sigma_new: &Simplex,
) -> Result<(Complex, BoundaryMoveWitness), ShellingError> {
    let glue_err = |reason: &str| ShellingError::GluingNotOnBoundary {
        sigma: sigma_new.clone(),
        reason: reason.to_string(),
    };
    if c.facets().contains(sigma_new) {
        return Err(ShellingError::FacetPresent(sigma_new.clone()));
    }
    if sigma_new.dim() != c.dim() as isize {
        return Err(glue_err("wrong dimension"));
    }
    let boundary = boundary_or_err(c)?;
    let incidence = c.ridge_incidence();
    // A: directions whose opposite ridge already lies in C
    let mut a_verts = Vec::new();
    let mut b_verts = Vec::new();
    for v in sigma_new.vertices() {
        let ridge = sigma_new.without(*v);
        if c.contains_face(&ridge) {
            // the union must stay a pseudomanifold
            if incidence.get(&ridge) >= Some(&2) {
                return Err(ShellingError::WouldBreakPseudomanifold(sigma_new.clone()));
            }
            if !boundary.facets().contains(&ridge) {
                return Err(glue_err("a glued ridge is not on the boundary"));
            }
            a_verts.push(*v);
        } else {
            b_verts.push(*v);
        }
    }
    if a_verts.is_empty() {
        return Err(glue_err("no ridge of the new facet lies in the complex"));
    }
    if b_verts.is_empty() {
        return Err(glue_err("every ridge is glued; the deletion direction would close the boundary"));
    }
    let a = Simplex::try_from_labels(a_verts.iter().map(|v| v.0)).unwrap();
    let b = Simplex::try_from_labels(b_verts.iter().map(|v| v.0)).unwrap();
    let result = Complex::from_simplices(
        c.facets().iter().cloned().chain([sigma_new.clone()]),
    )
    .map_err(|_| glue_err("union is not a pure complex"))?;
    let after = boundary_or_err(&result)?;
    // inverse of the deletion's boundary move: replace ∂B ∗ A by B ∗ ∂A
    let witness = BoundaryMoveWitness {
        before: boundary,
        after,
        site: MoveSite::new(b, a),
    };
    if !witness.verify() {
        return Err(glue_err("induced boundary move failed verification"));
    }
    Ok((result, witness))
}

/// Greedy randomized search for a shelling order reducing `c` to a single
/// facet. Deterministic given the seed; `None` means the attempt budget
/// ran out (non-shellable and unlucky searches are not distinguished).
pub fn shell_to_facet(c: &Complex, rng_seed: u64) -> Result<Option<Trace>, ShellingError> {
    shell_to_facet_with_attempts(c, rng_seed, 64)
}

pub fn shell_to_facet_with_attempts(
    c: &Complex,
    rng_seed: u64,
    attempts: usize,
) -> Result<Option<Trace>, ShellingError> {
    if c.facet_count() == 1 {
        boundary_or_err(c)?;
        return Ok(Some(Trace::new("input", Some(rng_seed))));
    }
    boundary_or_err(c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..attempts {
        let mut current = c.clone();
        let mut trace = Trace::new("input", Some(rng_seed));
        loop {
            if current.facet_count() == 1 {
                trace.end = Some(current);
                return Ok(Some(trace));
            }
            let sites = enumerate_shellings(&current)?;
            if sites.is_empty() {
                break; // dead end; restart
            }
            let site = sites[rng.gen_range(0..sites.len())].clone();
            let (next, _witness) = apply_shelling(&current, &site)
                .expect("enumerated sites are admissible");
            trace.push_shelling(site);
            current = next;
        }
    }
    Ok(None)
}

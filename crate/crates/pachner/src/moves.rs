//! Bistellar (Pachner) moves: admissibility, enumeration, application,
//! inverses, and the factorization through stellar operations.
//!
//! A move at a k-face `A` is admissible when the link of `A` is the full
//! boundary of a (d−k)-simplex `B` with `B` not a face of the complex. The
//! move deletes the star of `A` and replaces it by `∂A ∗ B`. Admissibility
//! requires the link to *equal* `∂B`, not merely contain it. With the
//! empty-simplex convention, the k = d case (facet subdivision by a fresh
//! vertex) is an instance of the same predicate: the link of a facet is
//! `{∅} = ∂B` for any single fresh vertex `B`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::complex::Complex;
use crate::simplex::{Simplex, VertexId};

/// An admissible Pachner move: the pair `(A, B)` with
/// `dim A + dim B = d` and `kind = dim A`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveSite {
    a: Simplex,
    b: Simplex,
}

impl MoveSite {
    /// Assembles a site from its two faces. Admissibility against a
    /// particular complex is checked at application time.
    pub fn new(a: Simplex, b: Simplex) -> Self {
        MoveSite { a, b }
    }

    pub fn a(&self) -> &Simplex {
        &self.a
    }

    pub fn b(&self) -> &Simplex {
        &self.b
    }

    /// The move kind `k = dim A`, one of the `d + 1` types in dimension `d`.
    pub fn kind(&self) -> usize {
        self.a.dim().max(0) as usize
    }

    /// Net facet-count change when applied in dimension `d`: `2k − d`.
    pub fn facet_delta(&self) -> isize {
        self.a.dim() - self.b.dim()
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> {}", self.kind(), self.a, self.b)
    }
}

impl fmt::Debug for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MoveSite(k={}, A={}, B={})", self.kind(), self.a, self.b)
    }
}

/// Why a proposed move is not admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inadmissibility {
    /// `A` is empty or not a face of the complex.
    FaceAbsent,
    /// `dim A + dim B ≠ d`, or `A` and `B` intersect.
    WrongShape,
    /// The link of `A` is not the full boundary of `B`.
    LinkMismatch,
    /// `B` is already a face of the complex.
    TargetPresent,
}

impl fmt::Display for Inadmissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Inadmissibility::FaceAbsent => "A is not a face",
            Inadmissibility::WrongShape => "A and B have the wrong dimensions or intersect",
            Inadmissibility::LinkMismatch => "link of A is not the boundary of B",
            Inadmissibility::TargetPresent => "B is already a face",
        };
        f.write_str(msg)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("{0} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("inadmissible move ({reason}) at {site:?}")]
    Inadmissible {
        site: MoveSite,
        reason: Inadmissibility,
    },
    #[error("vertex {0} is already in use")]
    VertexInUse(VertexId),
    #[error("stellar subdivision at a single vertex is not defined")]
    SubdivisionAtVertex,
    #[error("weld at vertex {0} is inadmissible: {1}")]
    WeldInadmissible(VertexId, String),
}

/// Tests whether `a` carries an admissible move, returning the site if so.
/// For `k = d` the returned `B` is the fresh vertex `max label + 1`.
pub fn admissible_move_at(c: &Complex, a: &Simplex) -> Result<Option<MoveSite>, MoveError> {
    if a.is_empty() || !c.contains_face(a) {
        return Err(MoveError::NotAFace(a.clone()));
    }
    let d = c.dim() as isize;
    let k = a.dim();
    if k == d {
        return Ok(Some(MoveSite::new(
            a.clone(),
            Simplex::vertex(c.fresh_vertex()),
        )));
    }
    let link_facets = c.link_facets(a);
    Ok(site_from_link(c, a, k, d, &link_facets))
}

fn site_from_link(
    c: &Complex,
    a: &Simplex,
    k: isize,
    d: isize,
    link_facets: &BTreeSet<Simplex>,
) -> Option<MoveSite> {
    let want = (d - k + 1) as usize;
    if link_facets.len() != want {
        return None;
    }
    let mut b = Simplex::empty();
    for lf in link_facets {
        b = b.union(lf);
    }
    if b.vertex_count() != want {
        return None;
    }
    let boundary: BTreeSet<Simplex> = b.boundary_facets().into_iter().collect();
    if *link_facets != boundary {
        return None;
    }
    if c.contains_face(&b) {
        return None;
    }
    Some(MoveSite::new(a.clone(), b))
}

/// Enumerates every admissible move site, in lexicographic order by `A`
/// (ties by kind). Exactly one fresh-vertex site is reported per facet for
/// `k = d`.
pub fn enumerate_moves(c: &Complex) -> Vec<MoveSite> {
    let d = c.dim() as isize;
    let facets: Vec<&Simplex> = c.facets().iter().collect();
    // face -> indices of containing facets, built in one sweep
    let mut holders: HashMap<Simplex, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for s in f.all_subfaces() {
            if !s.is_empty() {
                holders.entry(s).or_default().push(i);
            }
        }
    }
    let fresh = Simplex::vertex(c.fresh_vertex());
    let mut sites: Vec<MoveSite> = Vec::new();
    for (a, containing) in &holders {
        let k = a.dim();
        if k == d {
            sites.push(MoveSite::new(a.clone(), fresh.clone()));
            continue;
        }
        let link_facets: BTreeSet<Simplex> = containing
            .iter()
            .map(|&i| facets[i].difference(a))
            .collect();
        if let Some(site) = site_from_link(c, a, k, d, &link_facets) {
            sites.push(site);
        }
    }
    sites.sort_by(|s, t| s.a.cmp(&t.a).then(s.kind().cmp(&t.kind())));
    sites
}

/// Full admissibility check of an explicit site, used by [`apply_move`].
pub fn check_admissible(c: &Complex, site: &MoveSite) -> Result<(), MoveError> {
    let fail = |reason| MoveError::Inadmissible {
        site: site.clone(),
        reason,
    };
    let d = c.dim() as isize;
    if site.a.is_empty() {
        return Err(fail(Inadmissibility::FaceAbsent));
    }
    if site.a.dim() + site.b.dim() != d || !site.a.is_disjoint(&site.b) {
        return Err(fail(Inadmissibility::WrongShape));
    }
    if !c.contains_face(&site.a) {
        return Err(fail(Inadmissibility::FaceAbsent));
    }
    let link_facets = c.link_facets(&site.a);
    let boundary: BTreeSet<Simplex> = site.b.boundary_facets().into_iter().collect();
    if link_facets != boundary {
        return Err(fail(Inadmissibility::LinkMismatch));
    }
    if c.contains_face(&site.b) {
        return Err(fail(Inadmissibility::TargetPresent));
    }
    Ok(())
}

/// Applies a Pachner move: the star of `A` is replaced by `∂A ∗ B`.
/// Admissibility is re-verified even for sites produced by
/// [`enumerate_moves`], since sites may be replayed against other
/// complexes.
pub fn apply_move(c: &Complex, site: &MoveSite) -> Result<Complex, MoveError> {
    check_admissible(c, site)?;
    let mut facets: BTreeSet<Simplex> = c
        .facets()
        .iter()
        .filter(|f| !site.a.is_face_of(f))
        .cloned()
        .collect();
    for v in site.a.vertices() {
        facets.insert(site.a.without(*v).union(&site.b));
    }
    let result = Complex::from_simplices(facets).expect("move output is pure");
    debug_assert!(!result.contains_face(&site.a));
    debug_assert!(result.contains_face(&site.b));
    debug_assert_eq!(
        result.link_facets(&site.b),
        site.a.boundary_facets().into_iter().collect::<BTreeSet<_>>()
    );
    Ok(result)
}

/// The inverse site: swap `A` and `B`. Applying it to the output of the
/// forward move restores the input exactly.
pub fn inverse_site(site: &MoveSite) -> MoveSite {
    MoveSite::new(site.b.clone(), site.a.clone())
}

/// Stellar subdivision: the star of `A` is replaced by the cone from a new
/// vertex `v` over `∂A ∗ link(A)`. Subdivision at a single vertex is
/// rejected; it has no consistent fresh-vertex semantics.
pub fn stellar_subdivide(c: &Complex, a: &Simplex, v: VertexId) -> Result<Complex, MoveError> {
    if a.dim() == 0 {
        return Err(MoveError::SubdivisionAtVertex);
    }
    if a.is_empty() || !c.contains_face(a) {
        return Err(MoveError::NotAFace(a.clone()));
    }
    if c.vertices().contains(&v) {
        return Err(MoveError::VertexInUse(v));
    }
    let mut facets: BTreeSet<Simplex> = BTreeSet::new();
    for f in c.facets() {
        if a.is_face_of(f) {
            for w in a.vertices() {
                facets.insert(f.without(*w).with(v));
            }
        } else {
            facets.insert(f.clone());
        }
    }
    Ok(Complex::from_simplices(facets).expect("subdivision output is pure"))
}

/// Stellar weld: the inverse of subdivision. Removes vertex `v` and
/// restores the star of `A`. Legality is certified operationally: the
/// rewritten complex must subdivide back to the input exactly.
pub fn stellar_weld(c: &Complex, v: VertexId, a: &Simplex) -> Result<Complex, MoveError> {
    let weld_err = |msg: &str| MoveError::WeldInadmissible(v, msg.to_string());
    if !c.vertices().contains(&v) {
        return Err(weld_err("vertex not present"));
    }
    if a.is_empty() || a.contains(v) {
        return Err(weld_err("weld simplex must be nonempty and avoid the vertex"));
    }
    let mut rewritten: BTreeSet<Simplex> = BTreeSet::new();
    let mut remainder: BTreeSet<Simplex> = BTreeSet::new();
    for f in c.facets() {
        if !f.contains(v) {
            remainder.insert(f.clone());
            continue;
        }
        let missing = a.difference(f);
        if missing.vertex_count() != 1 {
            return Err(weld_err("a facet at the vertex does not fit the weld simplex"));
        }
        rewritten.insert(f.without(v).union(&missing));
    }
    if rewritten.iter().any(|f| remainder.contains(f)) {
        return Err(weld_err("rewriting collides with an existing facet"));
    }
    if remainder.iter().any(|f| a.is_face_of(f)) {
        return Err(weld_err("weld simplex already has a star outside the vertex"));
    }
    let result = Complex::from_simplices(remainder.into_iter().chain(rewritten))
        .expect("weld output is pure");
    // the weld is legal exactly when it inverts a subdivision
    match stellar_subdivide(&result, a, v) {
        Ok(back) if back == *c => Ok(result),
        _ => Err(weld_err("link condition fails: not the inverse of a subdivision")),
    }
}

/// A Pachner move written as stellar operations. Middle kinds factor as a
/// subdivision followed by a weld; `k = d` degenerates to the subdivision
/// alone and `k = 0` to the weld alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StellarFactorization {
    SubdivideWeld {
        subdivide_at: Simplex,
        apex: VertexId,
        weld_at: Simplex,
    },
    /// `k = d`: the move is the subdivision of the facet by `apex`.
    SubdivideOnly { subdivide_at: Simplex, apex: VertexId },
    /// `k = 0`: the move is the weld of the vertex into `weld_at`.
    WeldOnly { vertex: VertexId, weld_at: Simplex },
}

impl StellarFactorization {
    /// Runs the witnessed stellar operations against `c`.
    pub fn compose(&self, c: &Complex) -> Result<Complex, MoveError> {
        match self {
            StellarFactorization::SubdivideWeld {
                subdivide_at,
                apex,
                weld_at,
            } => {
                let mid = stellar_subdivide(c, subdivide_at, *apex)?;
                stellar_weld(&mid, *apex, weld_at)
            }
            StellarFactorization::SubdivideOnly { subdivide_at, apex } => {
                stellar_subdivide(c, subdivide_at, *apex)
            }
            StellarFactorization::WeldOnly { vertex, weld_at } => {
                stellar_weld(c, *vertex, weld_at)
            }
        }
    }
}

/// Produces the stellar factorization witness for an admissible site:
/// composing it equals [`apply_move`] exactly (facet-set equality).
pub fn factor_via_stellar(
    c: &Complex,
    site: &MoveSite,
) -> Result<StellarFactorization, MoveError> {
    check_admissible(c, site)?;
    let d = c.dim() as isize;
    let k = site.a.dim();
    let witness = if k == d {
        StellarFactorization::SubdivideOnly {
            subdivide_at: site.a.clone(),
            apex: site.b.vertices()[0],
        }
    } else if k == 0 {
        StellarFactorization::WeldOnly {
            vertex: site.a.vertices()[0],
            weld_at: site.b.clone(),
        }
    } else {
        StellarFactorization::SubdivideWeld {
            subdivide_at: site.a.clone(),
            apex: c.fresh_vertex(),
            weld_at: site.b.clone(),
        }
    };
    debug_assert_eq!(witness.compose(c).as_ref().ok(), apply_move(c, site).as_ref().ok());
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn sx(labels: &[u32]) -> Simplex {
        Simplex::from_labels(labels)
    }

    fn cx(facets: &[&[u32]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| f.iter().copied())).unwrap()
    }

    #[test]
    fn admissible_at_examples() {
        let c = cx(&[&[1, 2, 3], &[1, 2, 4]]);
        let site = admissible_move_at(&c, &sx(&[1, 2])).unwrap().unwrap();
        assert_eq!(site.a(), &sx(&[1, 2]));
        assert_eq!(site.b(), &sx(&[3, 4]));
        assert_eq!(site.kind(), 1);

        // B = {3,4} is an edge of ∂Δ³, so the flip there is blocked
        let s = generate::sphere(2);
        assert_eq!(admissible_move_at(&s, &sx(&[1, 2])).unwrap(), None);

        // facet subdivision is always admissible with a fresh vertex
        let site = admissible_move_at(&s, &sx(&[1, 2, 3])).unwrap().unwrap();
        assert_eq!(site.kind(), 2);
        assert_eq!(site.b(), &sx(&[5]));

        assert!(matches!(
            admissible_move_at(&s, &sx(&[9])),
            Err(MoveError::NotAFace(_))
        ));
    }

    #[test]
    fn enumerate_on_sphere_and_triangle() {
        let s = generate::sphere(2);
        let sites = enumerate_moves(&s);
        assert_eq!(sites.len(), 4);
        assert!(sites.iter().all(|s| s.kind() == 2));

        let tri = cx(&[&[1, 2, 3]]);
        let sites = enumerate_moves(&tri);
        assert_eq!(sites.len(), 1);
        assert_eq!(sites[0].kind(), 2);
    }

    #[test]
    fn enumerate_on_octahedron() {
        let oct = generate::octahedron();
        let sites = enumerate_moves(&oct);
        let by_kind = |k| sites.iter().filter(|s| s.kind() == k).count();
        assert_eq!(by_kind(0), 0);
        assert_eq!(by_kind(1), 12);
        assert_eq!(by_kind(2), 8);
        assert_eq!(sites.len(), 20);
    }

    #[test]
    fn apply_figure_examples() {
        // the 2↔2 flip
        let c = cx(&[&[1, 2, 3], &[1, 2, 4]]);
        let flipped = apply_move(&c, &MoveSite::new(sx(&[1, 2]), sx(&[3, 4]))).unwrap();
        assert_eq!(flipped, cx(&[&[1, 3, 4], &[2, 3, 4]]));

        // the 1→3 subdivision
        let tri = cx(&[&[1, 2, 3]]);
        let sub = apply_move(&tri, &MoveSite::new(sx(&[1, 2, 3]), sx(&[4]))).unwrap();
        assert_eq!(sub, cx(&[&[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]));

        // the 2→3 move in dimension 3
        let c = cx(&[&[1, 2, 3, 4], &[1, 2, 3, 5]]);
        let moved = apply_move(&c, &MoveSite::new(sx(&[1, 2, 3]), sx(&[4, 5]))).unwrap();
        assert_eq!(moved, cx(&[&[1, 2, 4, 5], &[1, 3, 4, 5], &[2, 3, 4, 5]]));
    }

    #[test]
    fn inadmissible_reasons() {
        let s = generate::sphere(2);
        let err = apply_move(&s, &MoveSite::new(sx(&[1, 2]), sx(&[3, 4]))).unwrap_err();
        assert!(matches!(
            err,
            MoveError::Inadmissible {
                reason: Inadmissibility::TargetPresent,
                ..
            }
        ));
        let err = apply_move(&s, &MoveSite::new(sx(&[5, 6]), sx(&[7, 8]))).unwrap_err();
        assert!(matches!(
            err,
            MoveError::Inadmissible {
                reason: Inadmissibility::FaceAbsent,
                ..
            }
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let c = cx(&[&[1, 2, 3], &[1, 2, 4]]);
        let site = MoveSite::new(sx(&[1, 2]), sx(&[3, 4]));
        let inv = inverse_site(&site);
        assert_eq!(inv.a(), &sx(&[3, 4]));
        assert_eq!(inv.kind(), 1);
        let there = apply_move(&c, &site).unwrap();
        assert_eq!(apply_move(&there, &inv).unwrap(), c);

        // kinds swap: a 1→3 inverse is a kind-0 move
        let site = MoveSite::new(sx(&[1, 2, 3]), sx(&[4]));
        assert_eq!(inverse_site(&site).kind(), 0);
        let site = MoveSite::new(sx(&[1, 2, 3]), sx(&[4, 5]));
        assert_eq!(inverse_site(&site).kind(), 1);
    }

    #[test]
    fn stellar_subdivision_examples() {
        let tri = cx(&[&[1, 2, 3]]);
        assert_eq!(
            stellar_subdivide(&tri, &sx(&[1, 2, 3]), VertexId(4)).unwrap(),
            cx(&[&[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
        );

        let c = cx(&[&[1, 2, 3], &[1, 2, 4]]);
        assert_eq!(
            stellar_subdivide(&c, &sx(&[1, 2]), VertexId(5)).unwrap(),
            cx(&[&[1, 3, 5], &[2, 3, 5], &[1, 4, 5], &[2, 4, 5]])
        );

        let s = generate::sphere(2);
        assert_eq!(
            stellar_subdivide(&s, &sx(&[1, 2]), VertexId(2)),
            Err(MoveError::VertexInUse(VertexId(2)))
        );
        assert_eq!(
            stellar_subdivide(&s, &sx(&[1]), VertexId(5)),
            Err(MoveError::SubdivisionAtVertex)
        );
    }

    #[test]
    fn stellar_weld_examples() {
        let sub = cx(&[&[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        assert_eq!(
            stellar_weld(&sub, VertexId(4), &sx(&[1, 2, 3])).unwrap(),
            cx(&[&[1, 2, 3]])
        );

        let sub = cx(&[&[1, 3, 5], &[2, 3, 5], &[1, 4, 5], &[2, 4, 5]]);
        assert_eq!(
            stellar_weld(&sub, VertexId(5), &sx(&[1, 2])).unwrap(),
            cx(&[&[1, 2, 3], &[1, 2, 4]])
        );

        // welding ∂Δ³ at vertex 1 collides with the opposite facet
        let s = generate::sphere(2);
        assert!(matches!(
            stellar_weld(&s, VertexId(1), &sx(&[2, 3, 4])),
            Err(MoveError::WeldInadmissible(..))
        ));

        // operationally plausible but not the inverse of a subdivision
        let c = cx(&[&[1, 3, 5], &[2, 4, 5]]);
        assert!(matches!(
            stellar_weld(&c, VertexId(5), &sx(&[1, 2])),
            Err(MoveError::WeldInadmissible(..))
        ));
    }

    #[test]
    fn weld_inverts_subdivision() {
        let s = generate::sphere(2);
        let sub = stellar_subdivide(&s, &sx(&[1, 2]), VertexId(9)).unwrap();
        assert_eq!(stellar_weld(&sub, VertexId(9), &sx(&[1, 2])).unwrap(), s);
    }

    #[test]
    fn stellar_factorization_witnesses() {
        let c = cx(&[&[1, 2, 3], &[1, 2, 4]]);
        let site = MoveSite::new(sx(&[1, 2]), sx(&[3, 4]));
        let w = factor_via_stellar(&c, &site).unwrap();
        assert_eq!(w.compose(&c).unwrap(), apply_move(&c, &site).unwrap());

        let c = cx(&[&[1, 2, 3, 4], &[1, 2, 3, 5]]);
        let site = MoveSite::new(sx(&[1, 2, 3]), sx(&[4, 5]));
        let w = factor_via_stellar(&c, &site).unwrap();
        assert_eq!(w.compose(&c).unwrap(), apply_move(&c, &site).unwrap());

        // k = d degenerates to the subdivision alone
        let tri = cx(&[&[1, 2, 3]]);
        let site = MoveSite::new(sx(&[1, 2, 3]), sx(&[4]));
        let w = factor_via_stellar(&tri, &site).unwrap();
        assert!(matches!(w, StellarFactorization::SubdivideOnly { .. }));
        assert_eq!(w.compose(&tri).unwrap(), apply_move(&tri, &site).unwrap());

        // k = 0 degenerates to the weld alone
        let sub = cx(&[&[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let site = MoveSite::new(sx(&[4]), sx(&[1, 2, 3]));
        let w = factor_via_stellar(&sub, &site).unwrap();
        assert!(matches!(w, StellarFactorization::WeldOnly { .. }));
        assert_eq!(w.compose(&sub).unwrap(), apply_move(&sub, &site).unwrap());
    }

    #[test]
    fn facet_count_delta() {
        let tri = cx(&[&[1, 2, 3]]);
        let site = MoveSite::new(sx(&[1, 2, 3]), sx(&[4]));
        assert_eq!(site.facet_delta(), 2); // 2k − d = 4 − 2
        let moved = apply_move(&tri, &site).unwrap();
        assert_eq!(moved.facet_count() as isize, 1 + site.facet_delta());
    }
}

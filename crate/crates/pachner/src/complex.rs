//! Pure abstract simplicial complexes stored by their facets.
//!
//! Facets are the sole source of truth; every face query is served from the
//! facet set. Complexes are immutable values: operations return new
//! complexes, so they can be shared freely across threads and kept in
//! traces without aliasing hazards.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::simplex::{Simplex, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("empty facet list")]
    EmptyInput,
    #[error("facets of mixed dimensions")]
    MixedDimensions,
    #[error("facet repeats vertex {0}")]
    DegenerateFacet(VertexId),
    #[error("dimension {0} out of range")]
    DimensionOutOfRange(isize),
    #[error("{0} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("the empty simplex is not accepted here")]
    EmptySimplexInput,
    #[error("ridge {0} lies in {1} facets")]
    NotPseudomanifold(Simplex, usize),
    #[error("complex is not a closed pseudomanifold")]
    NotClosedPseudomanifold,
    #[error("check not supported in dimension {0}")]
    UnsupportedDimension(usize),
    #[error("operand complexes share vertex labels")]
    LabelClash,
}

/// Face counts per dimension, `f_{-1}` through `f_d` (`f_{-1} = 1` for the
/// empty simplex). The Euler characteristic uses `f_0..f_d` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    counts: Vec<u64>,
}

impl FVector {
    /// The count of `k`-dimensional faces.
    pub fn count(&self, k: isize) -> u64 {
        let i = k + 1;
        if i < 0 || i as usize >= self.counts.len() {
            0
        } else {
            self.counts[i as usize]
        }
    }

    /// `f_0..f_d` as a slice (the empty simplex excluded).
    pub fn nonempty_counts(&self) -> &[u64] {
        &self.counts[1..]
    }

    /// Alternating sum over `f_0..f_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts[1..]
            .iter()
            .enumerate()
            .map(|(k, f)| if k % 2 == 0 { *f as i64 } else { -(*f as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts[1..].iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A pure `d`-dimensional abstract simplicial complex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    dim: usize,
    facets: BTreeSet<Simplex>,
}

impl Complex {
    /// Builds a complex from lists of vertex labels, one facet per list.
    pub fn from_facets<I, L>(facet_list: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = L>,
        L: IntoIterator<Item = u32>,
    {
        let facets: Vec<Simplex> = facet_list
            .into_iter()
            .map(Simplex::try_from_labels)
            .collect::<Result<_, _>>()?;
        Self::from_simplices(facets)
    }

    /// Builds a complex from simplices, enforcing purity.
    pub fn from_simplices<I>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let facets: BTreeSet<Simplex> = facets.into_iter().collect();
        let first = facets.iter().next().ok_or(ComplexError::EmptyInput)?;
        if first.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        let dim = first.dim();
        if facets.iter().any(|f| f.dim() != dim) {
            return Err(ComplexError::MixedDimensions);
        }
        Ok(Complex {
            dim: dim as usize,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn max_label(&self) -> u32 {
        self.facets
            .iter()
            .filter_map(Simplex::max_label)
            .max()
            .unwrap_or(0)
    }

    /// The smallest label strictly above every label in use.
    pub fn fresh_vertex(&self) -> VertexId {
        VertexId(self.max_label() + 1)
    }

    /// Membership over the face closure. The empty simplex is a face of
    /// every complex.
    pub fn contains_face(&self, s: &Simplex) -> bool {
        s.is_empty() || self.facets.iter().any(|f| s.is_face_of(f))
    }

    /// All `k`-dimensional faces; `faces(-1)` is `{∅}` by convention.
    pub fn faces(&self, k: isize) -> Result<BTreeSet<Simplex>, ComplexError> {
        if k < -1 || k > self.dim as isize {
            return Err(ComplexError::DimensionOutOfRange(k));
        }
        let mut out = BTreeSet::new();
        for f in &self.facets {
            out.extend(f.subfaces(k));
        }
        Ok(out)
    }

    /// All nonempty faces, every dimension.
    pub fn all_nonempty_faces(&self) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            out.extend(f.all_subfaces().into_iter().filter(|s| !s.is_empty()));
        }
        out
    }

    /// The star of `a`: every face having `a` as a subset, `a` included.
    pub fn star(&self, a: &Simplex) -> Result<BTreeSet<Simplex>, ComplexError> {
        if !self.contains_face(a) {
            return Err(ComplexError::NotAFace(a.clone()));
        }
        let mut out = BTreeSet::new();
        for f in self.facets.iter().filter(|f| a.is_face_of(f)) {
            let rest = f.difference(a);
            for s in rest.all_subfaces() {
                out.insert(a.union(&s));
            }
        }
        Ok(out)
    }

    /// The link of `a`: faces disjoint from `a` whose union with `a` is a
    /// face. Contains the empty simplex whenever `a` is a face; the link of
    /// a facet is exactly `{∅}`.
    pub fn link(&self, a: &Simplex) -> Result<BTreeSet<Simplex>, ComplexError> {
        if a.is_empty() {
            return Err(ComplexError::EmptySimplexInput);
        }
        if !self.contains_face(a) {
            return Err(ComplexError::NotAFace(a.clone()));
        }
        let mut out = BTreeSet::new();
        for f in self.facets.iter().filter(|f| a.is_face_of(f)) {
            out.extend(f.difference(a).all_subfaces());
        }
        Ok(out)
    }

    /// The maximal elements of the link of `a`: `facet \ a` for every facet
    /// containing `a`. For a facet `a` this is `{∅}`.
    pub fn link_facets(&self, a: &Simplex) -> BTreeSet<Simplex> {
        self.facets
            .iter()
            .filter(|f| a.is_face_of(f))
            .map(|f| f.difference(a))
            .collect()
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0u64; self.dim + 2];
        counts[0] = 1;
        for k in 0..=self.dim as isize {
            counts[(k + 1) as usize] = self.faces(k).expect("dimension in range").len() as u64;
        }
        FVector { counts }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Number of facets containing each ridge ((d−1)-face of a facet).
    pub fn ridge_incidence(&self) -> BTreeMap<Simplex, usize> {
        let mut counts = BTreeMap::new();
        for f in &self.facets {
            for r in f.boundary_facets() {
                *counts.entry(r).or_insert(0) += 1;
            }
        }
        counts
    }

    /// The boundary: ridges contained in exactly one facet. `Ok(None)` means
    /// the complex is closed. Requires `d ≥ 1` and every ridge in at most
    /// two facets.
    pub fn boundary_complex(&self) -> Result<Option<Complex>, ComplexError> {
        if self.dim == 0 {
            return Err(ComplexError::DimensionOutOfRange(-1));
        }
        let counts = self.ridge_incidence();
        if let Some((r, n)) = counts.iter().find(|(_, n)| **n > 2) {
            return Err(ComplexError::NotPseudomanifold(r.clone(), *n));
        }
        let free: BTreeSet<Simplex> = counts
            .into_iter()
            .filter(|(_, n)| *n == 1)
            .map(|(r, _)| r)
            .collect();
        if free.is_empty() {
            return Ok(None);
        }
        Ok(Some(Complex {
            dim: self.dim - 1,
            facets: free,
        }))
    }

    /// True iff every ridge lies in exactly two facets and the facet
    /// adjacency graph (facets adjacent iff sharing a ridge) is connected.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        let facets: Vec<&Simplex> = self.facets.iter().collect();
        let mut by_ridge: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, f) in facets.iter().enumerate() {
            for r in f.boundary_facets() {
                by_ridge.entry(r).or_default().push(i);
            }
        }
        if by_ridge.values().any(|v| v.len() != 2) {
            return false;
        }
        // connectivity over shared ridges
        let mut seen = vec![false; facets.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); facets.len()];
        for pair in by_ridge.values() {
            adjacency[pair[0]].push(pair[1]);
            adjacency[pair[1]].push(pair[0]);
        }
        while let Some(i) = stack.pop() {
            for &j in &adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|s| *s)
    }

    /// Orientability of a closed pseudomanifold, by sign propagation over
    /// the facet adjacency graph.
    pub fn is_orientable(&self) -> Result<bool, ComplexError> {
        if !self.is_closed_pseudomanifold() {
            return Err(ComplexError::NotClosedPseudomanifold);
        }
        let facets: Vec<&Simplex> = self.facets.iter().collect();
        // ridge -> the two (facet index, position of removed vertex) pairs
        let mut by_ridge: HashMap<Simplex, Vec<(usize, usize)>> = HashMap::new();
        for (i, f) in facets.iter().enumerate() {
            for (pos, v) in f.vertices().iter().enumerate() {
                by_ridge.entry(f.without(*v)).or_default().push((i, pos));
            }
        }
        // sign[j] = -sign[i] * (-1)^(pos_i + pos_j) across each ridge
        let mut sign: Vec<i8> = vec![0; facets.len()];
        sign[0] = 1;
        let mut stack = vec![0usize];
        let mut adjacency: Vec<Vec<(usize, i8)>> = vec![Vec::new(); facets.len()];
        for pair in by_ridge.values() {
            let (i, pi) = pair[0];
            let (j, pj) = pair[1];
            let rel: i8 = if (pi + pj) % 2 == 0 { -1 } else { 1 };
            adjacency[i].push((j, rel));
            adjacency[j].push((i, rel));
        }
        while let Some(i) = stack.pop() {
            for &(j, rel) in &adjacency[i] {
                let want = sign[i] * rel;
                if sign[j] == 0 {
                    sign[j] = want;
                    stack.push(j);
                } else if sign[j] != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Combinatorial manifold check by vertex-link inspection, supported
    /// for `d ≤ 3`. In dimension 3 the links must be 2-spheres (closed,
    /// χ = 2) or disks (χ = 1 with connected boundary).
    pub fn is_combinatorial_manifold(&self) -> Result<bool, ComplexError> {
        match self.dim {
            0 => Ok(true),
            1 => {
                let mut degree: HashMap<VertexId, usize> = HashMap::new();
                for f in &self.facets {
                    for v in f.vertices() {
                        *degree.entry(*v).or_insert(0) += 1;
                    }
                }
                Ok(degree.values().all(|d| *d == 1 || *d == 2))
            }
            2 => {
                for v in self.vertices() {
                    let edges = self.link_facets(&Simplex::vertex(v));
                    if !link_graph_is_circle_or_path(&edges) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            3 => {
                for v in self.vertices() {
                    let tris = self.link_facets(&Simplex::vertex(v));
                    let link = match Complex::from_simplices(tris.into_iter()) {
                        Ok(l) if l.dim() == 2 => l,
                        _ => return Ok(false),
                    };
                    if !link.is_combinatorial_manifold()? {
                        return Ok(false);
                    }
                    if !surface_is_sphere_or_disk(&link)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            d => Err(ComplexError::UnsupportedDimension(d)),
        }
    }
}

/// `edges` is a set of 1-simplices; true iff they form a single circle or a
/// single path.
fn link_graph_is_circle_or_path(edges: &BTreeSet<Simplex>) -> bool {
    if edges.is_empty() || edges.iter().any(|e| e.dim() != 1) {
        return false;
    }
    let mut degree: HashMap<VertexId, usize> = HashMap::new();
    let mut adjacency: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for e in edges {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        *degree.entry(a).or_insert(0) += 1;
        *degree.entry(b).or_insert(0) += 1;
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    let ones = degree.values().filter(|d| **d == 1).count();
    if !degree.values().all(|d| *d == 1 || *d == 2) {
        return false;
    }
    if ones != 0 && ones != 2 {
        return false;
    }
    // connectivity
    let start = *degree.keys().next().unwrap();
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    let mut stack = vec![start];
    seen.insert(start);
    while let Some(v) = stack.pop() {
        for &w in adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == degree.len()
}

/// For a 2-complex already known to have manifold vertex links: sphere or
/// disk test via χ and boundary shape.
fn surface_is_sphere_or_disk(link: &Complex) -> Result<bool, ComplexError> {
    if !facet_graph_connected(link) {
        return Ok(false);
    }
    match link.boundary_complex()? {
        None => Ok(link.euler_characteristic() == 2),
        Some(boundary) => {
            Ok(link.euler_characteristic() == 1 && link_graph_is_circle_or_path(boundary.facets())
                && boundary.ridge_incidence().values().all(|n| *n == 2))
        }
    }
}

fn facet_graph_connected(c: &Complex) -> bool {
    let facets: Vec<&Simplex> = c.facets.iter().collect();
    let mut by_ridge: HashMap<Simplex, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.boundary_facets() {
            by_ridge.entry(r).or_default().push(i);
        }
    }
    let mut seen = vec![false; facets.len()];
    seen[0] = true;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for pair in facets[i]
            .boundary_facets()
            .iter()
            .filter_map(|r| by_ridge.get(r))
        {
            for &j in pair {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.iter().all(|s| *s)
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{facet}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(d={}) {}", self.dim, self)
    }
}

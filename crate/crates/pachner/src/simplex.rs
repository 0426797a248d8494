//! Vertices and abstract simplices.
//!
//! A [`Simplex`] is a strictly increasing sequence of vertex labels. The
//! empty simplex (dimension −1) is a legal value and acts as the face of
//! every simplex; several conventions downstream (facet links, the k = d
//! Pachner move) depend on it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::ComplexError;

/// A vertex label. Labels are arbitrary non-negative integers; equality is
/// label equality and labels need not be contiguous.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(label: u32) -> Self {
        VertexId(label)
    }
}

/// An abstract simplex: a strictly increasing sequence of vertex labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Simplex {
    verts: Vec<VertexId>,
}

impl Simplex {
    /// The empty simplex, of dimension −1.
    pub fn empty() -> Self {
        Simplex { verts: Vec::new() }
    }

    /// A single-vertex simplex.
    pub fn vertex(v: impl Into<VertexId>) -> Self {
        Simplex {
            verts: vec![v.into()],
        }
    }

    /// Builds a simplex from labels, rejecting repeated vertices.
    pub fn try_from_labels<I>(labels: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut verts: Vec<VertexId> = labels.into_iter().map(VertexId).collect();
        verts.sort_unstable();
        for pair in verts.windows(2) {
            if pair[0] == pair[1] {
                return Err(ComplexError::DegenerateFacet(pair[0]));
            }
        }
        Ok(Simplex { verts })
    }

    /// Builds a simplex from labels, panicking on repeated vertices.
    /// Intended for literals; use [`Simplex::try_from_labels`] on input data.
    pub fn from_labels(labels: &[u32]) -> Self {
        Self::try_from_labels(labels.iter().copied()).expect("repeated vertex in simplex literal")
    }

    pub(crate) fn from_sorted(verts: Vec<VertexId>) -> Self {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        Simplex { verts }
    }

    /// Dimension: number of vertices minus one; −1 for the empty simplex.
    pub fn dim(&self) -> isize {
        self.verts.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.verts
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    /// True when `self` is a subset of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.verts.len() > other.verts.len() {
            return false;
        }
        let mut it = other.verts.iter();
        self.verts
            .iter()
            .all(|v| it.by_ref().any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.verts.len() && j < other.verts.len() {
            match self.verts[i].cmp(&other.verts[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Set union (the join on vertex level).
    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut verts: Vec<VertexId> = self
            .verts
            .iter()
            .chain(other.verts.iter())
            .copied()
            .collect();
        verts.sort_unstable();
        verts.dedup();
        Simplex { verts }
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex {
            verts: self
                .verts
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        }
    }

    /// `self` with one vertex removed.
    pub fn without(&self, v: VertexId) -> Simplex {
        Simplex {
            verts: self.verts.iter().copied().filter(|w| *w != v).collect(),
        }
    }

    /// `self` with one vertex added.
    pub fn with(&self, v: VertexId) -> Simplex {
        let mut verts = self.verts.clone();
        match verts.binary_search(&v) {
            Ok(_) => {}
            Err(i) => verts.insert(i, v),
        }
        Simplex { verts }
    }

    /// The codimension-one faces: one vertex dropped each. For a single
    /// vertex this is `{∅}`; for the empty simplex it is empty.
    pub fn boundary_facets(&self) -> Vec<Simplex> {
        self.verts.iter().map(|v| self.without(*v)).collect()
    }

    /// All subsets, the empty simplex included.
    pub fn all_subfaces(&self) -> Vec<Simplex> {
        let n = self.verts.len();
        assert!(n < usize::BITS as usize);
        (0..1usize << n)
            .map(|mask| Simplex {
                verts: self
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| *v)
                    .collect(),
            })
            .collect()
    }

    /// All subsets of cardinality `k + 1`.
    pub fn subfaces(&self, k: isize) -> Vec<Simplex> {
        use itertools::Itertools;
        if k < -1 || k > self.dim() {
            return Vec::new();
        }
        if k == -1 {
            return vec![Simplex::empty()];
        }
        self.verts
            .iter()
            .copied()
            .combinations((k + 1) as usize)
            .map(Simplex::from_sorted)
            .collect()
    }

    pub fn max_label(&self) -> Option<u32> {
        self.verts.last().map(|v| v.0)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.verts.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sx(labels: &[u32]) -> Simplex {
        Simplex::from_labels(labels)
    }

    #[test]
    fn dimension_convention() {
        assert_eq!(Simplex::empty().dim(), -1);
        assert_eq!(sx(&[3]).dim(), 0);
        assert_eq!(sx(&[1, 2, 3]).dim(), 2);
    }

    #[test]
    fn repeated_vertex_rejected() {
        assert!(matches!(
            Simplex::try_from_labels([1, 2, 2]),
            Err(ComplexError::DegenerateFacet(_))
        ));
    }

    #[test]
    fn subset_queries() {
        let t = sx(&[1, 2, 3]);
        assert!(sx(&[1, 3]).is_face_of(&t));
        assert!(Simplex::empty().is_face_of(&t));
        assert!(!sx(&[1, 4]).is_face_of(&t));
        assert!(sx(&[4, 5]).is_disjoint(&t));
        assert!(!sx(&[3, 4]).is_disjoint(&t));
    }

    #[test]
    fn boundary_of_vertex_is_empty_simplex() {
        assert_eq!(sx(&[7]).boundary_facets(), vec![Simplex::empty()]);
        assert!(Simplex::empty().boundary_facets().is_empty());
    }

    #[test]
    fn subface_enumeration() {
        let t = sx(&[1, 2, 3]);
        assert_eq!(t.subfaces(1).len(), 3);
        assert_eq!(t.subfaces(-1), vec![Simplex::empty()]);
        assert_eq!(t.all_subfaces().len(), 8);
    }
}

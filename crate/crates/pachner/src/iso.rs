//! Simplicial isomorphism testing.
//!
//! Backtracking over vertex bijections with invariant pruning (f-vectors,
//! vertex-degree signatures). Intended for desk-scale complexes (up to
//! around 15 vertices); the flip-graph layer keeps calls cheap by
//! prefiltering on [`invariant_key`].

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::complex::Complex;
use crate::simplex::{Simplex, VertexId};

/// A vertex bijection mapping the facets of one complex onto another's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoMap {
    map: BTreeMap<VertexId, VertexId>,
}

impl IsoMap {
    pub fn identity(c: &Complex) -> Self {
        IsoMap {
            map: c.vertices().into_iter().map(|v| (v, v)).collect(),
        }
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.map.get(&v).copied()
    }

    pub fn as_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.map
    }

    /// Image of a simplex; vertices outside the domain are kept as-is.
    pub fn apply(&self, s: &Simplex) -> Simplex {
        Simplex::try_from_labels(
            s.vertices()
                .iter()
                .map(|v| self.map.get(v).copied().unwrap_or(*v).0),
        )
        .expect("bijection cannot merge vertices")
    }

    /// Image of a whole complex.
    pub fn apply_complex(&self, c: &Complex) -> Complex {
        Complex::from_simplices(c.facets().iter().map(|f| self.apply(f)))
            .expect("relabeling preserves purity")
    }

    pub fn inverse(&self) -> IsoMap {
        IsoMap {
            map: self.map.iter().map(|(a, b)| (*b, *a)).collect(),
        }
    }
}

/// Per-vertex invariant: (facet degree, edge degree).
fn vertex_signatures(c: &Complex) -> BTreeMap<VertexId, (usize, usize)> {
    let mut facet_deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    for f in c.facets() {
        for v in f.vertices() {
            *facet_deg.entry(*v).or_insert(0) += 1;
        }
    }
    let mut edge_deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    if c.dim() >= 1 {
        for e in c.faces(1).expect("dim >= 1") {
            for v in e.vertices() {
                *edge_deg.entry(*v).or_insert(0) += 1;
            }
        }
    }
    facet_deg
        .into_iter()
        .map(|(v, fd)| (v, (fd, edge_deg.get(&v).copied().unwrap_or(0))))
        .collect()
}

/// A cheap isomorphism-invariant fingerprint: dimension, f-vector, sorted
/// vertex facet-degrees, sorted edge facet-degrees. Equal complexes up to
/// isomorphism always share a key; the converse is checked by search.
pub fn invariant_key(c: &Complex) -> Vec<u64> {
    let mut key: Vec<u64> = vec![c.dim() as u64];
    key.extend(c.f_vector().nonempty_counts());
    let mut facet_deg: BTreeMap<VertexId, u64> = BTreeMap::new();
    for f in c.facets() {
        for v in f.vertices() {
            *facet_deg.entry(*v).or_insert(0) += 1;
        }
    }
    let mut degs: Vec<u64> = facet_deg.into_values().collect();
    degs.sort_unstable();
    key.push(u64::MAX); // separator
    key.extend(degs);
    if c.dim() >= 1 {
        let mut edge_link: Vec<u64> = c
            .faces(1)
            .expect("dim >= 1")
            .iter()
            .map(|e| c.facets().iter().filter(|f| e.is_face_of(f)).count() as u64)
            .collect();
        edge_link.sort_unstable();
        key.push(u64::MAX);
        key.extend(edge_link);
    }
    key
}

struct Search<'a> {
    order: Vec<VertexId>,
    candidates: Vec<Vec<VertexId>>,
    a_edges: HashSet<(VertexId, VertexId)>,
    b_edges: HashSet<(VertexId, VertexId)>,
    a: &'a Complex,
    b: &'a Complex,
}

fn edge_set(c: &Complex) -> HashSet<(VertexId, VertexId)> {
    if c.dim() == 0 {
        return HashSet::new();
    }
    c.faces(1)
        .expect("dim >= 1")
        .into_iter()
        .map(|e| (e.vertices()[0], e.vertices()[1]))
        .collect()
}

impl Search<'_> {
    fn run(&self) -> Option<IsoMap> {
        let mut map: HashMap<VertexId, VertexId> = HashMap::new();
        let mut used: BTreeSet<VertexId> = BTreeSet::new();
        if self.extend(0, &mut map, &mut used) {
            let iso = IsoMap {
                map: map.into_iter().collect(),
            };
            Some(iso)
        } else {
            None
        }
    }

    fn extend(
        &self,
        depth: usize,
        map: &mut HashMap<VertexId, VertexId>,
        used: &mut BTreeSet<VertexId>,
    ) -> bool {
        if depth == self.order.len() {
            return self.facets_match(map);
        }
        let v = self.order[depth];
        for &w in &self.candidates[depth] {
            if used.contains(&w) {
                continue;
            }
            if !self.consistent(v, w, map) {
                continue;
            }
            map.insert(v, w);
            used.insert(w);
            if self.extend(depth + 1, map, used) {
                return true;
            }
            map.remove(&v);
            used.remove(&w);
        }
        false
    }

    /// Adjacency consistency against every vertex mapped so far.
    fn consistent(&self, v: VertexId, w: VertexId, map: &HashMap<VertexId, VertexId>) -> bool {
        for (&u, &x) in map {
            let a_adj = self
                .a_edges
                .contains(&(u.min(v), u.max(v)));
            let b_adj = self
                .b_edges
                .contains(&(x.min(w), x.max(w)));
            if a_adj != b_adj {
                return false;
            }
        }
        true
    }

    fn facets_match(&self, map: &HashMap<VertexId, VertexId>) -> bool {
        self.a.facets().iter().all(|f| {
            let image = Simplex::try_from_labels(
                f.vertices().iter().map(|v| map[v].0),
            );
            match image {
                Ok(s) => self.b.facets().contains(&s),
                Err(_) => false,
            }
        })
    }
}

/// Searches for a simplicial isomorphism from `a` onto `b`. The returned
/// map sends vertices of `a` to vertices of `b`; absence is a value, not an
/// error.
pub fn are_isomorphic(a: &Complex, b: &Complex) -> Option<IsoMap> {
    if a.dim() != b.dim() || a.facet_count() != b.facet_count() {
        return None;
    }
    if a.f_vector() != b.f_vector() {
        return None;
    }
    let sig_a = vertex_signatures(a);
    let sig_b = vertex_signatures(b);
    let mut by_sig_b: HashMap<(usize, usize), Vec<VertexId>> = HashMap::new();
    for (v, s) in &sig_b {
        by_sig_b.entry(*s).or_default().push(*v);
    }
    // degree multisets must agree
    {
        let mut ms_a: Vec<_> = sig_a.values().collect();
        let mut ms_b: Vec<_> = sig_b.values().collect();
        ms_a.sort();
        ms_b.sort();
        if ms_a != ms_b {
            return None;
        }
    }
    // most constrained vertices first
    let mut order: Vec<VertexId> = sig_a.keys().copied().collect();
    order.sort_by_key(|v| (by_sig_b[&sig_a[v]].len(), *v));
    let candidates: Vec<Vec<VertexId>> = order
        .iter()
        .map(|v| by_sig_b[&sig_a[v]].clone())
        .collect();
    let search = Search {
        order,
        candidates,
        a_edges: edge_set(a),
        b_edges: edge_set(b),
        a,
        b,
    };
    search.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn relabeled_sphere_is_isomorphic() {
        let s = generate::sphere(2);
        let relabeled = Complex::from_facets([
            vec![7u32, 8, 9],
            vec![7, 8, 10],
            vec![7, 9, 10],
            vec![8, 9, 10],
        ])
        .unwrap();
        let iso = are_isomorphic(&s, &relabeled).expect("relabeling");
        assert_eq!(iso.apply_complex(&s), relabeled);
        // reflexive and symmetric
        assert!(are_isomorphic(&s, &s).is_some());
        assert!(are_isomorphic(&relabeled, &s).is_some());
    }

    #[test]
    fn different_f_vectors_are_rejected() {
        assert!(are_isomorphic(&generate::sphere(2), &generate::octahedron()).is_none());
    }

    #[test]
    fn six_vertex_spheres_octahedron_vs_stacked() {
        // stacked: subdivide two facets of ∂Δ³
        let stacked = Complex::from_facets([
            vec![1u32, 2, 5],
            vec![1, 3, 5],
            vec![2, 3, 5],
            vec![1, 2, 6],
            vec![1, 4, 6],
            vec![2, 4, 6],
            vec![1, 3, 4],
            vec![2, 3, 4],
        ])
        .unwrap();
        assert!(stacked.is_closed_pseudomanifold());
        assert_eq!(stacked.f_vector(), generate::octahedron().f_vector());
        assert!(are_isomorphic(&stacked, &generate::octahedron()).is_none());
    }

    #[test]
    fn iso_map_composes_onto_facets() {
        let s = generate::octahedron();
        let perm = Complex::from_simplices(s.facets().iter().map(|f| {
            Simplex::try_from_labels(f.vertices().iter().map(|v| (v.0 * 7) % 13 + 20)).unwrap()
        }))
        .unwrap();
        let iso = are_isomorphic(&s, &perm).expect("permuted copy");
        assert_eq!(iso.apply_complex(&s), perm);
        assert_eq!(iso.inverse().apply_complex(&perm), s);
    }
}

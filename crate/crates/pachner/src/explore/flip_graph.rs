//! Flip-graph enumeration up to isomorphism and connectivity certificates.
//!
//! Nodes are canonical representatives of isomorphism classes; an edge
//! records one Pachner move realizing the transition. The search is BFS
//! from a seed complex, exhaustive within a vertex budget. Class lookups
//! use the invariant key as a prefilter and run the full backtracking
//! isomorphism test only within key buckets, which keeps budget-7
//! enumeration under a second.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fs;
use std::io::Write;
use std::path::Path;

use super::{simplex_labels, ExploreError};
use crate::complex::Complex;
use crate::iso::{are_isomorphic, invariant_key, IsoMap};
use crate::moves::{self, MoveSite};
use crate::trace::Trace;

/// An unordered flip-graph edge, stored with the move realizing it from
/// the `from` node's representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipEdge {
    pub from: usize,
    pub to: usize,
    pub site: MoveSite,
}

pub struct FlipGraph {
    nodes: Vec<Complex>,
    keys: Vec<Vec<u64>>,
    edges: Vec<FlipEdge>,
    budget: usize,
}

impl FlipGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[Complex] {
        &self.nodes
    }

    pub fn edges(&self) -> &[FlipEdge] {
        &self.edges
    }

    pub fn vertex_budget(&self) -> usize {
        self.budget
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The node isomorphic to `c`, with the map from the representative
    /// onto `c`.
    pub fn find_node(&self, c: &Complex) -> Option<(usize, IsoMap)> {
        let key = invariant_key(c);
        for (i, node) in self.nodes.iter().enumerate() {
            if self.keys[i] == key {
                if let Some(iso) = are_isomorphic(node, c) {
                    return Some((i, iso));
                }
            }
        }
        None
    }

    /// Writes the adjacency list (`node_id: neighbor_id[move_kind] ...`)
    /// to `graph.txt` plus a sidecar `nodes/` directory of facet-list
    /// files.
    pub fn export_to(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir.join("nodes"))?;
        let mut neighbors: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            neighbors[e.from].push((e.to, e.site.kind()));
            neighbors[e.to].push((e.from, moves::inverse_site(&e.site).kind()));
        }
        let mut out = fs::File::create(dir.join("graph.txt"))?;
        for (i, mut ns) in neighbors.into_iter().enumerate() {
            ns.sort_unstable();
            let rendered: Vec<String> =
                ns.iter().map(|(j, k)| format!("{j}[{k}]")).collect();
            writeln!(out, "{i}: {}", rendered.join(" "))?;
        }
        for (i, node) in self.nodes.iter().enumerate() {
            let mut f = fs::File::create(dir.join("nodes").join(format!("node_{i:03}.txt")))?;
            for facet in node.facets() {
                writeln!(f, "{}", simplex_labels(facet))?;
            }
        }
        Ok(())
    }
}

/// BFS over [`moves::apply_move`] from `c0`, merging isomorphic complexes,
/// exhaustive over all complexes reachable within the vertex budget.
pub fn build_flip_graph(c0: &Complex, vertex_budget: usize) -> Result<FlipGraph, ExploreError> {
    if vertex_budget < c0.vertex_count() {
        return Err(ExploreError::BudgetTooSmall {
            budget: vertex_budget,
            needed: c0.vertex_count(),
        });
    }
    if !c0.is_closed_pseudomanifold() {
        return Err(ExploreError::NotClosed);
    }
    let mut graph = FlipGraph {
        nodes: vec![c0.clone()],
        keys: vec![invariant_key(c0)],
        edges: Vec::new(),
        budget: vertex_budget,
    };
    let mut by_key: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    by_key.insert(graph.keys[0].clone(), vec![0]);
    let mut seen_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        let rep = graph.nodes[u].clone();
        for site in super::walk::budgeted_moves(&rep, vertex_budget) {
            let next = moves::apply_move(&rep, &site)?;
            let key = invariant_key(&next);
            let bucket = by_key.entry(key.clone()).or_default();
            let found = bucket
                .iter()
                .copied()
                .find(|&i| are_isomorphic(&graph.nodes[i], &next).is_some());
            let v = match found {
                Some(v) => v,
                None => {
                    let v = graph.nodes.len();
                    graph.nodes.push(next);
                    graph.keys.push(key);
                    bucket.push(v);
                    queue.push_back(v);
                    v
                }
            };
            if u != v && seen_pairs.insert((u.min(v), u.max(v))) {
                graph.edges.push(FlipEdge { from: u, to: v, site });
            }
        }
    }
    Ok(graph)
}

/// A shortest flip path rendered as a concrete trace from a start complex,
/// together with the isomorphism from the replayed end state onto the
/// target.
#[derive(Clone, Debug)]
pub struct PathCertificate {
    pub trace: Trace,
    pub end_iso: IsoMap,
}

impl PathCertificate {
    /// Replays the trace from `c1` and checks the end state maps onto
    /// `c2` under the recorded isomorphism.
    pub fn verify(&self, c1: &Complex, c2: &Complex) -> bool {
        match self.trace.replay(c1) {
            Ok(end) => self.end_iso.apply_complex(&end) == *c2,
            Err(_) => false,
        }
    }
}

/// A shortest path in the flip graph between the classes of `c1` and
/// `c2`, rendered as moves on `c1` itself (each step picks the first
/// enumerated move landing in the next class). `Ok(None)` means the two
/// classes lie in different components.
pub fn connectivity_certificate(
    graph: &FlipGraph,
    c1: &Complex,
    c2: &Complex,
) -> Result<Option<PathCertificate>, ExploreError> {
    let (start, _) = graph.find_node(c1).ok_or(ExploreError::NodeNotInGraph)?;
    let (goal, _) = graph.find_node(c2).ok_or(ExploreError::NodeNotInGraph)?;
    // BFS with deterministic tie-breaks
    let adj = graph.adjacency();
    let mut prev: Vec<Option<usize>> = vec![None; graph.node_count()];
    let mut seen = vec![false; graph.node_count()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if u == goal {
            break;
        }
        let mut ns = adj[u].clone();
        ns.sort_unstable();
        for v in ns {
            if !seen[v] {
                seen[v] = true;
                prev[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    if !seen[goal] {
        return Ok(None);
    }
    let mut path = vec![goal];
    while let Some(p) = prev[*path.last().unwrap()] {
        path.push(p);
    }
    path.reverse();

    let mut trace = Trace::new("input", None);
    let mut current = c1.clone();
    for &next_class in &path[1..] {
        let site = super::walk::budgeted_moves(&current, graph.budget)
            .into_iter()
            .find(|site| {
                moves::apply_move(&current, site)
                    .ok()
                    .and_then(|c| {
                        (invariant_key(&c) == graph.keys[next_class]
                            && are_isomorphic(&graph.nodes[next_class], &c).is_some())
                        .then_some(())
                    })
                    .is_some()
            })
            .expect("edge in the flip graph is realizable from any class member");
        current = moves::apply_move(&current, &site)?;
        trace.push_move(site);
    }
    trace.end = Some(current.clone());
    let end_iso = are_isomorphic(&current, c2).expect("end state lies in the goal class");
    Ok(Some(PathCertificate { trace, end_iso }))
}

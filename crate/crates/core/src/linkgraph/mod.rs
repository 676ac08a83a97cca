//! Link graphs `L_S[B]` of a seed set `S` on a disjoint ground set `B`, their
//! maximal independent sets, and the explicit constructions built from them.
//!
//! For `x, y ∈ B` there is an edge `xy` when `{x, y, s}` is an L-triple for
//! some `s ∈ S`. There is a loop at `x` when `{x, x, s}` is an L-triple for
//! some `s ∈ S`, or `{x, s, s'}` is one for some `s, s' ∈ S`.

mod constructions;
mod mis;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::equations::{LTriple, PqEquation};
use crate::error::{Error, Result};

pub use constructions::{
    feasible_triangle_sizes, matching_construction, triangle_construction, MatchingConditions,
    MatchingConstruction, TriangleConstruction,
};
pub use mis::{check_mis_bounds, count_mis, enumerate_mis, MisBoundCheck, MAX_ENUMERATED};

/// A simple graph on integer vertices, possibly with loops. Edges are stored
/// as `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkGraph {
    vertices: BTreeSet<u64>,
    edges: BTreeSet<(u64, u64)>,
    loops: BTreeSet<u64>,
    seed: BTreeSet<u64>,
}

impl LinkGraph {
    /// A graph from explicit parts, with an empty seed. Edge endpoints may come
    /// in either order; a pair `(v, v)` is read as a loop.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = u64>,
        edges: impl IntoIterator<Item = (u64, u64)>,
        loops: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        let vertices: BTreeSet<u64> = vertices.into_iter().collect();
        let mut g = LinkGraph {
            vertices,
            edges: BTreeSet::new(),
            loops: BTreeSet::new(),
            seed: BTreeSet::new(),
        };
        for (u, v) in edges {
            g.require_vertex(u)?;
            g.require_vertex(v)?;
            if u == v {
                g.loops.insert(u);
            } else {
                g.edges.insert((u.min(v), u.max(v)));
            }
        }
        for v in loops {
            g.require_vertex(v)?;
            g.loops.insert(v);
        }
        Ok(g)
    }

    fn require_vertex(&self, v: u64) -> Result<()> {
        if self.vertices.contains(&v) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("{v} is not a vertex of the graph")))
        }
    }

    pub fn vertices(&self) -> &BTreeSet<u64> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(u64, u64)> {
        &self.edges
    }

    pub fn loops(&self) -> &BTreeSet<u64> {
        &self.loops
    }

    pub fn seed(&self) -> &BTreeSet<u64> {
        &self.seed
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_edge(&self, u: u64, v: u64) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn has_loop(&self, v: u64) -> bool {
        self.loops.contains(&v)
    }

    /// Neighbour lists, loops excluded.
    pub fn adjacency(&self) -> BTreeMap<u64, BTreeSet<u64>> {
        let mut adj: BTreeMap<u64, BTreeSet<u64>> =
            self.vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        for &(u, v) in &self.edges {
            adj.entry(u).or_default().insert(v);
            adj.entry(v).or_default().insert(u);
        }
        adj
    }

    /// The graph with every looped vertex and its edges deleted. Its maximal
    /// independent sets are those counted by [`count_mis`].
    pub fn without_loops(&self) -> LinkGraph {
        self.induced(self.vertices.difference(&self.loops).copied())
    }

    /// The subgraph induced on `keep ∩ V`, seed preserved.
    pub fn induced(&self, keep: impl IntoIterator<Item = u64>) -> LinkGraph {
        let vertices: BTreeSet<u64> = keep
            .into_iter()
            .filter(|v| self.vertices.contains(v))
            .collect();
        LinkGraph {
            edges: self
                .edges
                .iter()
                .filter(|(u, v)| vertices.contains(u) && vertices.contains(v))
                .copied()
                .collect(),
            loops: self.loops.intersection(&vertices).copied().collect(),
            seed: self.seed.clone(),
            vertices,
        }
    }

    /// Connected components (loops ignored), each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<u64>> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the graph, loops ignored, has no triangle.
    pub fn is_triangle_free(&self) -> bool {
        let adj = self.adjacency();
        self.edges.iter().all(|(u, v)| adj[u].is_disjoint(&adj[v]))
    }

    /// Whether `set` is independent: no edge inside it and no looped member.
    pub fn is_independent(&self, set: &[u64]) -> bool {
        set.iter().all(|v| !self.loops.contains(v))
            && set
                .iter()
                .enumerate()
                .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// An L-triple `{u, v, s}` with `s` in the seed, if one exists.
    pub fn edge_witness(&self, eq: &PqEquation, u: u64, v: u64) -> Option<LTriple> {
        self.seed
            .iter()
            .find(|&&s| eq.is_triple(u, v, s))
            .map(|&s| LTriple::new(u, v, s))
    }

    /// An L-triple `{x, x, s}` or `{x, s, s'}` with `s, s'` in the seed, if one exists.
    pub fn loop_witness(&self, eq: &PqEquation, x: u64) -> Option<LTriple> {
        for &s in &self.seed {
            if eq.is_triple(x, x, s) {
                return Some(LTriple::new(x, x, s));
            }
            for &t in self.seed.range(s..) {
                if eq.is_triple(x, s, t) {
                    return Some(LTriple::new(x, s, t));
                }
            }
        }
        None
    }
}

/// The integer `w > 0` with `num = den * w`, if any.
fn exact_div(num: i128, den: i128) -> Option<u64> {
    (num > 0 && num % den == 0).then(|| (num / den) as u64)
}

/// Every `w > 0` such that `{s, x, w}` is an L-triple of `px + qy = z`.
fn third_elements(p: i128, q: i128, s: i128, x: i128) -> impl Iterator<Item = u64> {
    [
        exact_div(p * s + q * x, 1),
        exact_div(p * x + q * s, 1),
        exact_div(s - p * x, q),
        exact_div(s - q * x, p),
        exact_div(x - p * s, q),
        exact_div(x - q * s, p),
    ]
    .into_iter()
    .flatten()
}

/// Builds `L_S[B]` for `px + qy = z`. `S` and `B` must be disjoint.
pub fn build_link(eq: &PqEquation, seed: &[u64], ground: &[u64]) -> Result<LinkGraph> {
    let s: BTreeSet<u64> = seed.iter().copied().collect();
    let b: BTreeSet<u64> = ground.iter().copied().collect();
    if s.contains(&0) || b.contains(&0) {
        return Err(Error::InvalidInput("elements must be positive".into()));
    }
    if let Some(v) = s.intersection(&b).next() {
        return Err(Error::InvalidInput(format!("S and B share the element {v}")));
    }
    let (p, q) = (eq.p() as i128, eq.q() as i128);
    let mut g = LinkGraph {
        vertices: b.clone(),
        edges: BTreeSet::new(),
        loops: BTreeSet::new(),
        seed: s.clone(),
    };
    for &x in &b {
        for &sv in &s {
            for w in third_elements(p, q, sv as i128, x as i128) {
                if w == x || s.contains(&w) {
                    g.loops.insert(x);
                } else if b.contains(&w) {
                    g.edges.insert((x.min(w), x.max(w)));
                }
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq(p: u64, q: u64) -> PqEquation {
        PqEquation::new(p, q).unwrap()
    }

    #[test]
    fn small_link_graph_by_hand() {
        // x + y = z style checks on 2x + y = z with S = {1}, B = [2, 7]:
        // {1, x, w}: w = 2 + x, 2x + 1, (1 - 2x) no, (1 - x)/2 no, x - 2, (x - 1)/2
        let g = build_link(&pq(2, 1), &[1], &[2, 3, 4, 5, 6, 7]).unwrap();
        let expected: BTreeSet<(u64, u64)> = [(2, 4), (2, 5), (3, 5), (3, 7), (4, 6), (5, 7)]
            .into_iter()
            .collect();
        assert_eq!(g.edges(), &expected);
        // {x, x, 1}: 3x = 1, 2 + x = x, 2x + 1 = x: none; {x, 1, 1}: x = 3
        assert_eq!(g.loops(), &[3].into_iter().collect());
    }

    #[test]
    fn link_graph_on_upper_interval() {
        let g = build_link(&pq(2, 1), &[1], &[4, 5, 6, 7, 8, 9]).unwrap();
        let expected: BTreeSet<(u64, u64)> = [(4, 6), (4, 9), (5, 7), (6, 8), (7, 9)].into_iter().collect();
        assert_eq!(g.edges(), &expected);
        assert!(g.loops().is_empty());
        let g = build_link(&pq(2, 1), &[1], &[3, 4, 5]).unwrap();
        assert!(g.has_loop(3) && g.has_edge(3, 5));
        let empty = build_link(&pq(3, 2), &[], &[4, 5, 6]).unwrap();
        assert!(empty.edges().is_empty() && empty.loops().is_empty());
    }

    #[test]
    fn rejects_overlap() {
        assert!(build_link(&pq(2, 1), &[3], &[3, 4]).is_err());
        assert!(build_link(&pq(2, 1), &[0], &[3, 4]).is_err());
    }

    #[test]
    fn witnesses_exist_for_every_edge_and_loop() {
        let eq = pq(3, 2);
        let g = build_link(&eq, &[2, 5], &(6..=40).collect::<Vec<_>>()).unwrap();
        assert!(!g.edges().is_empty());
        for &(u, v) in g.edges() {
            assert!(g.edge_witness(&eq, u, v).is_some());
        }
        for &x in g.loops() {
            assert!(g.loop_witness(&eq, x).is_some());
        }
    }

    #[test]
    fn triangle_detection_and_components() {
        let tri = LinkGraph::from_parts([1, 2, 3, 4], [(1, 2), (2, 3), (3, 1)], []).unwrap();
        assert!(!tri.is_triangle_free());
        assert_eq!(tri.components(), vec![vec![1, 2, 3], vec![4]]);
        let path = LinkGraph::from_parts([1, 2, 3], [(1, 2), (3, 2)], [3]).unwrap();
        assert!(path.is_triangle_free());
        assert!(path.has_edge(2, 3) && path.has_loop(3));
        assert_eq!(path.without_loops().vertices().len(), 2);
        assert!(LinkGraph::from_parts([1], [(1, 2)], []).is_err());
    }

    #[test]
    fn json_shape() {
        let g = build_link(&pq(2, 1), &[1], &[2, 3, 4]).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["vertices"], serde_json::json!([2, 3, 4]));
        assert_eq!(v["edges"], serde_json::json!([[2, 4]]));
        assert_eq!(v["loops"], serde_json::json!([3]));
        assert_eq!(v["seed"], serde_json::json!([1]));
    }
}

//! Simple undirected graphs with dense vertex indices `0..n`, plus the
//! vertex-set and doubled-weight primitives everything else is built on.
//!
//! Graphs are immutable once constructed; derived graphs (induced subgraphs,
//! spliced assemblies, peeled remainders) are new values. Weights are carried
//! exclusively as doubled integers so that all bound comparisons stay in
//! integer arithmetic.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A simple undirected graph: no self-loops, no parallel edges, symmetric
/// adjacency, vertices `0..vertex_count`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    ///
    /// Rejects out-of-range endpoints, self-loops and duplicate edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u,
                    vertex_count: n,
                });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: n,
                });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !adj[u].insert(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[v].insert(u);
        }
        let g = Graph {
            adj,
            edge_count: edges.len(),
        };
        debug_assert!(g.check_symmetry());
        Ok(g)
    }

    /// The empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.adj.len() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.adj.len(),
            });
        }
        Ok(())
    }

    /// Number of edges incident with `v`.
    ///
    /// Panics if `v` is out of range, like slice indexing.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Checked variant of [`degree`](Self::degree) for untrusted input.
    pub fn try_degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(&v))
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(|s| s.len()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adj.iter().map(|s| s.len()).max()
    }

    /// Number of edges with one end in `s` and the other in `t`.
    ///
    /// `s` and `t` must be disjoint subsets of the vertex range.
    pub fn edges_between(&self, s: &VertexSet, t: &VertexSet) -> Result<usize> {
        s.check_against(self)?;
        t.check_against(self)?;
        if let Some(&x) = s.iter().find(|v| t.contains(**v)) {
            return Err(Error::OverlappingSets(x));
        }
        let (small, large) = if s.len() <= t.len() { (s, t) } else { (t, s) };
        let mut count = 0;
        for &u in small.iter() {
            count += self.adj[u].iter().filter(|v| large.contains(**v)).count();
        }
        Ok(count)
    }

    /// Doubled weight of the nonempty set `s`: the sum of host-graph degrees
    /// over `s`, which equals `2*e(G[s]) + e[s, V \ s]`.
    pub fn doubled_weight(&self, s: &VertexSet) -> Result<DoubledWeight> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        s.check_against(self)?;
        Ok(DoubledWeight(
            s.iter().map(|&v| self.adj[v].len() as u64).sum(),
        ))
    }

    /// The subgraph induced on the nonempty set `s`, together with the map
    /// from new indices to the original ones (ascending original order).
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        s.check_against(self)?;
        let order: Vec<usize> = s.iter().copied().collect();
        let position: std::collections::HashMap<usize, usize> =
            order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![BTreeSet::new(); order.len()];
        let mut edge_count = 0;
        for (i, &v) in order.iter().enumerate() {
            for w in self.adj[v].iter() {
                if let Some(&j) = position.get(w) {
                    adj[i].insert(j);
                    if i < j {
                        edge_count += 1;
                    }
                }
            }
        }
        Ok((Graph { adj, edge_count }, order))
    }

    /// New graph with vertex `v` removed; remaining vertices are re-indexed
    /// preserving order. Returns the graph and the new-to-old index map.
    pub fn remove_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>)> {
        self.check_vertex(v)?;
        let keep: VertexSet = self.vertices().filter(|&u| u != v).collect();
        if keep.is_empty() {
            return Ok((Graph::empty(0), Vec::new()));
        }
        self.induced_subgraph(&keep)
    }

    /// Disjoint union: `other`'s vertices are appended after `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.adj.len();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|s| s.iter().map(|&v| v + offset).collect::<BTreeSet<_>>()),
        );
        Graph {
            adj,
            edge_count: self.edge_count + other.edge_count,
        }
    }

    /// Copy of `self` with one extra edge. Errors on duplicates and loops.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        let mut adj = self.adj.clone();
        adj[u].insert(v);
        adj[v].insert(u);
        Ok(Graph {
            adj,
            edge_count: self.edge_count + 1,
        })
    }

    /// Copy of `self` without the edge `u-v`. Errors if `u-v` is not an edge.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut adj = self.adj.clone();
        adj[u].remove(&v);
        adj[v].remove(&u);
        Ok(Graph {
            adj,
            edge_count: self.edge_count - 1,
        })
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`. `perm` must be a
    /// permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let n = self.adj.len();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut adj = vec![BTreeSet::new(); n];
        for (v, s) in self.adj.iter().enumerate() {
            for &w in s {
                adj[perm[v]].insert(perm[w]);
            }
        }
        Graph {
            adj,
            edge_count: self.edge_count,
        }
    }

    /// True iff every adjacency entry has its mirror image.
    pub fn check_symmetry(&self) -> bool {
        self.adj
            .iter()
            .enumerate()
            .all(|(u, s)| s.iter().all(|&v| v < self.adj.len() && self.adj[v].contains(&u)))
    }

    /// Vertex set of the connected component containing `v`.
    pub fn component_of(&self, v: usize) -> VertexSet {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(u, &s)| s.then_some(u))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || self.component_of(0).len() == self.adj.len()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}; ", self.vertex_count(), self.edge_count())?;
        let mut first = true;
        for (u, v) in self.edges() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
            first = false;
        }
        write!(f, ")")
    }
}

/// A set of vertex indices of some associated graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexSet {
    members: BTreeSet<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.members.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.members.remove(&v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = &usize> {
        self.members.iter()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.members.extend(other.members.iter().copied());
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.members.is_disjoint(&other.members)
    }

    /// All vertices of `g` not in `self`.
    pub fn complement(&self, g: &Graph) -> VertexSet {
        g.vertices().filter(|v| !self.contains(*v)).collect()
    }

    pub(crate) fn check_against(&self, g: &Graph) -> Result<()> {
        if let Some(&v) = self.members.iter().next_back() {
            if v >= g.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: g.vertex_count(),
                });
            }
        }
        Ok(())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet {
            members: iter.into_iter().collect(),
        }
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members: Vec<usize> = Vec::deserialize(deserializer)?;
        Ok(members.into_iter().collect())
    }
}

impl Serialize for DoubledWeight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.0)
    }
}

impl<'de> Deserialize<'de> for DoubledWeight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        u64::deserialize(deserializer).map(DoubledWeight)
    }
}

impl From<&[usize]> for VertexSet {
    fn from(slice: &[usize]) -> Self {
        slice.iter().copied().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(arr: [usize; N]) -> Self {
        arr.into_iter().collect()
    }
}

/// An exact weight stored doubled: the value equals the sum of host-graph
/// degrees over the vertices of a part, i.e. twice the half-integer weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DoubledWeight(pub u64);

impl DoubledWeight {
    pub fn value(self) -> u64 {
        self.0
    }

    /// The per-part density bound, evaluated exactly: `7*value <= 31*size`
    /// (equivalently, weight at most 31/14 per vertex).
    pub fn within_bound(self, part_size: usize) -> bool {
        7 * self.0 <= 31 * part_size as u64
    }

    /// True iff the bound holds with equality.
    pub fn tight(self, part_size: usize) -> bool {
        7 * self.0 == 31 * part_size as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic;

    #[test]
    fn degree_examples() {
        let k4 = classic::complete(4);
        for v in 0..4 {
            assert_eq!(k4.degree(v), 3);
        }
        let single = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(single.degree(0), 1);
        let mut iso = Graph::empty(1);
        assert_eq!(iso.degree(0), 0);
        iso = Graph::empty(3);
        assert_eq!(iso.degree(2), 0);
        assert!(iso.try_degree(3).is_err());
    }

    #[test]
    fn edges_between_examples() {
        let k4 = classic::complete(4);
        assert_eq!(
            k4.edges_between(&[0, 1].into(), &[2, 3].into()).unwrap(),
            4
        );
        let empty = Graph::empty(4);
        assert_eq!(
            empty.edges_between(&[0].into(), &[1, 2].into()).unwrap(),
            0
        );
        let path = classic::path(4);
        assert_eq!(
            path.edges_between(&[0, 1].into(), &[2, 3].into()).unwrap(),
            1
        );
        assert!(matches!(
            k4.edges_between(&[0, 1].into(), &[1, 2].into()),
            Err(Error::OverlappingSets(1))
        ));
    }

    #[test]
    fn doubled_weight_examples() {
        let k4 = classic::complete(4);
        let all: VertexSet = (0..4).collect();
        assert_eq!(k4.doubled_weight(&all).unwrap().value(), 12);

        // K4 plus a pendant vertex attached to vertex 0.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)])
            .unwrap();
        let s: VertexSet = (0..4).collect();
        assert_eq!(g.doubled_weight(&s).unwrap().value(), 13);
        assert!(g.doubled_weight(&VertexSet::new()).is_err());
    }

    #[test]
    fn doubled_weight_identity() {
        // 2*e(G[s]) + e[s, complement] = sum of degrees over s.
        let g = classic::wheel(5);
        for mask in 1u32..(1 << 6) {
            let s: VertexSet = (0..6).filter(|&v| mask >> v & 1 == 1).collect();
            let w = g.doubled_weight(&s).unwrap().value();
            let (ind, _) = g.induced_subgraph(&s).unwrap();
            let cross = g.edges_between(&s, &s.complement(&g)).unwrap();
            assert_eq!(w, 2 * ind.edge_count() as u64 + cross as u64);
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = classic::complete(4);
        let (k3, map) = k4.induced_subgraph(&[0, 2, 3].into()).unwrap();
        assert_eq!(k3.vertex_count(), 3);
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(map, vec![0, 2, 3]);

        let c5 = classic::cycle(5);
        let (whole, _) = c5.induced_subgraph(&(0..5).collect()).unwrap();
        assert_eq!(whole, c5);

        let (p3, _) = c5.induced_subgraph(&[1, 2, 3].into()).unwrap();
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(p3.degree(1), 2);
    }

    #[test]
    fn construction_rejects_invalid() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn bound_arithmetic() {
        assert!(DoubledWeight(31).within_bound(7));
        assert!(DoubledWeight(31).tight(7));
        assert!(!DoubledWeight(32).within_bound(7));
        assert!(DoubledWeight(12).within_bound(4) && !DoubledWeight(12).tight(4));
    }
}

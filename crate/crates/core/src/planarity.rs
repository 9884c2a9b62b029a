//! Planarity decision via the left-right criterion, plus the Euler-formula
//! prefilter.
//!
//! The test is the two-pass variant: a DFS orientation computing lowpoints
//! and nesting order, then a constraint pass over conflict pairs of return
//! edge intervals. Both passes use explicit stacks so deep inputs cannot
//! overflow the call stack. No embedding is produced.

use std::collections::HashMap;

use crate::graph::Graph;

/// `false` iff the edge count already rules planarity out (`e > 3n - 6` for
/// `n >= 3`); `true` is inconclusive. For `n < 3` always `true`.
pub fn euler_prefilter(n: usize, e: usize) -> bool {
    if n < 3 {
        return true;
    }
    e <= 3 * n - 6
}

/// Decides whether `g` admits a planar embedding.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n <= 4 {
        return true;
    }
    if !euler_prefilter(n, g.edge_count()) {
        return false;
    }
    LrTest::new(g).run()
}

type EdgeId = usize;

#[derive(Clone, Copy, Default, PartialEq, Eq)]
struct Interval {
    low: Option<EdgeId>,
    high: Option<EdgeId>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrTest<'a> {
    g: &'a Graph,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<EdgeId>>,
    // per oriented edge
    src: Vec<usize>,
    dst: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    reference: Vec<Option<EdgeId>>,
    lowpt_edge: Vec<Option<EdgeId>>,
    stack_bottom: Vec<usize>,
    oriented: HashMap<(usize, usize), EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    roots: Vec<usize>,
    stack: Vec<ConflictPair>,
}

impl<'a> LrTest<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        LrTest {
            g,
            height: vec![None; n],
            parent_edge: vec![None; n],
            src: Vec::new(),
            dst: Vec::new(),
            lowpt: Vec::new(),
            lowpt2: Vec::new(),
            nesting_depth: Vec::new(),
            reference: Vec::new(),
            lowpt_edge: Vec::new(),
            stack_bottom: Vec::new(),
            oriented: HashMap::new(),
            out_edges: vec![Vec::new(); n],
            roots: Vec::new(),
            stack: Vec::new(),
        }
    }

    fn run(mut self) -> bool {
        let n = self.g.vertex_count();
        for v in 0..n {
            if self.height[v].is_none() {
                self.height[v] = Some(0);
                self.roots.push(v);
                self.orient_from(v);
            }
        }
        // sort adjacencies by nesting depth (stable, so orientation order
        // breaks ties deterministically)
        for v in 0..n {
            self.out_edges[v].sort_by_key(|&e| self.nesting_depth[e]);
        }
        let roots = std::mem::take(&mut self.roots);
        for &root in &roots {
            if !self.test_from(root) {
                return false;
            }
        }
        true
    }

    fn new_edge(&mut self, v: usize, w: usize, h: usize) -> EdgeId {
        let id = self.src.len();
        self.src.push(v);
        self.dst.push(w);
        self.lowpt.push(h);
        self.lowpt2.push(h);
        self.nesting_depth.push(0);
        self.reference.push(None);
        self.lowpt_edge.push(None);
        self.stack_bottom.push(0);
        self.oriented.insert((v.min(w), v.max(w)), id);
        self.out_edges[v].push(id);
        id
    }

    /// Finalizes an edge after its lowpoints are known: nesting depth plus
    /// the lowpoint fold into the parent edge.
    fn finish_edge(&mut self, e: EdgeId, v: usize) {
        self.nesting_depth[e] = 2 * self.lowpt[e]
            + usize::from(self.lowpt2[e] < self.height[v].unwrap());
        if let Some(pe) = self.parent_edge[v] {
            if self.lowpt[e] < self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
                self.lowpt[pe] = self.lowpt[e];
            } else if self.lowpt[e] > self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
            } else {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
            }
        }
    }

    fn orient_from(&mut self, start: usize) {
        // frame: (vertex, neighbor cursor, tree edge awaiting finish)
        let mut frames: Vec<(usize, usize, Option<EdgeId>)> = vec![(start, 0, None)];
        while let Some((v, mut i, pending)) = frames.pop() {
            if let Some(e) = pending {
                self.finish_edge(e, v);
            }
            let neighbors: Vec<usize> = self.g.neighbors(v).collect();
            while i < neighbors.len() {
                let w = neighbors[i];
                let key = (v.min(w), v.max(w));
                if self.oriented.contains_key(&key) {
                    i += 1;
                    continue;
                }
                let hv = self.height[v].unwrap();
                let e = self.new_edge(v, w, hv);
                if self.height[w].is_none() {
                    self.parent_edge[w] = Some(e);
                    self.height[w] = Some(hv + 1);
                    frames.push((v, i + 1, Some(e)));
                    frames.push((w, 0, None));
                    break;
                }
                self.lowpt[e] = self.height[w].unwrap();
                self.finish_edge(e, v);
                i += 1;
            }
        }
    }

    fn top(&self) -> Option<&ConflictPair> {
        self.stack.last()
    }

    fn conflicting(&self, interval: &Interval, b: EdgeId) -> bool {
        match interval.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> Option<usize> {
        match (p.left.low, p.right.low) {
            (Some(l), Some(r)) => Some(self.lowpt[l].min(self.lowpt[r])),
            (Some(l), None) => Some(self.lowpt[l]),
            (None, Some(r)) => Some(self.lowpt[r]),
            (None, None) => None,
        }
    }

    fn test_from(&mut self, start: usize) -> bool {
        let mut frames: Vec<(usize, usize, Option<EdgeId>)> = vec![(start, 0, None)];
        while let Some((v, mut i, pending)) = frames.pop() {
            if let Some(e) = pending {
                if !self.integrate(e, v, i) {
                    return false;
                }
                i += 1;
            }
            let edges: Vec<EdgeId> = self.out_edges[v].clone();
            let mut descended = false;
            while i < edges.len() {
                let e = edges[i];
                let w = self.dst[e];
                self.stack_bottom[e] = self.stack.len();
                if self.parent_edge[w] == Some(e) {
                    // tree edge: process subtree first, integrate on return
                    frames.push((v, i, Some(e)));
                    frames.push((w, 0, None));
                    descended = true;
                    break;
                }
                // back edge
                self.lowpt_edge[e] = Some(e);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(e),
                        high: Some(e),
                    },
                });
                if !self.integrate(e, v, i) {
                    return false;
                }
                i += 1;
            }
            if !descended {
                if let Some(e) = self.parent_edge[v] {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    /// Folds the return-edge constraints of `e` (the `i`-th ordered edge out
    /// of `v`) into the conflict stack.
    fn integrate(&mut self, e: EdgeId, v: usize, i: usize) -> bool {
        if self.lowpt[e] < self.height[v].unwrap() {
            if i == 0 {
                let pe = self.parent_edge[v].expect("non-root has parent");
                self.lowpt_edge[pe] = self.lowpt_edge[e];
            } else if !self.add_constraints(e, self.parent_edge[v].expect("non-root")) {
                return false;
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: EdgeId, e: EdgeId) -> bool {
        let mut p = ConflictPair::default();
        // merge return edges of ei into p.right
        loop {
            let mut q = match self.stack.pop() {
                Some(q) => q,
                None => break,
            };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false; // not planar
            }
            let q_low = q.right.low.expect("stacked interval has low");
            if self.lowpt[q_low] > self.lowpt[e] {
                // merge intervals
                if p.right.is_empty() {
                    p.right.high = q.right.high;
                } else {
                    self.reference[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                // align
                self.reference[q_low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while {
            let top = self.top().copied().unwrap_or_default();
            self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)
        } {
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false; // not planar
            }
            // merge interval below lowpt(ei) into p.right
            if let Some(pr_low) = p.right.low {
                self.reference[pr_low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left.high = q.left.high;
            } else {
                self.reference[p.left.low.unwrap()] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: EdgeId) {
        let u = self.src[e];
        let hu = self.height[u].unwrap();
        // drop entire conflict pairs whose lowest return point is u
        while self
            .top()
            .is_some_and(|p| self.lowest(p) == Some(hu))
        {
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            // trim left interval
            while let Some(h) = p.left.high {
                if self.dst[h] == u {
                    p.left.high = self.reference[h];
                } else {
                    break;
                }
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    self.reference[low] = p.right.low;
                    p.left.low = None;
                }
            }
            // trim right interval
            while let Some(h) = p.right.high {
                if self.dst[h] == u {
                    p.right.high = self.reference[h];
                } else {
                    break;
                }
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    self.reference[low] = p.left.low;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            // e has a return edge; record the side reference of the highest one
            if let Some(top) = self.top() {
                let hl = top.left.high;
                let hr = top.right.high;
                self.reference[e] = match (hl, hr) {
                    (Some(l), Some(r)) => {
                        if self.lowpt[l] > self.lowpt[r] {
                            hl
                        } else {
                            hr
                        }
                    }
                    (Some(_), None) => hl,
                    _ => hr,
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic;
    use crate::graph::Graph;

    #[test]
    fn euler_prefilter_examples() {
        assert!(euler_prefilter(8, 18));
        assert!(!euler_prefilter(8, 19));
        assert!(euler_prefilter(14, 31));
        assert!(euler_prefilter(2, 100));
    }

    #[test]
    fn small_graphs_planar() {
        assert!(is_planar(&classic::complete(4)));
        assert!(is_planar(&Graph::empty(0)));
        assert!(is_planar(&Graph::empty(10)));
        assert!(is_planar(&classic::cycle(12)));
        assert!(is_planar(&classic::wheel(9)));
        assert!(is_planar(&classic::octahedron()));
        assert!(is_planar(&classic::icosahedron()));
    }

    #[test]
    fn kuratowski_graphs_nonplanar() {
        assert!(!is_planar(&classic::complete(5)));
        assert!(!is_planar(&classic::complete_bipartite(3, 3)));
        assert!(!is_planar(&classic::complete(6)));
        assert!(!is_planar(&classic::complete_bipartite(3, 4)));
    }

    /// Replaces every edge by a path through a fresh vertex.
    fn subdivide(g: &Graph) -> Graph {
        let n = g.vertex_count();
        let mut edges = Vec::new();
        let mut next = n;
        for (u, v) in g.edges() {
            edges.push((u, next));
            edges.push((next, v));
            next += 1;
        }
        Graph::from_edges(next, &edges).unwrap()
    }

    #[test]
    fn subdivisions_preserve_nonplanarity() {
        let mut g = classic::complete(5);
        for _ in 0..3 {
            g = subdivide(&g);
            assert!(!is_planar(&g));
        }
        let mut h = classic::complete_bipartite(3, 3);
        for _ in 0..3 {
            h = subdivide(&h);
            assert!(!is_planar(&h));
        }
        // subdividing a planar graph keeps it planar
        let mut p = classic::wheel(6);
        for _ in 0..2 {
            p = subdivide(&p);
            assert!(is_planar(&p));
        }
    }

    #[test]
    fn disconnected_inputs() {
        let g = classic::complete(4).disjoint_union(&classic::cycle(5));
        assert!(is_planar(&g));
        let h = classic::cycle(5).disjoint_union(&classic::complete(5));
        assert!(!is_planar(&h));
    }

    #[test]
    fn edge_deletion_monotone_on_k5_family() {
        // removing any single edge from K5 or K3,3 yields a planar graph
        let k5 = classic::complete(5);
        for (u, v) in k5.edges().collect::<Vec<_>>() {
            assert!(is_planar(&k5.without_edge(u, v).unwrap()));
        }
        let k33 = classic::complete_bipartite(3, 3);
        for (u, v) in k33.edges().collect::<Vec<_>>() {
            assert!(is_planar(&k33.without_edge(u, v).unwrap()));
        }
    }

    #[test]
    fn deep_path_no_stack_overflow() {
        let g = classic::path(200_000);
        assert!(is_planar(&g));
    }
}

//! Enumeration of all maximal planar graphs (triangulations) on up to 10
//! vertices, up to isomorphism.
//!
//! Generation works upward from K4 by vertex splitting: pick a vertex `w`,
//! two of its neighbors `x, y`, and a bipartition of the remaining neighbors;
//! the split replaces `w` by an edge `w-u` whose ends share exactly `x` and
//! `y`. Every triangulation on n >= 5 vertices arises this way because the
//! tetrahedron is the only sphere triangulation without a contractible edge.
//! Candidates are over-generated without an embedding and filtered by the
//! planarity test; each level is validated by edge count (3n - 6) and, in the
//! tests, against the published triangulation counts.

use std::collections::BTreeMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planarity::is_planar;
use crate::search::canon::{canonical_form, canonical_graph};

pub const MAX_TRIANGULATION_ORDER: usize = 10;

static CACHE: Lazy<Mutex<Vec<Vec<Graph>>>> = Lazy::new(|| Mutex::new(Vec::new()));

/// All triangulations on `n` vertices up to isomorphism (canonical forms,
/// sorted by label). Requires `4 <= n <= 10`.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<Graph>> {
    if !(4..=MAX_TRIANGULATION_ORDER).contains(&n) {
        return Err(Error::Capacity(format!(
            "triangulation enumeration supports 4..=10 vertices, got {n}"
        )));
    }
    let mut cache = CACHE.lock().unwrap();
    if cache.is_empty() {
        let k4 = canonical_graph(&crate::classic::complete(4));
        cache.push(vec![k4]);
    }
    while cache.len() < n - 3 {
        let next = split_level(cache.last().unwrap());
        cache.push(next);
    }
    Ok(cache[n - 4].clone())
}

fn split_level(parents: &[Graph]) -> Vec<Graph> {
    let mut seen: BTreeMap<String, Graph> = BTreeMap::new();
    for t in parents {
        let n = t.vertex_count();
        for w in t.vertices() {
            let nbrs: Vec<usize> = t.neighbors(w).collect();
            let d = nbrs.len();
            for xi in 0..d {
                for yi in xi + 1..d {
                    let (x, y) = (nbrs[xi], nbrs[yi]);
                    let rest: Vec<usize> = nbrs
                        .iter()
                        .copied()
                        .filter(|&z| z != x && z != y)
                        .collect();
                    for mask in 0u32..(1 << rest.len()) {
                        let candidate = split(t, n, w, x, y, &rest, mask);
                        debug_assert_eq!(candidate.edge_count(), 3 * (n + 1) - 6);
                        if !is_planar(&candidate) {
                            continue;
                        }
                        let label = canonical_form(&candidate);
                        seen.entry(label)
                            .or_insert_with(|| canonical_graph(&candidate));
                    }
                }
            }
        }
    }
    seen.into_values().collect()
}

/// Splits `w` into `w` and a new vertex `n`: neighbors of `w` selected by
/// `mask` move to the new vertex; `x`, `y` attach to both; `w-n` is an edge.
fn split(t: &Graph, n: usize, w: usize, x: usize, y: usize, rest: &[usize], mask: u32) -> Graph {
    let moved: Vec<usize> = rest
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &z)| z)
        .collect();
    let mut edges: Vec<(usize, usize)> = t
        .edges()
        .filter(|&(a, b)| {
            let other = if a == w {
                Some(b)
            } else if b == w {
                Some(a)
            } else {
                None
            };
            other.is_none_or(|z| !moved.contains(&z))
        })
        .collect();
    edges.push((w, n));
    edges.push((x, n));
    edges.push((y, n));
    edges.extend(moved.iter().map(|&z| (z, n)));
    Graph::from_edges(n + 1, &edges).unwrap()
}

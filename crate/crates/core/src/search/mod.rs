//! Exact small-order search: the maximum edge count of a double-star-free
//! planar graph, with witnesses, plus the oracles used to validate the fast
//! pattern detector and the canonical labeling.

pub mod canon;
pub mod subgraph;
pub mod triangulation;

pub use canon::{canonical_form, canonical_form_exhaustive, canonical_graph, enumerate_graph_classes};
pub use subgraph::brute_force_contains;
pub use triangulation::enumerate_triangulations;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::to_graph6;
use crate::graph::Graph;
use crate::patterns::contains_double_star;

/// Outcome of an exact search on `n` labeled vertices.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub max_edges: usize,
    /// Extremal graphs in canonical form, pairwise non-isomorphic, sorted by
    /// label.
    pub witnesses: Vec<Graph>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn witness_labels(&self) -> Vec<String> {
        self.witnesses.iter().map(to_graph6).collect()
    }
}

/// Tuning knobs for [`max_edges_exact_with`].
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Worker threads; 0 means rayon's default.
    pub jobs: usize,
    /// Progress file enabling resumption across runs.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    version: u32,
    n: usize,
    k: usize,
    l: usize,
    roots_total: usize,
    roots_done: usize,
    best: usize,
    witness_labels: Vec<String>,
    nodes_explored: u64,
}

const CHECKPOINT_VERSION: u32 = 1;

/// Exact maximum number of edges over all planar graphs on `n` vertices that
/// avoid the double star with arms `k`, `l`, found by exhausting the edge
/// subsets of every triangulation on `n` vertices.
///
/// Every planar graph is a spanning subgraph of some maximal planar graph,
/// so the root set is exhaustive. Branching deletes one edge of the first
/// pattern witness found, with earlier witness edges excluded in later
/// branches so each subset is reached once.
pub fn max_edges_exact(n: usize, k: usize, l: usize) -> Result<SearchResult> {
    max_edges_exact_with(n, k, l, &SearchOptions::default())
}

pub fn max_edges_exact_with(
    n: usize,
    k: usize,
    l: usize,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    if n == 0 {
        return Err(Error::Capacity("search requires n >= 1".into()));
    }
    if n > triangulation::MAX_TRIANGULATION_ORDER {
        return Err(Error::Capacity(format!(
            "exact search supports n <= {}, got {n}",
            triangulation::MAX_TRIANGULATION_ORDER
        )));
    }
    let start = Instant::now();
    let roots = if n <= 3 {
        vec![crate::classic::complete(n)]
    } else {
        enumerate_triangulations(n)?
    };

    let mut first_root = 0;
    let mut best_floor = 0usize;
    let mut merged: BTreeMap<String, Graph> = BTreeMap::new();
    let mut nodes_total = 0u64;
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            let ck: Checkpoint = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad checkpoint: {e}")))?;
            if ck.version != CHECKPOINT_VERSION || (ck.n, ck.k, ck.l) != (n, k, l) {
                return Err(Error::Parse(
                    "checkpoint does not match this search (version or parameters)".into(),
                ));
            }
            first_root = ck.roots_done;
            best_floor = ck.best;
            nodes_total = ck.nodes_explored;
            for label in ck.witness_labels {
                let g = crate::formats::from_graph6(&label)?;
                merged.insert(label, g);
            }
            log::info!("resuming after {first_root}/{} roots", ck.roots_total);
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Capacity(format!("thread pool: {e}")))?;
    let shared_best = AtomicU64::new(best_floor as u64);

    // chunked so a checkpoint can be written at deterministic boundaries
    let chunk = pool.current_num_threads().max(1) * 4;
    let mut best = best_floor;
    let mut done = first_root;
    while done < roots.len() {
        let upper = (done + chunk).min(roots.len());
        let outcomes: Vec<RootOutcome> = pool.install(|| {
            roots[done..upper]
                .par_iter()
                .map(|root| explore_root(root, k, l, &shared_best))
                .collect()
        });
        for out in outcomes {
            nodes_total += out.nodes;
            match out.best.cmp(&best) {
                std::cmp::Ordering::Greater => {
                    best = out.best;
                    merged = out.witnesses;
                }
                std::cmp::Ordering::Equal => merged.extend(out.witnesses),
                std::cmp::Ordering::Less => {}
            }
        }
        done = upper;
        if let Some(path) = &opts.checkpoint {
            let ck = Checkpoint {
                version: CHECKPOINT_VERSION,
                n,
                k,
                l,
                roots_total: roots.len(),
                roots_done: done,
                best,
                witness_labels: merged.keys().cloned().collect(),
                nodes_explored: nodes_total,
            };
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, serde_json::to_string_pretty(&ck).unwrap())?;
            std::fs::rename(&tmp, path)?;
        }
    }

    Ok(SearchResult {
        n,
        k,
        l,
        max_edges: best,
        witnesses: merged.into_values().collect(),
        nodes_explored: nodes_total,
        elapsed: start.elapsed(),
    })
}

struct RootOutcome {
    best: usize,
    witnesses: BTreeMap<String, Graph>,
    nodes: u64,
}

fn explore_root(root: &Graph, k: usize, l: usize, shared_best: &AtomicU64) -> RootOutcome {
    let mut out = RootOutcome {
        best: 0,
        witnesses: BTreeMap::new(),
        nodes: 0,
    };
    explore(root, k, l, &[], shared_best, &mut out);
    out
}

/// One search node: if free, record; otherwise branch on deleting each edge
/// of the first witness copy found. Branch `i` keeps the witness edges
/// `0..i` pinned (`keep`) so the subtrees partition the solution space and
/// no subset is visited twice.
fn explore(
    g: &Graph,
    k: usize,
    l: usize,
    keep: &[(usize, usize)],
    shared_best: &AtomicU64,
    out: &mut RootOutcome,
) {
    out.nodes += 1;
    let witness = match contains_double_star(g, k, l) {
        None => {
            let e = g.edge_count();
            shared_best.fetch_max(e as u64, Ordering::Relaxed);
            if e > out.best {
                out.best = e;
                out.witnesses.clear();
            }
            if e == out.best {
                let canon = canon::canonical_graph(g);
                out.witnesses.entry(to_graph6(&canon)).or_insert(canon);
            }
            return;
        }
        Some(w) => w,
    };
    // not free: at least one more deletion is needed, so nothing at or below
    // the best already seen can come out of this subtree
    if g.edge_count() <= shared_best.load(Ordering::Relaxed) as usize {
        return;
    }
    let (cu, cv) = (witness.center_vertices[0], witness.center_vertices[1]);
    let mut copy_edges = vec![(cu, cv)];
    let (a, b) = witness.leaf_vertices.split_at(witness.leaf_split);
    copy_edges.extend(a.iter().map(|&x| (cu, x)));
    copy_edges.extend(b.iter().map(|&x| (cv, x)));
    for (i, &(u, v)) in copy_edges.iter().enumerate() {
        let norm = (u.min(v), u.max(v));
        if keep.iter().any(|&(a, b)| (a.min(b), a.max(b)) == norm) {
            continue; // pinned by an earlier branch
        }
        let child = g.without_edge(u, v).unwrap();
        let mut child_keep: Vec<(usize, usize)> = keep.to_vec();
        child_keep.extend(copy_edges[..i].iter().copied());
        explore(&child, k, l, &child_keep, shared_best, out);
    }
}

//! Degree peeling, the global edge bound, and the end-to-end verdict
//! pipeline.

use serde::{Deserialize, Serialize};

use crate::certify::{decompose, DecompositionCertificate};
use crate::error::Result;
use crate::graph::Graph;
use crate::patterns::{contains_double_star, PatternMatch};
use crate::planarity::is_planar;

/// Result of repeatedly deleting vertices of degree at most 2.
#[derive(Clone, Debug)]
pub struct PeelOutcome {
    /// The remainder: either empty or of minimum degree at least 3.
    pub reduced: Graph,
    /// Deleted vertices in deletion order, as original indices.
    pub removed_order: Vec<usize>,
    /// Original index of each remaining vertex (new index -> old index).
    pub kept: Vec<usize>,
}

impl PeelOutcome {
    pub fn removed_count(&self) -> usize {
        self.removed_order.len()
    }
}

/// Deletes one vertex of degree at most 2 at a time (lowest current index
/// first, degrees recomputed after every deletion) until the remainder is
/// empty or has minimum degree at least 3.
pub fn peel(g: &Graph) -> PeelOutcome {
    let mut current = g.clone();
    let mut kept: Vec<usize> = g.vertices().collect();
    let mut removed_order = Vec::new();
    loop {
        let victim = current.vertices().find(|&v| current.degree(v) <= 2);
        match victim {
            None => break,
            Some(v) => {
                removed_order.push(kept[v]);
                let (next, map) = current.remove_vertex(v).expect("vertex in range");
                kept = map.into_iter().map(|i| kept[i]).collect();
                current = next;
            }
        }
    }
    PeelOutcome {
        reduced: current,
        removed_order,
        kept,
    }
}

/// The global edge bound `14e <= 31n`, in integer arithmetic.
pub fn bound_check(n: usize, e: usize) -> bool {
    14 * e as u64 <= 31 * n as u64
}

/// True iff the bound holds with equality.
pub fn bound_tight(n: usize, e: usize) -> bool {
    14 * e as u64 == 31 * n as u64
}

/// Full verdict for one input graph. Serializes to versioned JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineVerdict {
    pub version: u32,
    pub n: usize,
    pub e: usize,
    pub is_planar: bool,
    pub is_free: bool,
    /// Vertex count of the peeled remainder.
    pub peeled_size: usize,
    /// Marker for the remainder being the empty graph.
    pub empty_after_peel: bool,
    /// Original index of each remaining vertex, aligned with the
    /// certificate's vertex numbering.
    pub kept_vertices: Vec<usize>,
    /// Certificate over the peeled remainder; absent when the remainder is
    /// empty or a precondition failed.
    pub certificate: Option<DecompositionCertificate>,
    pub bound_holds: bool,
    /// Witness copy when the input is not free.
    pub found_pattern: Option<PatternMatch>,
}

pub const VERDICT_VERSION: u32 = 1;

/// Checks the hypotheses, peels, and certifies the remainder.
///
/// Precondition violations (non-planar or non-free inputs) are reported in
/// the verdict, and certification is skipped for them.
pub fn check_bound_pipeline(g: &Graph) -> Result<PipelineVerdict> {
    let planar = is_planar(g);
    let witness = contains_double_star(g, 2, 4);
    let free = witness.is_none();
    let outcome = peel(g);
    let empty = outcome.reduced.vertex_count() == 0;
    let certificate = if planar && free && !empty {
        Some(decompose(&outcome.reduced)?)
    } else {
        None
    };
    Ok(PipelineVerdict {
        version: VERDICT_VERSION,
        n: g.vertex_count(),
        e: g.edge_count(),
        is_planar: planar,
        is_free: free,
        peeled_size: outcome.reduced.vertex_count(),
        empty_after_peel: empty,
        kept_vertices: outcome.kept,
        certificate,
        bound_holds: bound_check(g.vertex_count(), g.edge_count()),
        found_pattern: witness,
    })
}

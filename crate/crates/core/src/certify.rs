//! Vertex-partition certificates: decompose a double-star-free planar graph
//! of minimum degree 3 into parts whose doubled weights each satisfy the
//! density bound, and independently re-validate such certificates.
//!
//! The decomposition is a checker, not a prover: it applies a fixed rule
//! order and reports the offending part loudly if a bound fails, rather than
//! searching for alternative partitions.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{DoubledWeight, Graph, VertexSet};
use crate::patterns::{contains_double_star, PatternKind, PatternMatch};
use crate::planarity::is_planar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartKind {
    Deg6Component,
    FiveFiveBlock,
    Expansion545,
    Expansion535,
    FiveFourMinusStar,
    Residual,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificatePart {
    pub kind: PartKind,
    pub vertices: VertexSet,
    pub weight2: DoubledWeight,
    pub passes: bool,
}

/// Ordered vertex partition with per-part weight verdicts. Serializes to
/// versioned JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionCertificate {
    pub version: u32,
    /// Hash of the labeled graph this certificate refers to.
    pub graph_hash: String,
    pub parts: Vec<CertificatePart>,
    pub global_ok: bool,
}

pub const CERTIFICATE_VERSION: u32 = 1;

/// Content hash binding a certificate to one labeled graph.
pub fn graph_hash(g: &Graph) -> String {
    let mut hasher = Sha256::new();
    hasher.update(crate::formats::to_edge_list(g).as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Decomposes `g` into parts by the sequential rules:
/// (I) the closed neighborhood of every degree-6 vertex (a whole component),
/// (II) for each remaining degree-5 vertex, in order: the closure of a 5-5
/// edge, else the maximal expansion of a 5-4-5 path, else of a 5-3-5 path,
/// else its 5-4⁻ star, and (III) the remaining degree-at-most-4 vertices.
///
/// Requires `g` planar, free of the (2,4) double star, and of minimum
/// degree at least 3. Vertex scans are lowest-index-first throughout, so the
/// certificate is deterministic.
pub fn decompose(g: &Graph) -> Result<DecompositionCertificate> {
    if !is_planar(g) {
        return Err(Error::Precondition {
            hypothesis: "input must be planar",
            detail: format!("graph on {} vertices is not planar", g.vertex_count()),
        });
    }
    if let Some(found) = contains_double_star(g, 2, 4) {
        return Err(Error::Precondition {
            hypothesis: "input must be free of the (2,4) double star",
            detail: format!(
                "found one centered on edge {}-{}",
                found.center_vertices[0], found.center_vertices[1]
            ),
        });
    }
    if let Some(d) = g.min_degree() {
        if d < 3 && g.vertex_count() > 0 {
            return Err(Error::Precondition {
                hypothesis: "minimum degree must be at least 3",
                detail: format!("minimum degree is {d}; peel the graph first"),
            });
        }
    }

    let n = g.vertex_count();
    let mut assigned = vec![false; n];
    let mut parts: Vec<CertificatePart> = Vec::new();

    let mut push_part = |kind: PartKind, set: VertexSet, assigned: &mut Vec<bool>| {
        for &v in set.iter() {
            assigned[v] = true;
        }
        let weight2 = g.doubled_weight(&set).expect("nonempty part");
        let passes = weight2.within_bound(set.len());
        parts.push(CertificatePart {
            kind,
            vertices: set,
            weight2,
            passes,
        });
    };

    // (I) degree-6 vertices: closed neighborhoods are whole components
    for u in 0..n {
        if g.degree(u) == 6 && !assigned[u] {
            let mut set: VertexSet = g.neighbors(u).collect();
            set.insert(u);
            for &x in set.iter() {
                if assigned[x] {
                    return Err(Error::CertificationFailure { stuck_vertex: u });
                }
                if !g.neighbors(x).all(|y| set.contains(y)) {
                    // an edge leaves N[u], so it is not a component; on a
                    // free input this cannot happen
                    return Err(Error::CertificationFailure { stuck_vertex: u });
                }
            }
            push_part(PartKind::Deg6Component, set, &mut assigned);
        }
    }

    // (II) degree-5 vertices under rules (a), (b), (c)
    while let Some(u) = (0..n).find(|&v| g.degree(v) == 5 && !assigned[v]) {
        if g.degree(u) > 6 {
            return Err(Error::CertificationFailure { stuck_vertex: u });
        }
        // (a) a 5-5 edge at u
        if let Some(v) = g
            .neighbors(u)
            .find(|&v| g.degree(v) == 5 && !assigned[v])
        {
            let set = five_five_closure(g, u, v, Some(&assigned))?;
            push_part(PartKind::FiveFiveBlock, set, &mut assigned);
            continue;
        }
        // (b) a 5-4-5 path, then a 5-3-5 path, maximally expanded
        let mut emitted = false;
        for (mid_degree, kind) in [(4, PartKind::Expansion545), (3, PartKind::Expansion535)] {
            if let Some((w, v)) = find_path_seed(g, u, mid_degree, &assigned) {
                let set = expand_from(g, u, w, v, Some(&assigned))?;
                push_part(kind, set, &mut assigned);
                emitted = true;
                break;
            }
        }
        if emitted {
            continue;
        }
        // (c) the 5-4⁻ star at u
        let mut set: VertexSet = g.neighbors(u).collect();
        set.insert(u);
        for &x in set.iter() {
            if (x != u && g.degree(x) > 4) || assigned[x] {
                return Err(Error::CertificationFailure { stuck_vertex: u });
            }
        }
        push_part(PartKind::FiveFourMinusStar, set, &mut assigned);
    }

    // (III) the rest has degree at most 4
    let residual: VertexSet = (0..n).filter(|&v| !assigned[v]).collect();
    if !residual.is_empty() {
        if let Some(&bad) = residual.iter().find(|&&v| g.degree(v) > 4) {
            return Err(Error::CertificationFailure { stuck_vertex: bad });
        }
        push_part(PartKind::Residual, residual, &mut assigned);
    }

    let global_ok = parts.iter().all(|p| p.passes);
    Ok(DecompositionCertificate {
        version: CERTIFICATE_VERSION,
        graph_hash: graph_hash(g),
        parts,
        global_ok,
    })
}

/// Lowest-indexed seed `(w, v)` for rule (b): an unassigned degree-5 vertex
/// `v` not adjacent to `u`, sharing an unassigned middle neighbor `w` of the
/// requested degree.
fn find_path_seed(
    g: &Graph,
    u: usize,
    mid_degree: usize,
    assigned: &[bool],
) -> Option<(usize, usize)> {
    for v in g.vertices() {
        if v == u || g.degree(v) != 5 || assigned[v] || g.has_edge(u, v) {
            continue;
        }
        if let Some(w) = g
            .neighbors(u)
            .find(|&w| g.degree(w) == mid_degree && !assigned[w] && g.has_edge(v, w))
        {
            return Some((w, v));
        }
    }
    None
}

/// Block closure for a 5-5 edge `uv`: the union of closed neighborhoods,
/// then repeatedly absorbing any outside degree-3 vertex with at least two
/// neighbors inside (lowest index first).
fn five_five_closure(
    g: &Graph,
    u: usize,
    v: usize,
    assigned: Option<&[bool]>,
) -> Result<VertexSet> {
    let mut set: VertexSet = g.neighbors(u).chain(g.neighbors(v)).collect();
    set.insert(u);
    set.insert(v);
    check_claimable(&set, assigned, u)?;
    loop {
        let candidate = g.vertices().find(|&x| {
            !set.contains(x)
                && g.degree(x) == 3
                && g.neighbors(x).filter(|&y| set.contains(y)).count() >= 2
        });
        match candidate {
            None => break,
            Some(x) => {
                if assigned.is_some_and(|a| a[x]) {
                    return Err(Error::CertificationFailure { stuck_vertex: x });
                }
                set.insert(x);
            }
        }
    }
    Ok(set)
}

/// Grows a path seed to its maximal expansion: the seed plus the neighbors
/// of its degree-5 endpoints, then repeatedly any outside degree-5 vertex
/// adjacent to the set together with its closed neighborhood.
fn expand_from(
    g: &Graph,
    end_a: usize,
    mid: usize,
    end_b: usize,
    assigned: Option<&[bool]>,
) -> Result<VertexSet> {
    let mut set: VertexSet = g.neighbors(end_a).chain(g.neighbors(end_b)).collect();
    set.insert(end_a);
    set.insert(mid);
    set.insert(end_b);
    check_claimable(&set, assigned, end_a)?;
    loop {
        let candidate = g.vertices().find(|&z| {
            !set.contains(z) && g.degree(z) == 5 && g.neighbors(z).any(|y| set.contains(y))
        });
        match candidate {
            None => break,
            Some(z) => {
                let mut grow: VertexSet = g.neighbors(z).collect();
                grow.insert(z);
                for &x in grow.iter() {
                    if !set.contains(x) {
                        check_claimable(&std::iter::once(x).collect(), assigned, z)?;
                    }
                }
                set.union_with(&grow);
            }
        }
    }
    Ok(set)
}

fn check_claimable(set: &VertexSet, assigned: Option<&[bool]>, context: usize) -> Result<()> {
    if let Some(a) = assigned {
        if let Some(&taken) = set.iter().find(|&&x| a[x]) {
            let _ = context;
            return Err(Error::CertificationFailure { stuck_vertex: taken });
        }
    }
    Ok(())
}

/// The maximal expansion of a 5-4-5 or 5-3-5 path witness, as a standalone
/// operation on the whole graph (no assignment bookkeeping).
pub fn maximal_expansion(g: &Graph, seed: &PatternMatch) -> Result<VertexSet> {
    if seed.kind != PatternKind::KLSPath || seed.center_vertices.len() != 3 {
        return Err(Error::InvalidSeed("expected a three-vertex path match".into()));
    }
    if !seed.validate(g) {
        return Err(Error::InvalidSeed("witness does not validate on this graph".into()));
    }
    let [a, w, b] = seed.center_vertices[..] else {
        unreachable!()
    };
    let degrees = (g.degree(a), g.degree(w), g.degree(b));
    if degrees != (5, 4, 5) && degrees != (5, 3, 5) {
        return Err(Error::InvalidSeed(format!(
            "path degrees {degrees:?} are not (5,4,5) or (5,3,5)"
        )));
    }
    expand_from(g, a, w, b, None)
}

/// One failed check found while re-validating a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    GraphHashMismatch,
    EmptyPart { part: usize },
    Overlap { vertex: usize },
    NotCovered { vertex: usize },
    WeightMismatch { part: usize, stored: u64, recomputed: u64 },
    PassFlagWrong { part: usize },
    PartBoundViolated { part: usize },
    GlobalOkWrong,
    WeightSumMismatch { sum: u64, twice_edges: u64 },
    KindViolation { part: usize, detail: String },
    ResidualNotLast { part: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::GraphHashMismatch => write!(f, "graph hash does not match this graph"),
            Violation::EmptyPart { part } => write!(f, "part {part} is empty"),
            Violation::Overlap { vertex } => write!(f, "vertex {vertex} appears in two parts"),
            Violation::NotCovered { vertex } => write!(f, "vertex {vertex} is in no part"),
            Violation::WeightMismatch { part, stored, recomputed } => write!(
                f,
                "part {part}: stored weight2 {stored}, recomputed {recomputed}"
            ),
            Violation::PassFlagWrong { part } => write!(f, "part {part}: passes flag is wrong"),
            Violation::PartBoundViolated { part } => {
                write!(f, "part {part}: 7*weight2 exceeds 31*size")
            }
            Violation::GlobalOkWrong => write!(f, "global_ok flag is wrong"),
            Violation::WeightSumMismatch { sum, twice_edges } => write!(
                f,
                "sum of part weights {sum} differs from twice the edge count {twice_edges}"
            ),
            Violation::KindViolation { part, detail } => write!(f, "part {part}: {detail}"),
            Violation::ResidualNotLast { part } => {
                write!(f, "part {part}: residual part must be unique and last")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Independently re-checks a certificate against `g`: binding, disjoint
/// exact coverage, weight recomputation, per-part bounds, the per-kind
/// degree conditions, and the accounting identity that the weights sum to
/// twice the edge count.
pub fn validate_certificate(g: &Graph, cert: &DecompositionCertificate) -> ValidationReport {
    let mut violations = Vec::new();
    if cert.graph_hash != graph_hash(g) {
        violations.push(Violation::GraphHashMismatch);
    }

    let n = g.vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, part) in cert.parts.iter().enumerate() {
        if part.vertices.is_empty() {
            violations.push(Violation::EmptyPart { part: i });
        }
        for &v in part.vertices.iter() {
            if v >= n {
                violations.push(Violation::KindViolation {
                    part: i,
                    detail: format!("vertex {v} out of range"),
                });
            } else if owner[v].is_some() {
                violations.push(Violation::Overlap { vertex: v });
            } else {
                owner[v] = Some(i);
            }
        }
    }
    for (v, o) in owner.iter().enumerate() {
        if o.is_none() {
            violations.push(Violation::NotCovered { vertex: v });
        }
    }

    let mut sum = 0u64;
    let mut all_pass = true;
    for (i, part) in cert.parts.iter().enumerate() {
        if part.vertices.is_empty() || part.vertices.iter().any(|&v| v >= n) {
            all_pass = false;
            continue;
        }
        let recomputed = g.doubled_weight(&part.vertices).expect("nonempty in-range part");
        sum += recomputed.value();
        if recomputed != part.weight2 {
            violations.push(Violation::WeightMismatch {
                part: i,
                stored: part.weight2.value(),
                recomputed: recomputed.value(),
            });
        }
        let pass = recomputed.within_bound(part.vertices.len());
        all_pass &= pass;
        if part.passes != pass {
            violations.push(Violation::PassFlagWrong { part: i });
        }
        if !pass {
            violations.push(Violation::PartBoundViolated { part: i });
        }
        check_kind(g, i, part, &mut violations);
    }
    if cert.global_ok != all_pass {
        violations.push(Violation::GlobalOkWrong);
    }
    let twice_edges = 2 * g.edge_count() as u64;
    let covers_exactly = owner.iter().all(|o| o.is_some())
        && !violations
            .iter()
            .any(|v| matches!(v, Violation::Overlap { .. } | Violation::EmptyPart { .. }));
    if covers_exactly && sum != twice_edges {
        violations.push(Violation::WeightSumMismatch { sum, twice_edges });
    }

    for (i, part) in cert.parts.iter().enumerate() {
        if part.kind == PartKind::Residual && i + 1 != cert.parts.len() {
            violations.push(Violation::ResidualNotLast { part: i });
        }
    }

    ValidationReport { violations }
}

fn check_kind(g: &Graph, i: usize, part: &CertificatePart, violations: &mut Vec<Violation>) {
    let members: Vec<usize> = part.vertices.iter().copied().collect();
    let mut fail = |detail: String| {
        violations.push(Violation::KindViolation { part: i, detail });
    };
    match part.kind {
        PartKind::Deg6Component => {
            if members.len() != 7 {
                fail(format!("degree-6 component must have 7 vertices, has {}", members.len()));
            }
            if !members.iter().any(|&v| g.degree(v) == 6) {
                fail("no degree-6 vertex in part".into());
            }
            if members
                .iter()
                .any(|&v| g.neighbors(v).any(|w| !part.vertices.contains(w)))
            {
                fail("edges leave the part, so it is not a component".into());
            }
            if let Ok((sub, _)) = g.induced_subgraph(&part.vertices) {
                if !sub.is_connected() {
                    fail("part is not connected".into());
                }
            }
        }
        PartKind::FiveFiveBlock => {
            let has_55_edge = members.iter().any(|&u| {
                g.degree(u) == 5
                    && g.neighbors(u)
                        .any(|v| part.vertices.contains(v) && g.degree(v) == 5)
            });
            if !has_55_edge {
                fail("no edge between two degree-5 vertices inside the part".into());
            }
        }
        PartKind::Expansion545 | PartKind::Expansion535 => {
            let mid_degree = if part.kind == PartKind::Expansion545 { 4 } else { 3 };
            let mut found = false;
            'outer: for &w in &members {
                if g.degree(w) != mid_degree {
                    continue;
                }
                let nbrs: Vec<usize> = g
                    .neighbors(w)
                    .filter(|&x| part.vertices.contains(x) && g.degree(x) == 5)
                    .collect();
                for (ai, &a) in nbrs.iter().enumerate() {
                    for &b in &nbrs[ai + 1..] {
                        if !g.has_edge(a, b) {
                            found = true;
                            break 'outer;
                        }
                    }
                }
            }
            if !found {
                fail(format!("no induced 5-{mid_degree}-5 path inside the part"));
            }
        }
        PartKind::FiveFourMinusStar => {
            let center = members.iter().copied().find(|&c| {
                g.degree(c) == 5
                    && g.neighbors(c).all(|x| part.vertices.contains(x))
                    && members.len() == 6
                    && g.neighbors(c).all(|x| g.degree(x) <= 4)
            });
            if center.is_none() {
                fail("no degree-5 center whose closed neighborhood is the part with all neighbor degrees at most 4".into());
            }
        }
        PartKind::Residual => {
            if let Some(&v) = members.iter().find(|&&v| g.degree(v) > 4) {
                fail(format!("residual vertex {v} has degree {} > 4", g.degree(v)));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic;

    #[test]
    fn k4_is_single_residual() {
        let cert = decompose(&classic::complete(4)).unwrap();
        assert_eq!(cert.parts.len(), 1);
        assert_eq!(cert.parts[0].kind, PartKind::Residual);
        assert_eq!(cert.parts[0].weight2.value(), 12);
        assert!(cert.parts[0].passes);
        assert!(cert.global_ok);
        assert!(validate_certificate(&classic::complete(4), &cert).is_valid());
    }

    #[test]
    fn wheel6_is_degree6_component() {
        let w6 = classic::wheel(6);
        let cert = decompose(&w6).unwrap();
        assert_eq!(cert.parts.len(), 1);
        assert_eq!(cert.parts[0].kind, PartKind::Deg6Component);
        assert_eq!(cert.parts[0].vertices.len(), 7);
        // weight equals twice the edge count, at most 2*15
        assert_eq!(cert.parts[0].weight2.value(), 24);
        assert!(cert.global_ok);
        assert!(validate_certificate(&w6, &cert).is_valid());
    }

    #[test]
    fn icosahedron_rejected_as_not_free() {
        let err = decompose(&classic::icosahedron()).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }

    #[test]
    fn low_degree_rejected() {
        let err = decompose(&classic::cycle(5)).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }

    #[test]
    fn nonplanar_rejected() {
        // K5 is not planar (and also contains no S_{2,4}, so the planarity
        // hypothesis is the one that must fire)
        let err = decompose(&classic::complete(5)).unwrap_err();
        match err {
            Error::Precondition { hypothesis, .. } => assert!(hypothesis.contains("planar")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn five_four_minus_star_rule() {
        // icosahedron minus enough structure is hard to make by hand; use a
        // direct star shape instead: center of degree 5 whose neighbors pair
        // up into triangles, all of degree 3.
        // Vertices: 0 center; 1..=5 rim as a 5-cycle would give degree 4 rim;
        // use pendant triangles to keep rim degree at 3 is not planar-easy,
        // so instead check rule (c) on the wheel W5 with its rim degrees 3.
        let w5 = classic::wheel(5);
        let cert = decompose(&w5).unwrap();
        assert_eq!(cert.parts[0].kind, PartKind::FiveFourMinusStar);
        assert_eq!(cert.parts[0].vertices.len(), 6);
        assert!(cert.global_ok);
        assert!(validate_certificate(&w5, &cert).is_valid());
    }

    #[test]
    fn tampered_certificates_are_caught() {
        let g = classic::complete(4);
        let good = decompose(&g).unwrap();

        let mut dup = good.clone();
        dup.parts.push(dup.parts[0].clone());
        let report = validate_certificate(&g, &dup);
        assert!(report.violations.iter().any(|v| matches!(v, Violation::Overlap { .. })));

        let mut wrong_weight = good.clone();
        wrong_weight.parts[0].weight2 = DoubledWeight(99);
        let report = validate_certificate(&g, &wrong_weight);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::WeightMismatch { .. })));

        let mut missing = good.clone();
        missing.parts[0].vertices.remove(0);
        let report = validate_certificate(&g, &missing);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotCovered { vertex: 0 })));

        let other = classic::cycle(4);
        let report = validate_certificate(&other, &good);
        assert!(report.violations.contains(&Violation::GraphHashMismatch));
    }

    #[test]
    fn expansion_seed_validation() {
        let p3 = classic::path(3);
        let bad = PatternMatch {
            kind: PatternKind::KLSPath,
            center_vertices: vec![0, 1, 2],
            leaf_vertices: vec![],
            leaf_split: 0,
        };
        // degrees are (1,2,1), not an admissible seed
        assert!(maximal_expansion(&p3, &bad).is_err());
    }

    #[test]
    fn certificate_json_roundtrip() {
        let cert = decompose(&classic::wheel(6)).unwrap();
        let json = serde_json::to_string_pretty(&cert).unwrap();
        assert!(json.contains("\"graph_hash\""));
        assert!(json.contains("\"weight2\""));
        let back: DecompositionCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back.parts.len(), cert.parts.len());
        assert!(validate_certificate(&classic::wheel(6), &back).is_valid());
    }
}

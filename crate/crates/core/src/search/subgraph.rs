//! Ground-truth subgraph containment by backtracking, used to validate the
//! closed-form double-star detector.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// True iff `pattern` appears in `g` as a (not necessarily induced)
/// subgraph. Backtracking vertex-map search with degree pruning; the pattern
/// is capped at 10 vertices to keep this an oracle, not a general matcher.
pub fn brute_force_contains(g: &Graph, pattern: &Graph) -> Result<bool> {
    let np = pattern.vertex_count();
    if np > 10 {
        return Err(Error::Capacity(format!(
            "oracle pattern limited to 10 vertices, got {np}"
        )));
    }
    if np == 0 {
        return Ok(true);
    }
    if np > g.vertex_count() || pattern.edge_count() > g.edge_count() {
        return Ok(false);
    }

    // match order: BFS from a highest-degree vertex, components in sequence,
    // so most vertices already have mapped neighbors when tried
    let mut order = Vec::with_capacity(np);
    let mut seen = vec![false; np];
    let mut by_degree: Vec<usize> = (0..np).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(pattern.degree(v)));
    for &start in &by_degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in pattern.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut map = vec![usize::MAX; np];
    let mut used = vec![false; g.vertex_count()];
    Ok(extend(g, pattern, &order, 0, &mut map, &mut used))
}

fn extend(
    g: &Graph,
    pattern: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let pv = order[depth];
    let need = pattern.degree(pv);
    for h in g.vertices() {
        if used[h] || g.degree(h) < need {
            continue;
        }
        if !pattern
            .neighbors(pv)
            .filter(|&pw| map[pw] != usize::MAX)
            .all(|pw| g.has_edge(map[pw], h))
        {
            continue;
        }
        map[pv] = h;
        used[h] = true;
        if extend(g, pattern, order, depth + 1, map, used) {
            return true;
        }
        map[pv] = usize::MAX;
        used[h] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic;

    #[test]
    fn pattern_in_itself() {
        let s24 = classic::double_star(2, 4);
        assert!(brute_force_contains(&s24, &s24).unwrap());
    }

    #[test]
    fn cycle_has_no_double_star() {
        let c8 = classic::cycle(8);
        assert!(!brute_force_contains(&c8, &classic::double_star(2, 4)).unwrap());
    }

    #[test]
    fn icosahedron_contains_s24() {
        let ico = classic::icosahedron();
        assert!(brute_force_contains(&ico, &classic::double_star(2, 4)).unwrap());
    }

    #[test]
    fn non_induced_semantics() {
        // K4 contains P4 as a subgraph even though no induced P4 exists
        assert!(brute_force_contains(&classic::complete(4), &classic::path(4)).unwrap());
    }

    #[test]
    fn disconnected_pattern() {
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(brute_force_contains(&classic::cycle(5), &two_edges).unwrap());
        assert!(!brute_force_contains(&classic::star(4), &two_edges).unwrap());
    }

    #[test]
    fn oversized_pattern_rejected() {
        assert!(brute_force_contains(&classic::complete(12), &classic::cycle(11)).is_err());
    }
}

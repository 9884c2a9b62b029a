//! Constructors for the standard graphs used throughout the tests and the
//! pattern definitions.

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Star with center 0 and `k` leaves.
pub fn star(k: usize) -> Graph {
    let edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
    Graph::from_edges(k + 1, &edges).unwrap()
}

/// Wheel: hub 0 joined to a cycle on `k` rim vertices.
pub fn wheel(k: usize) -> Graph {
    assert!(k >= 3);
    let mut edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
    edges.extend((1..=k).map(|v| (v, if v == k { 1 } else { v + 1 })));
    Graph::from_edges(k + 1, &edges).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::from_edges(a + b, &edges).unwrap()
}

/// The double star: an edge 0-1 with `k` extra leaves on 0 and `l` on 1.
pub fn double_star(k: usize, l: usize) -> Graph {
    let mut edges = vec![(0, 1)];
    edges.extend((0..k).map(|i| (0, 2 + i)));
    edges.extend((0..l).map(|i| (1, 2 + k + i)));
    Graph::from_edges(k + l + 2, &edges).unwrap()
}

/// The octahedron: antipodal pairs (0,3), (1,4), (2,5), all other pairs
/// adjacent. 4-regular planar triangulation on 6 vertices.
pub fn octahedron() -> Graph {
    let mut edges = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            if v != u + 3 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(6, &edges).unwrap()
}

/// The icosahedron: 5-regular planar graph on 12 vertices.
pub fn icosahedron() -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..=5).map(|v| (0, v)).collect();
    for i in 0..5usize {
        let u = 1 + i;
        let un = 1 + (i + 1) % 5;
        let l = 6 + i;
        let lp = 6 + (i + 4) % 5;
        let ln = 6 + (i + 1) % 5;
        edges.push((u, un)); // upper ring
        edges.push((l, ln)); // lower ring
        edges.push((u, l));
        edges.push((u, lp));
        edges.push((11, l));
    }
    Graph::from_edges(12, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(wheel(5).edge_count(), 10);
        assert_eq!(double_star(2, 4).vertex_count(), 8);
        assert_eq!(double_star(2, 4).edge_count(), 7);
        let oct = octahedron();
        assert_eq!(oct.edge_count(), 12);
        assert!(oct.vertices().all(|v| oct.degree(v) == 4));
        let ico = icosahedron();
        assert_eq!(ico.edge_count(), 30);
        assert!(ico.vertices().all(|v| ico.degree(v) == 5));
    }
}

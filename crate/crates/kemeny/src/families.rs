//! Constructors for the standard families: complete graphs, paths, stars,
//! cycles, and barbells.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn too_small(what: &'static str, required: &'static str, got: impl std::fmt::Display) -> Error {
    Error::ParameterTooSmall {
        what,
        required,
        got: got.to_string(),
    }
}

/// Complete graph `K_n`, n >= 1.
pub fn make_complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(too_small("complete graph", "n >= 1", n));
    }
    let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
    Graph::new(n, edges)
}

/// Path `P_n` with the canonical labelling 0-1-...-(n-1).
pub fn make_path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(too_small("path graph", "n >= 1", n));
    }
    Graph::new(n, (0..n.saturating_sub(1)).map(|u| (u, u + 1)))
}

/// Star `S_n` on `n` vertices with the center at index 0.
pub fn make_star(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(too_small("star graph", "n >= 1", n));
    }
    Graph::new(n, (1..n).map(|v| (0, v)))
}

/// Cycle `C_n`, n >= 3.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(too_small("cycle graph", "n >= 3", n));
    }
    Graph::new(n, (0..n).map(|u| (u, (u + 1) % n)))
}

/// Barbell `B(k, a, b, c)` on `k*a + b + c` vertices: `k` disjoint paths
/// `P_a`, a clique on the left endpoints and one on the right endpoints to
/// glue the paths, then `b` extra vertices forming a clique joined to every
/// left endpoint and `c` extra vertices forming a clique joined to every
/// right endpoint.
///
/// Labels: path copy `t` occupies `t*a..(t+1)*a` with its left endpoint at
/// `t*a`; the `b`-clique follows, then the `c`-clique. For `k = 1` this is
/// `K_{b+1}` and `K_{c+1}` hung on the two ends of a path.
pub fn make_barbell(k: usize, a: usize, b: usize, c: usize) -> Result<Graph> {
    if k < 1 {
        return Err(too_small("barbell", "k >= 1", k));
    }
    if a < 2 {
        return Err(too_small("barbell", "a >= 2", a));
    }
    if b < 1 {
        return Err(too_small("barbell", "b >= 1", b));
    }
    if c < 1 {
        return Err(too_small("barbell", "c >= 1", c));
    }
    let n = k * a + b + c;
    let left = |t: usize| t * a;
    let right = |t: usize| t * a + a - 1;
    let mut edges = Vec::new();
    for t in 0..k {
        for i in 0..(a - 1) {
            edges.push((t * a + i, t * a + i + 1));
        }
    }
    for s in 0..k {
        for t in (s + 1)..k {
            edges.push((left(s), left(t)));
            edges.push((right(s), right(t)));
        }
    }
    let b_start = k * a;
    for i in 0..b {
        for j in (i + 1)..b {
            edges.push((b_start + i, b_start + j));
        }
        for t in 0..k {
            edges.push((b_start + i, left(t)));
        }
    }
    let c_start = k * a + b;
    for i in 0..c {
        for j in (i + 1)..c {
            edges.push((c_start + i, c_start + j));
        }
        for t in 0..k {
            edges.push((c_start + i, right(t)));
        }
    }
    Graph::new(n, edges)
}

/// Edge count of `B(1, a, b, c)`: C(b+1, 2) + C(c+1, 2) + a - 1.
pub fn barbell_edge_count(a: usize, b: usize, c: usize) -> usize {
    (b + 1) * b / 2 + (c + 1) * c / 2 + a - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labelings() {
        assert_eq!(make_path(3).unwrap().edges(), &[(0, 1), (1, 2)]);
        assert_eq!(make_star(4).unwrap().degree(0), 3);
        assert_eq!(make_complete(5).unwrap().m(), 10);
        assert_eq!(make_cycle(4).unwrap().degrees(), vec![2, 2, 2, 2]);
        assert_eq!(make_path(1).unwrap().n(), 1);
    }

    #[test]
    fn size_bounds_are_enforced() {
        assert!(make_cycle(2).is_err());
        assert!(make_complete(0).is_err());
        assert!(make_barbell(1, 1, 1, 1).is_err());
        assert!(make_barbell(0, 2, 1, 1).is_err());
    }

    #[test]
    fn barbell_vertex_and_edge_counts() {
        let g = make_barbell(1, 6, 4, 5).unwrap();
        assert_eq!(g.n(), 15);
        assert_eq!(g.m(), barbell_edge_count(6, 4, 5));
        assert!(g.is_connected());

        for (a, b, c) in [(2, 1, 1), (3, 2, 2), (5, 3, 4)] {
            let g = make_barbell(1, a, b, c).unwrap();
            assert_eq!(g.m(), barbell_edge_count(a, b, c));
            assert_eq!(g.n(), a + b + c);
        }
    }

    #[test]
    fn degenerate_barbell_is_a_path() {
        // b = c = 1 turns both cliques into single pendant edges.
        let g = make_barbell(1, 2, 1, 1).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 3);
        let mut degs = g.degrees();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        assert!(g.is_connected());
    }

    #[test]
    fn barbell_junctions_are_cut_vertices() {
        // Every path vertex of B(1, a, b, c) is a cut vertex when b, c >= 2;
        // in particular both clique-path junctions are.
        let g = make_barbell(1, 6, 4, 5).unwrap();
        let cuts = g.cut_vertices();
        assert!(cuts.contains(&0));
        assert!(cuts.contains(&5));
        assert_eq!(cuts, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn multi_path_barbell() {
        let g = make_barbell(2, 3, 2, 2).unwrap();
        assert_eq!(g.n(), 2 * 3 + 2 + 2);
        assert!(g.is_connected());
        // Left endpoints 0 and 3 are adjacent and joined to both b-clique vertices.
        assert!(g.has_edge(0, 3));
        assert!(g.has_edge(0, 6) && g.has_edge(3, 6));
        assert!(g.has_edge(0, 7) && g.has_edge(3, 7));
    }
}

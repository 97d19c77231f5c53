//! Simple undirected graphs with optional positive rational edge weights,
//! plus the 1-sum constructions every decomposition formula is stated over.
//!
//! Vertices are the contiguous integers `0..n`. Edges are stored sorted as
//! `(min, max)` pairs, so two graphs compare equal exactly when they are
//! label-identical. Graphs are immutable after construction; every operation
//! returns a new value.

use crate::error::{Error, Result};
use crate::Rational;

use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Parallel to `edges`; `None` means every edge has weight 1.
    weights: Option<Vec<Rational>>,
}

fn normalize_edge(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds an unweighted graph, validating the simple-graph invariants.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut es: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            es.push(normalize_edge(u, v));
        }
        es.sort_unstable();
        if let Some(w) = es.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge {
                u: w[0].0,
                v: w[0].1,
            });
        }
        Ok(Graph {
            n,
            edges: es,
            weights: None,
        })
    }

    /// Builds a weighted graph; weights must be strictly positive.
    pub fn new_weighted(
        n: usize,
        edges: impl IntoIterator<Item = ((usize, usize), Rational)>,
    ) -> Result<Self> {
        let mut es: Vec<((usize, usize), Rational)> = Vec::new();
        for ((u, v), w) in edges {
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            let (u, v) = normalize_edge(u, v);
            if w <= Rational::zero() {
                return Err(Error::NonPositiveWeight { u, v });
            }
            es.push(((u, v), w));
        }
        es.sort_unstable_by_key(|(e, _)| *e);
        if let Some(w) = es.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateEdge {
                u: w[0].0 .0,
                v: w[0].0 .1,
            });
        }
        let (edges, weights): (Vec<_>, Vec<_>) = es.into_iter().unzip();
        Ok(Graph {
            n,
            edges,
            weights: Some(weights),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        self.edges.binary_search(&normalize_edge(u, v)).is_ok()
    }

    /// Conductance of an edge; 1 for unweighted graphs, `None` for non-edges.
    pub fn weight(&self, u: usize, v: usize) -> Option<Rational> {
        let idx = self.edges.binary_search(&normalize_edge(u, v)).ok()?;
        Some(match &self.weights {
            Some(ws) => ws[idx].clone(),
            None => Rational::from_integer(1.into()),
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Sum of incident edge weights per vertex (plain degrees when unweighted).
    pub fn weighted_degrees(&self) -> Vec<Rational> {
        let mut d = vec![Rational::zero(); self.n];
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            let w = match &self.weights {
                Some(ws) => ws[idx].clone(),
                None => Rational::from_integer(1.into()),
            };
            d[u] += w.clone();
            d[v] += w;
        }
        d
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// All non-edges as sorted `(u, v)` pairs with `u < v`, lexicographic.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Articulation points, ascending. These are exactly the 1-separators.
    pub fn cut_vertices(&self) -> Vec<usize> {
        let n = self.n;
        let adj = self.adjacency_lists();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0usize;

        // Iterative Tarjan: (vertex, parent, next neighbor index).
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0usize;
            stack.push((root, usize::MAX, 0));
            while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
                if *next < adj[v].len() {
                    let w = adj[v][*next];
                    *next += 1;
                    if disc[w] == usize::MAX {
                        if v == root {
                            root_children += 1;
                        }
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (p, _, _)) = stack.last_mut() {
                        low[p] = low[p].min(low[v]);
                        if p != root && low[v] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Unweighted BFS distances from `src` (usize::MAX when unreachable).
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let adj = self.adjacency_lists();
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Returns a copy with `extra` added; every pair must be a current non-edge.
    pub fn add_edges(&self, extra: &[(usize, usize)]) -> Result<Graph> {
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in extra {
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            let e = normalize_edge(u, v);
            if self.has_edge(e.0, e.1) {
                return Err(Error::EdgeAlreadyPresent { u: e.0, v: e.1 });
            }
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge { u: e.0, v: e.1 });
            }
        }
        match &self.weights {
            None => {
                let mut edges = self.edges.clone();
                edges.extend(seen);
                Graph::new(self.n, edges)
            }
            Some(ws) => {
                let one = Rational::from_integer(1.into());
                let mut edges: Vec<_> =
                    self.edges.iter().cloned().zip(ws.iter().cloned()).collect();
                edges.extend(seen.into_iter().map(|e| (e, one.clone())));
                Graph::new_weighted(self.n, edges)
            }
        }
    }

    /// Strips weights, keeping the edge set.
    pub fn unweighted(&self) -> Graph {
        Graph {
            n: self.n,
            edges: self.edges.clone(),
            weights: None,
        }
    }
}

/// Result of a 1-sum: the glued graph plus the old-to-new vertex maps for
/// both operands. The right operand keeps its labels; the left operand's
/// non-attachment vertices follow in ascending original order, and its
/// attachment vertex lands on the right operand's attachment vertex.
#[derive(Debug, Clone)]
pub struct OneSum {
    pub graph: Graph,
    pub map_left: Vec<usize>,
    pub map_right: Vec<usize>,
    /// The cut vertex of the glued graph (the image of both attachments).
    pub shared: usize,
}

/// Glues `g1` at `v1` onto `g2` at `v2`, identifying the two vertices.
pub fn one_sum(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<OneSum> {
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    if !g1.is_connected() || !g2.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g1.n() + g2.n() - 1;
    let map_right: Vec<usize> = (0..g2.n()).collect();
    let mut map_left = vec![0usize; g1.n()];
    let mut next = g2.n();
    for u in 0..g1.n() {
        if u == v1 {
            map_left[u] = v2;
        } else {
            map_left[u] = next;
            next += 1;
        }
    }

    let one = Rational::from_integer(1.into());
    let weighted = g1.is_weighted() || g2.is_weighted();
    if weighted {
        let mut edges = Vec::with_capacity(g1.m() + g2.m());
        for (idx, &(u, v)) in g2.edges().iter().enumerate() {
            let w = match &g2.weights {
                Some(ws) => ws[idx].clone(),
                None => one.clone(),
            };
            edges.push(((u, v), w));
        }
        for (idx, &(u, v)) in g1.edges().iter().enumerate() {
            let w = match &g1.weights {
                Some(ws) => ws[idx].clone(),
                None => one.clone(),
            };
            edges.push(((map_left[u], map_left[v]), w));
        }
        let graph = Graph::new_weighted(n, edges)?;
        Ok(OneSum {
            graph,
            map_left,
            map_right,
            shared: v2,
        })
    } else {
        let mut edges = Vec::with_capacity(g1.m() + g2.m());
        edges.extend_from_slice(g2.edges());
        edges.extend(g1.edges().iter().map(|&(u, v)| (map_left[u], map_left[v])));
        let graph = Graph::new(n, edges)?;
        Ok(OneSum {
            graph,
            map_left,
            map_right,
            shared: v2,
        })
    }
}

/// One component of a chain of 1-sums. `attach_right` is identified with the
/// next part's `attach_left`; the first part's `attach_left` and the last
/// part's `attach_right` are unused markers.
#[derive(Debug, Clone)]
pub struct ChainPart {
    pub graph: Graph,
    pub attach_left: usize,
    pub attach_right: usize,
}

#[derive(Debug, Clone)]
pub struct OneSumChain {
    parts: Vec<ChainPart>,
}

impl OneSumChain {
    pub fn new(parts: Vec<ChainPart>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyChain);
        }
        for part in &parts {
            part.graph.check_vertex(part.attach_left)?;
            part.graph.check_vertex(part.attach_right)?;
            if !part.graph.is_connected() {
                return Err(Error::Disconnected);
            }
        }
        Ok(OneSumChain { parts })
    }

    pub fn parts(&self) -> &[ChainPart] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// The assembled chain graph, with one old-to-new vertex map per part.
#[derive(Debug, Clone)]
pub struct ChainSum {
    pub graph: Graph,
    pub maps: Vec<Vec<usize>>,
}

/// Left-fold of [`one_sum`] over the chain parts.
pub fn chain_sum(chain: &OneSumChain) -> Result<ChainSum> {
    let parts = chain.parts();
    let mut graph = parts[0].graph.clone();
    let mut maps: Vec<Vec<usize>> = vec![(0..graph.n()).collect()];

    for i in 1..parts.len() {
        let attach_in_acc = maps[i - 1][parts[i - 1].attach_right];
        let summed = one_sum(&graph, attach_in_acc, &parts[i].graph, parts[i].attach_left)?;
        for map in maps.iter_mut() {
            for entry in map.iter_mut() {
                *entry = summed.map_left[*entry];
            }
        }
        maps.push(summed.map_right);
        graph = summed.graph;
    }
    Ok(ChainSum { graph, maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_complete, make_path};

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert!(matches!(
            Graph::new(3, vec![(0, 0)]),
            Err(Error::SelfLoop { vertex: 0 })
        ));
        assert!(matches!(
            Graph::new(3, vec![(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge { u: 0, v: 1 })
        ));
        assert!(matches!(
            Graph::new(2, vec![(0, 5)]),
            Err(Error::VertexOutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn one_sum_of_two_paths_is_a_longer_path() {
        let p2 = make_path(2).unwrap();
        let sum = one_sum(&p2, 1, &p2, 0).unwrap();
        assert_eq!(sum.graph.n(), 3);
        assert_eq!(sum.graph.m(), 2);
        assert!(sum.graph.is_connected());
        // g2 keeps labels 0, 1; g1's non-attach vertex becomes 2; v1 -> v2 = 0.
        assert_eq!(sum.map_right, vec![0, 1]);
        assert_eq!(sum.map_left, vec![2, 0]);
    }

    #[test]
    fn one_sum_of_triangles_is_a_bowtie() {
        let k3 = make_complete(3).unwrap();
        let sum = one_sum(&k3, 0, &k3, 0).unwrap();
        assert_eq!(sum.graph.n(), 5);
        assert_eq!(sum.graph.m(), 6);
        let merged = sum.map_left[0];
        assert_eq!(merged, 0);
        assert_eq!(sum.graph.degree(merged), 4);
        assert_eq!(sum.graph.cut_vertices(), vec![0]);
    }

    #[test]
    fn one_sum_edge_count_is_additive() {
        let k4 = make_complete(4).unwrap();
        let p5 = make_path(5).unwrap();
        for v in 0..4 {
            let sum = one_sum(&k4, v, &p5, 0).unwrap();
            assert_eq!(sum.graph.m(), 6 + 4);
            assert_eq!(sum.graph.n(), 8);
        }
    }

    #[test]
    fn one_sum_rejects_disconnected_input() {
        let disconnected = Graph::new(3, vec![(0, 1)]).unwrap();
        let p2 = make_path(2).unwrap();
        assert!(matches!(
            one_sum(&disconnected, 0, &p2, 0),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn chain_of_three_edges_is_p4() {
        let p2 = make_path(2).unwrap();
        let part = |g: &Graph| ChainPart {
            graph: g.clone(),
            attach_left: 0,
            attach_right: 1,
        };
        let chain = OneSumChain::new(vec![part(&p2), part(&p2), part(&p2)]).unwrap();
        let summed = chain_sum(&chain).unwrap();
        assert_eq!(summed.graph.n(), 4);
        assert_eq!(summed.graph.m(), 3);
        let degs = summed.graph.degrees();
        let mut sorted = degs.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 2, 2]);
        // Endpoint of the first part maps to a degree-1 vertex.
        assert_eq!(summed.graph.degree(summed.maps[0][0]), 1);
    }

    #[test]
    fn single_part_chain_is_identity() {
        let k4 = make_complete(4).unwrap();
        let chain = OneSumChain::new(vec![ChainPart {
            graph: k4.clone(),
            attach_left: 0,
            attach_right: 3,
        }])
        .unwrap();
        let summed = chain_sum(&chain).unwrap();
        assert_eq!(summed.graph, k4);
        assert_eq!(summed.maps, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn chain_sum_on_two_parts_equals_one_sum() {
        let k3 = make_complete(3).unwrap();
        let p3 = make_path(3).unwrap();
        let chain = OneSumChain::new(vec![
            ChainPart {
                graph: k3.clone(),
                attach_left: 0,
                attach_right: 1,
            },
            ChainPart {
                graph: p3.clone(),
                attach_left: 0,
                attach_right: 2,
            },
        ])
        .unwrap();
        let summed = chain_sum(&chain).unwrap();
        let direct = one_sum(&k3, 1, &p3, 0).unwrap();
        assert_eq!(summed.graph, direct.graph);
    }

    #[test]
    fn add_edges_then_remove_is_identity() {
        let p3 = make_path(3).unwrap();
        let with = p3.add_edges(&[(0, 2)]).unwrap();
        assert_eq!(with.m(), 3);
        assert!(with.has_edge(0, 2));
        let without = Graph::new(3, with.edges().iter().copied().filter(|&e| e != (0, 2))).unwrap();
        assert_eq!(without, p3);
        // Empty set is the identity.
        assert_eq!(p3.add_edges(&[]).unwrap(), p3);
    }

    #[test]
    fn add_edges_rejects_existing() {
        let p3 = make_path(3).unwrap();
        assert!(matches!(
            p3.add_edges(&[(0, 1)]),
            Err(Error::EdgeAlreadyPresent { u: 0, v: 1 })
        ));
        assert!(matches!(
            p3.add_edges(&[(1, 1)]),
            Err(Error::SelfLoop { vertex: 1 })
        ));
    }

    #[test]
    fn cut_vertices_of_small_graphs() {
        let p3 = make_path(3).unwrap();
        assert_eq!(p3.cut_vertices(), vec![1]);
        let k4 = make_complete(4).unwrap();
        assert!(k4.cut_vertices().is_empty());
    }

    #[test]
    fn cut_vertices_match_removal_oracle() {
        // Brute-force oracle: v is a cut vertex iff deleting it disconnects.
        let graphs = vec![
            make_path(6).unwrap(),
            make_complete(5).unwrap(),
            Graph::new(
                6,
                vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)],
            )
            .unwrap(),
        ];
        for g in graphs {
            let expected: Vec<usize> = (0..g.n())
                .filter(|&v| {
                    let keep: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
                    let relabel: std::collections::HashMap<usize, usize> =
                        keep.iter().enumerate().map(|(i, &u)| (u, i)).collect();
                    let edges: Vec<(usize, usize)> = g
                        .edges()
                        .iter()
                        .filter(|&&(a, b)| a != v && b != v)
                        .map(|&(a, b)| (relabel[&a], relabel[&b]))
                        .collect();
                    let sub = Graph::new(g.n() - 1, edges).unwrap();
                    !sub.is_connected()
                })
                .collect();
            assert_eq!(g.cut_vertices(), expected);
        }
    }
}

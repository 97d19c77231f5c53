//! Exhaustive generators: every labelled tree on up to nine vertices via
//! Prüfer sequences, every labelled connected graph on up to six vertices by
//! edge-subset filtering, and seeded random connected graphs.
//!
//! Enumeration is labelled on purpose: Kemeny's constant is label-invariant,
//! so labelled enumeration over-covers without needing any isomorphism
//! rejection, and the caps keep runtime in minutes.

use rand::Rng;

use crate::constant::kemeny_resistance;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::Rational;

/// Largest `n` for which tree enumeration is allowed (9^7 codes).
pub const TREE_ENUMERATION_CAP: usize = 9;
/// Largest `n` for which the connected corpus is enumerated exhaustively.
pub const CORPUS_CAP: usize = 6;

/// Number of labelled trees on `n` vertices: Cayley's `n^(n-2)`.
pub fn tree_count(n: usize) -> u64 {
    match n {
        0 => 0,
        1 | 2 => 1,
        _ => (n as u64).pow(n as u32 - 2),
    }
}

/// Decodes a Prüfer sequence over `0..n` into its labelled tree.
pub fn prufer_decode(seq: &[usize], n: usize) -> Graph {
    assert!(
        n >= 2 && seq.len() == n - 2,
        "sequence length must be n - 2"
    );
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // ptr scans for the smallest leaf; leaf tracks cascading new leaves.
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &s in seq {
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::new(n, edges).expect("decoded tree is simple")
}

/// Encodes a labelled tree back into its Prüfer sequence.
pub fn prufer_encode(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if g.m() != n - 1 || !g.is_connected() {
        return Err(Error::InvalidEdgeSet("not a tree".into()));
    }
    if n <= 2 {
        return Ok(Vec::new());
    }
    let mut degree = g.degrees();
    let adj = g.adjacency_lists();
    let mut removed = vec![false; n];
    let mut seq = Vec::with_capacity(n - 2);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for _ in 0..(n - 2) {
        removed[leaf] = true;
        let neighbor = *adj[leaf]
            .iter()
            .find(|&&w| !removed[w])
            .expect("leaf has a live neighbor");
        seq.push(neighbor);
        degree[neighbor] -= 1;
        if degree[neighbor] == 1 && neighbor < ptr {
            leaf = neighbor;
        } else {
            ptr += 1;
            while ptr < n && (degree[ptr] != 1 || removed[ptr]) {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    Ok(seq)
}

/// Iterator over every labelled tree on `n` vertices, in lexicographic
/// Prüfer order.
pub struct TreeIterator {
    n: usize,
    cursor: Option<Vec<usize>>,
}

impl Iterator for TreeIterator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let seq = self.cursor.as_ref()?.clone();
        let tree = if self.n == 1 {
            Graph::new(1, Vec::<(usize, usize)>::new()).expect("single vertex")
        } else {
            prufer_decode(&seq, self.n)
        };
        // Advance the base-n counter.
        let cursor = self.cursor.as_mut().expect("checked above");
        let mut i = cursor.len();
        loop {
            if i == 0 {
                self.cursor = None;
                break;
            }
            i -= 1;
            cursor[i] += 1;
            if cursor[i] < self.n {
                break;
            }
            cursor[i] = 0;
        }
        Some(tree)
    }
}

/// All labelled trees on `n` vertices, `1 <= n <= 9`.
pub fn all_trees(n: usize) -> Result<TreeIterator> {
    if !(1..=TREE_ENUMERATION_CAP).contains(&n) {
        return Err(Error::CapExceeded(format!(
            "tree enumeration supports 1 <= n <= {TREE_ENUMERATION_CAP}, got {n}"
        )));
    }
    Ok(TreeIterator {
        n,
        cursor: Some(vec![0; n.saturating_sub(2)]),
    })
}

/// Every labelled connected graph on up to `n_max` vertices.
#[derive(Debug, Clone)]
pub struct GraphCorpus {
    pub n_max: usize,
    pub graphs: Vec<Graph>,
}

/// Enumerates edge subsets of `K_n` for each `n <= n_max` and keeps the
/// connected ones. Deterministic order: by `n`, then by edge bitmask with
/// pairs ranked lexicographically.
pub fn connected_corpus(n_max: usize) -> Result<GraphCorpus> {
    if !(1..=CORPUS_CAP).contains(&n_max) {
        return Err(Error::CapExceeded(format!(
            "exhaustive corpus supports 1 <= n_max <= {CORPUS_CAP}, got {n_max}"
        )));
    }
    let mut graphs = Vec::new();
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..(1u32 << pairs.len()) {
            // Cheap connectivity test on adjacency bitsets before building.
            let mut adj = vec![0u8; n];
            for (bit, &(u, v)) in pairs.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
            }
            let mut seen: u8 = 1;
            let mut frontier: u8 = 1;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = adj[v] & !seen;
                seen |= new;
                frontier |= new;
            }
            if seen.count_ones() as usize != n {
                continue;
            }
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &e)| e);
            graphs.push(Graph::new(n, edges)?);
        }
    }
    Ok(GraphCorpus { n_max, graphs })
}

/// Independent count of labelled connected graphs by inclusion-exclusion:
/// `C(n) = 2^C(n,2) - sum_k C(n-1, k-1) C(k) 2^C(n-k, 2)`.
pub fn connected_graph_count_oracle(n: usize) -> u64 {
    fn choose(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut acc = 1u64;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }
    let pow2 = |v: u64| 1u64 << v;
    let mut counts = vec![0u64; n + 1];
    for size in 1..=n {
        let s = size as u64;
        let mut total = pow2(choose(s, 2));
        for k in 1..size {
            let ku = k as u64;
            total -= choose(s - 1, ku - 1) * counts[k] * pow2(choose(s - ku, 2));
        }
        counts[size] = total;
    }
    counts[n]
}

/// Integer Kemeny data for a tree: `K = num / (4m)` where
/// `num = sum over ordered pairs of d_i d_j dist(i, j)`.
fn tree_kemeny_numerator(tree: &Graph) -> u64 {
    let n = tree.n();
    let degrees = tree.degrees();
    let mut num = 0u64;
    for src in 0..n {
        let dist = tree.bfs_distances(src);
        for j in (src + 1)..n {
            num += (degrees[src] * degrees[j] * dist[j]) as u64;
        }
    }
    2 * num
}

/// Checks that the path maximizes Kemeny's constant over every labelled tree
/// on `n` vertices, with equality only for path-shaped trees.
///
/// A float prefilter scans all trees (the tree Kemeny numerator is a small
/// exact integer, so the float value is within 1e-12 of truth); candidates
/// within 1e-6 of the maximum are re-verified exactly through the resistance
/// pipeline.
pub fn verify_path_max_kemeny(n: usize) -> Result<bool> {
    if n > 8 {
        return Err(Error::CapExceeded(format!(
            "Kemeny tree sweep capped at n = 8, got {n}"
        )));
    }
    if n < 2 {
        return Ok(true);
    }
    let path_kemeny: Rational =
        crate::closed_forms::kemeny_closed(crate::closed_forms::Family::Path, n)?;
    let path_float = Scalar::to_f64(&path_kemeny);
    let four_m = (4 * (n - 1)) as f64;

    let mut candidates: Vec<Graph> = Vec::new();
    for tree in all_trees(n)? {
        let kf = tree_kemeny_numerator(&tree) as f64 / four_m;
        if kf > path_float + 1e-6 {
            // Certainly above the path value: the claim fails.
            return Ok(false);
        }
        if kf >= path_float - 1e-6 {
            candidates.push(tree);
        }
    }
    if candidates.is_empty() {
        // The path itself is in the enumeration, so this cannot happen.
        return Ok(false);
    }
    let path_degrees = {
        let mut d = crate::families::make_path(n)?.degrees();
        d.sort_unstable();
        d
    };
    for tree in &candidates {
        let exact = kemeny_resistance::<Rational>(tree)?.kemeny;
        if exact > path_kemeny {
            return Ok(false);
        }
        if exact == path_kemeny {
            let mut d = tree.degrees();
            d.sort_unstable();
            if d != path_degrees {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that the path's endpoint moment `(n-1)^2` dominates `mu(T, v)`
/// over every labelled tree and every vertex. Tree moments are exact
/// integers, so no float filter is involved.
pub fn verify_path_max_moment(n: usize) -> Result<bool> {
    if n > 8 {
        return Err(Error::CapExceeded(format!(
            "moment tree sweep capped at n = 8, got {n}"
        )));
    }
    if n < 2 {
        return Ok(true);
    }
    let limit = ((n - 1) * (n - 1)) as u64;
    let mut max_seen = 0u64;
    for tree in all_trees(n)? {
        let degrees = tree.degrees();
        for v in 0..n {
            let dist = tree.bfs_distances(v);
            let mu: u64 = (0..n).map(|i| (degrees[i] * dist[i]) as u64).sum();
            if mu > limit {
                return Ok(false);
            }
            max_seen = max_seen.max(mu);
        }
    }
    Ok(max_seen == limit)
}

/// Seeded random connected graph on `n` vertices: a uniform random labelled
/// tree (random Prüfer code) plus each remaining non-edge independently with
/// probability `extra_p`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, extra_p: f64) -> Graph {
    assert!(n >= 2);
    let tree = if n == 2 {
        Graph::new(2, vec![(0, 1)]).expect("edge")
    } else {
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
        prufer_decode(&seq, n)
    };
    let extra: Vec<(usize, usize)> = tree
        .non_edges()
        .into_iter()
        .filter(|_| rng.random_bool(extra_p))
        .collect();
    tree.add_edges(&extra).expect("non-edges stay valid")
}

//! Property tests for the structural invariants: resistance laws, 1-sum
//! bookkeeping, Prüfer coding, and Rayleigh monotonicity.

use proptest::prelude::*;

use kemeny::constant::{kemeny_resistance, moment_minus_kemeny};
use kemeny::enumeration::{all_trees, connected_corpus, prufer_decode, prufer_encode};
use kemeny::fast::int_kernel;
use kemeny::graph::one_sum;
use kemeny::resistance::{resistance_matrix, verify_cut_vertex_resistance};
use kemeny::scalar::Scalar;
use kemeny::{Graph, Rational};

/// Strategy: a connected graph on 2..=max_n vertices (random tree plus
/// random extra edges).
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let seq = proptest::collection::vec(0..n, n.saturating_sub(2));
            let extras = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
            (Just(n), seq, extras)
        })
        .prop_map(|(n, seq, extras)| {
            let tree = if n == 2 {
                Graph::new(2, vec![(0, 1)]).expect("edge")
            } else {
                prufer_decode(&seq, n)
            };
            let extra: Vec<(usize, usize)> = tree
                .non_edges()
                .into_iter()
                .zip(extras)
                .filter(|(_, keep)| *keep)
                .map(|(e, _)| e)
                .collect();
            tree.add_edges(&extra).expect("non-edges stay valid")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resistance_laws(g in connected_graph(8)) {
        let r = resistance_matrix::<Rational>(&g).unwrap();
        let n = g.n();
        let zero = Rational::from_i64(0);
        for i in 0..n {
            prop_assert_eq!(r.get(i, i), &zero);
            for j in 0..n {
                prop_assert_eq!(r.get(i, j), r.get(j, i));
                prop_assert!(r.get(i, j) >= &zero);
                for k in 0..n {
                    // Triangle inequality.
                    let via = r.get(i, j).clone() + r.get(j, k).clone();
                    prop_assert!(r.get(i, k) <= &via);
                }
            }
        }
    }

    #[test]
    fn rayleigh_monotonicity(g in connected_graph(7), pick in any::<proptest::sample::Index>()) {
        let non_edges = g.non_edges();
        prop_assume!(!non_edges.is_empty());
        let edge = non_edges[pick.index(non_edges.len())];
        let before = resistance_matrix::<Rational>(&g).unwrap();
        let after = resistance_matrix::<Rational>(&g.add_edges(&[edge]).unwrap()).unwrap();
        for i in 0..g.n() {
            for j in 0..g.n() {
                prop_assert!(after.get(i, j) <= before.get(i, j));
            }
        }
    }

    #[test]
    fn tree_resistance_is_distance(seq in proptest::collection::vec(0..7usize, 5)) {
        let tree = prufer_decode(&seq, 7);
        let r = resistance_matrix::<Rational>(&tree).unwrap();
        for v in 0..7 {
            let dist = tree.bfs_distances(v);
            for u in 0..7 {
                prop_assert_eq!(r.get(u, v), &Rational::from_usize(dist[u]));
            }
        }
    }

    #[test]
    fn one_sum_bookkeeping(
        g1 in connected_graph(6),
        g2 in connected_graph(6),
        i1 in any::<proptest::sample::Index>(),
        i2 in any::<proptest::sample::Index>(),
    ) {
        let v1 = i1.index(g1.n());
        let v2 = i2.index(g2.n());
        let summed = one_sum(&g1, v1, &g2, v2).unwrap();
        prop_assert_eq!(summed.graph.n(), g1.n() + g2.n() - 1);
        prop_assert_eq!(summed.graph.m(), g1.m() + g2.m());
        prop_assert!(summed.graph.is_connected());
        prop_assert_eq!(
            summed.graph.degree(summed.shared),
            g1.degree(v1) + g2.degree(v2)
        );
        // The relabeling maps are consistent with the edge sets.
        for &(u, v) in g1.edges() {
            prop_assert!(summed.graph.has_edge(summed.map_left[u], summed.map_left[v]));
        }
        for &(u, v) in g2.edges() {
            prop_assert!(summed.graph.has_edge(summed.map_right[u], summed.map_right[v]));
        }
        // Resistances add across the cut vertex.
        prop_assert!(verify_cut_vertex_resistance(&g1, v1, &g2, v2).unwrap());
    }

    #[test]
    fn prufer_roundtrip(seq in proptest::collection::vec(0..9usize, 7)) {
        let tree = prufer_decode(&seq, 9);
        prop_assert_eq!(tree.m(), 8);
        prop_assert!(tree.is_connected());
        prop_assert_eq!(prufer_encode(&tree).unwrap(), seq);
    }

    #[test]
    fn moment_dominates_kemeny(g in connected_graph(7), pick in any::<proptest::sample::Index>()) {
        let v = pick.index(g.n());
        // Returns an error or panics if negative; the value is the gap.
        let gap = moment_minus_kemeny::<Rational>(&g, v).unwrap();
        prop_assert!(gap >= Rational::from_i64(0));
    }

    #[test]
    fn kernel_matches_rational_route(g in connected_graph(8)) {
        let kernel = int_kernel(&g).unwrap();
        let exact = kemeny_resistance::<Rational>(&g).unwrap().kemeny;
        prop_assert_eq!(kernel.kemeny().unwrap().to_rational().unwrap(), exact);
    }
}

/// Deterministic sweep: Rayleigh monotonicity over the whole corpus at
/// n <= 5, every non-edge, every entry.
#[test]
fn rayleigh_monotonicity_corpus() {
    let corpus = connected_corpus(5).unwrap();
    for g in corpus.graphs.iter().filter(|g| g.n() >= 2) {
        let kernel = int_kernel(g).unwrap();
        for &(u, w) in &g.non_edges() {
            let updated = kernel.with_edge(u, w).unwrap();
            for i in 0..g.n() {
                for j in 0..g.n() {
                    assert!(
                        updated.resistance(i, j) <= kernel.resistance(i, j),
                        "resistance increased after adding an edge"
                    );
                }
            }
        }
    }
}

/// Every tree on up to 7 vertices has resistance equal to BFS distance.
#[test]
fn tree_distance_exhaustive() {
    for n in 2..=7usize {
        for tree in all_trees(n).unwrap() {
            let kernel = int_kernel(&tree).unwrap();
            assert_eq!(kernel.tree_count(), 1);
            for v in 0..n {
                let dist = tree.bfs_distances(v);
                for u in 0..n {
                    assert_eq!(
                        kernel.resistance(u, v),
                        kemeny::Rational128::from_usize(dist[u])
                    );
                }
            }
        }
    }
}

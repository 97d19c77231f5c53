//! Graph Laplacians, their pseudoinverses, and effective resistances.
//!
//! For a connected graph the Laplacian kernel is spanned by the all-ones
//! vector, so the pseudoinverse is computed exactly from the bordered
//! identity `pinv(L) = inv(L + J/n) - J/n` by Gauss-Jordan elimination; no
//! eigenvalues are involved. Edge weights are conductances.

use crate::error::{Error, Result};
use crate::graph::{one_sum, Graph};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::Rational;

/// `L = D - W` where `W` is the (weighted) adjacency matrix. Row sums are zero.
pub fn laplacian<S: Scalar>(g: &Graph) -> Matrix<S> {
    let n = g.n();
    let mut l: Matrix<S> = Matrix::zeros(n, n);
    for &(u, v) in g.edges() {
        let w = S::from_rational(&g.weight(u, v).expect("edge weight"));
        l[(u, v)] = l[(u, v)].clone() - w.clone();
        l[(v, u)] = l[(v, u)].clone() - w.clone();
        l[(u, u)] = l[(u, u)].clone() + w.clone();
        l[(v, v)] = l[(v, v)].clone() + w;
    }
    l
}

/// Moore-Penrose pseudoinverse of the Laplacian of a connected graph.
pub fn laplacian_pinv<S: Scalar>(g: &Graph) -> Result<Matrix<S>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let over_n = S::from_ratio_i64(1, n as i64);
    let l = laplacian::<S>(g);
    let bordered = Matrix::from_fn(n, n, |i, j| l[(i, j)].clone() + over_n.clone());
    let inv = bordered.inverse().map_err(|_| Error::Disconnected)?;
    Ok(Matrix::from_fn(n, n, |i, j| {
        inv[(i, j)].clone() - over_n.clone()
    }))
}

/// Symmetric matrix of pairwise effective resistances with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceMatrix<S> {
    n: usize,
    entries: Matrix<S>,
}

impl<S: Scalar> ResistanceMatrix<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[(i, j)]
    }

    pub fn as_matrix(&self) -> &Matrix<S> {
        &self.entries
    }
}

/// Pairwise effective resistances `r(i, j) = (e_i - e_j)^T pinv(L) (e_i - e_j)`.
pub fn resistance_matrix<S: Scalar>(g: &Graph) -> Result<ResistanceMatrix<S>> {
    let pinv = laplacian_pinv::<S>(g)?;
    let n = g.n();
    let entries = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            S::zero()
        } else {
            pinv[(i, i)].clone() + pinv[(j, j)].clone()
                - pinv[(i, j)].clone()
                - pinv[(j, i)].clone()
        }
    });
    Ok(ResistanceMatrix { n, entries })
}

/// Checks the cut-vertex resistance rule on the 1-sum of `g1` and `g2`:
/// for every `i` on the `g1` side and `j` on the `g2` side,
/// `r(i, j) = r_{g1}(i, v1) + r_{g2}(v2, j)` exactly.
pub fn verify_cut_vertex_resistance(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<bool> {
    let summed = one_sum(g1, v1, g2, v2)?;
    let r = resistance_matrix::<Rational>(&summed.graph)?;
    let r1 = resistance_matrix::<Rational>(g1)?;
    let r2 = resistance_matrix::<Rational>(g2)?;
    for i in 0..g1.n() {
        for j in 0..g2.n() {
            let lhs = r.get(summed.map_left[i], summed.map_right[j]);
            let rhs = r1.get(i, v1).clone() + r2.get(v2, j).clone();
            if *lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks the mesh-star transform for `K_n`: a star with `n` leaves whose
/// edges all have resistance `1/n` (conductance `n`) reproduces the
/// leaf-to-leaf resistance `2/n` of the complete graph.
pub fn mesh_star_equivalence(n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::ParameterTooSmall {
            what: "mesh-star transform",
            required: "n >= 2",
            got: n.to_string(),
        });
    }
    let conductance = Rational::from_i64(n as i64);
    let star = Graph::new_weighted(
        n + 1,
        (1..=n).map(|leaf| ((0usize, leaf), conductance.clone())),
    )?;
    let r = resistance_matrix::<Rational>(&star)?;
    let expected = Rational::from_ratio_i64(2, n as i64);
    for i in 1..=n {
        for j in (i + 1)..=n {
            if *r.get(i, j) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_complete, make_cycle, make_path, make_star};
    use num_traits::Zero;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from_ratio_i64(n, d)
    }

    #[test]
    fn laplacian_entries() {
        let p2 = make_path(2).unwrap();
        let l = laplacian::<Rational>(&p2);
        assert_eq!(l[(0, 0)], rat(1, 1));
        assert_eq!(l[(0, 1)], rat(-1, 1));
        assert_eq!(l[(1, 0)], rat(-1, 1));
        assert_eq!(l[(1, 1)], rat(1, 1));

        let k3 = make_complete(3).unwrap();
        let l = laplacian::<Rational>(&k3);
        for i in 0..3 {
            assert_eq!(l[(i, i)], rat(2, 1));
        }

        let s4 = make_star(4).unwrap();
        let l = laplacian::<Rational>(&s4);
        assert_eq!(l[(0, 0)], rat(3, 1));
        assert!(laplacian::<Rational>(&s4)
            .row_sums()
            .iter()
            .all(|s| s.is_zero()));
    }

    #[test]
    fn pinv_satisfies_penrose_identities() {
        for g in [
            make_path(2).unwrap(),
            make_path(5).unwrap(),
            make_complete(4).unwrap(),
            make_star(6).unwrap(),
            make_cycle(5).unwrap(),
        ] {
            let l = laplacian::<Rational>(&g);
            let pinv = laplacian_pinv::<Rational>(&g).unwrap();
            assert_eq!(l.matmul(&pinv).matmul(&l), l, "LL+L = L failed");
            assert_eq!(pinv.matmul(&l).matmul(&pinv), pinv, "L+LL+ = L+ failed");
            assert!(
                pinv.row_sums().iter().all(|s| s.is_zero()),
                "L+ 1 = 0 failed"
            );
        }
    }

    #[test]
    fn pinv_of_p2() {
        let p2 = make_path(2).unwrap();
        let pinv = laplacian_pinv::<Rational>(&p2).unwrap();
        assert_eq!(pinv[(0, 0)], rat(1, 4));
        assert_eq!(pinv[(0, 1)], rat(-1, 4));
        assert_eq!(pinv[(1, 0)], rat(-1, 4));
        assert_eq!(pinv[(1, 1)], rat(1, 4));
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            laplacian_pinv::<Rational>(&g),
            Err(Error::Disconnected)
        ));
        assert!(matches!(
            resistance_matrix::<Rational>(&g),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn complete_graph_resistance() {
        let k5 = make_complete(5).unwrap();
        let r = resistance_matrix::<Rational>(&k5).unwrap();
        for i in 0..5 {
            assert!(r.get(i, i).is_zero());
            for j in 0..5 {
                if i != j {
                    assert_eq!(*r.get(i, j), rat(2, 5));
                }
            }
        }
    }

    #[test]
    fn path_resistance_is_distance() {
        let p4 = make_path(4).unwrap();
        let r = resistance_matrix::<Rational>(&p4).unwrap();
        assert_eq!(*r.get(0, 3), rat(3, 1));
        for i in 0..4 {
            for j in 0..4 {
                let d = (i as i64 - j as i64).abs();
                assert_eq!(*r.get(i, j), rat(d, 1));
            }
        }
    }

    #[test]
    fn cycle_resistance_in_parallel() {
        // Across C_4's diameter, two length-2 paths in parallel give r = 1.
        let c4 = make_cycle(4).unwrap();
        let r = resistance_matrix::<Rational>(&c4).unwrap();
        assert_eq!(*r.get(0, 2), rat(1, 1));
        assert_eq!(*r.get(1, 3), rat(1, 1));
        assert_eq!(*r.get(0, 1), rat(3, 4));
    }

    #[test]
    fn float_mode_matches_exact() {
        let g = make_cycle(5).unwrap();
        let exact = resistance_matrix::<Rational>(&g).unwrap();
        let float = resistance_matrix::<f64>(&g).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let e = Scalar::to_f64(exact.get(i, j));
                assert!((e - float.get(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cut_vertex_rule_on_small_sums() {
        let p2 = make_path(2).unwrap();
        assert!(verify_cut_vertex_resistance(&p2, 1, &p2, 0).unwrap());
        let k3 = make_complete(3).unwrap();
        assert!(verify_cut_vertex_resistance(&k3, 0, &k3, 0).unwrap());
        // Bowtie: r across the two triangles is 2/3 + 2/3.
        let bowtie = one_sum(&k3, 0, &k3, 0).unwrap();
        let r = resistance_matrix::<Rational>(&bowtie.graph).unwrap();
        assert_eq!(*r.get(bowtie.map_left[1], bowtie.map_right[1]), rat(4, 3));
    }

    #[test]
    fn mesh_star_holds_through_n8() {
        for n in 2..=8usize {
            assert!(mesh_star_equivalence(n).unwrap(), "n = {n}");
        }
        assert!(matches!(
            mesh_star_equivalence(1),
            Err(Error::ParameterTooSmall { .. })
        ));
    }

    #[test]
    fn weighted_series_pair() {
        // Two resistance-1/2 edges in series give r = 1 between the leaves.
        let star = Graph::new_weighted(3, vec![((0, 1), rat(2, 1)), ((0, 2), rat(2, 1))]).unwrap();
        let r = resistance_matrix::<Rational>(&star).unwrap();
        assert_eq!(*r.get(1, 2), rat(1, 1));
    }
}

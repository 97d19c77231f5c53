//! Kemeny's constant and vertex moments.
//!
//! Two independent routes are implemented. The primary one evaluates
//! `K(G) = d^T R d / 4m` from the effective-resistance matrix. The oracle
//! solves the hitting-time systems of the random walk target by target and
//! evaluates `sum_j pi_j m_ij` at every start; all starts must agree, which
//! is itself checked. The two never share intermediate results.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::resistance::{resistance_matrix, ResistanceMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Resistance,
    HittingTime,
}

#[derive(Debug, Clone)]
pub struct KemenyReport<S> {
    pub kemeny: S,
    pub m: usize,
    pub method: Method,
    /// Hitting-time method only: the value seen from every start vertex.
    pub per_start_values: Option<Vec<S>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentValue<S> {
    pub vertex: usize,
    pub value: S,
}

fn check_simple_connected(g: &Graph) -> Result<()> {
    if g.is_weighted() {
        return Err(Error::WeightedUnsupported);
    }
    if g.n() < 2 {
        return Err(Error::ParameterTooSmall {
            what: "Kemeny's constant",
            required: "n >= 2",
            got: g.n().to_string(),
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// `K(G) = (1/4m) * sum_{i,j} d_i d_j r(i, j)`, evaluated from a
/// precomputed resistance matrix.
pub fn kemeny_from_resistances<S: Scalar>(g: &Graph, r: &ResistanceMatrix<S>) -> S {
    let degrees = g.degrees();
    let mut acc = S::zero();
    for i in 0..g.n() {
        for j in (i + 1)..g.n() {
            let dd = S::from_usize(degrees[i] * degrees[j]);
            acc += dd * r.get(i, j).clone();
        }
    }
    // Off-diagonal pairs counted once above, so double; then divide by 4m.
    let two = S::from_i64(2);
    acc * two / S::from_usize(4 * g.m())
}

/// Kemeny's constant via the resistance formula.
pub fn kemeny_resistance<S: Scalar>(g: &Graph) -> Result<KemenyReport<S>> {
    check_simple_connected(g)?;
    let r = resistance_matrix::<S>(g)?;
    Ok(KemenyReport {
        kemeny: kemeny_from_resistances(g, &r),
        m: g.m(),
        method: Method::Resistance,
        per_start_values: None,
    })
}

/// Kemeny's constant via mean hitting times of the random walk.
///
/// For each target `j` the system `m_jj = 0`, `m_ij = 1 + sum_k P_ik m_kj`
/// is solved exactly with `P = D^{-1} W`; the walk's stationary distribution
/// is `pi_j = d_j / 2m`. The report's value is the common value of
/// `sum_j pi_j m_ij` over all starts `i`.
pub fn kemeny_hitting_oracle<S: Scalar>(g: &Graph) -> Result<KemenyReport<S>> {
    check_simple_connected(g)?;
    let n = g.n();
    let m = g.m();
    let degrees = g.degrees();
    let adj = g.adjacency_lists();

    // Hitting times, hit[i][j] = expected steps from i to j.
    let mut hit: Vec<Vec<S>> = vec![vec![S::zero(); n]; n];
    for target in 0..n {
        let others: Vec<usize> = (0..n).filter(|&v| v != target).collect();
        let index_of: Vec<Option<usize>> = {
            let mut idx = vec![None; n];
            for (k, &v) in others.iter().enumerate() {
                idx[v] = Some(k);
            }
            idx
        };
        // (I - P restricted to non-target rows/cols) x = 1.
        let mut system: Matrix<S> = Matrix::identity(n - 1);
        for (row, &i) in others.iter().enumerate() {
            let p = S::from_ratio_i64(1, degrees[i] as i64);
            for &nbr in &adj[i] {
                if let Some(col) = index_of[nbr] {
                    system[(row, col)] = system[(row, col)].clone() - p.clone();
                }
            }
        }
        let rhs = vec![S::one(); n - 1];
        let solution = system.solve(&rhs)?;
        for (row, &i) in others.iter().enumerate() {
            hit[i][target] = solution[row].clone();
        }
    }

    let per_start: Vec<S> = (0..n)
        .map(|start| {
            let mut acc = S::zero();
            for target in 0..n {
                let pi = S::from_ratio_i64(degrees[target] as i64, 2 * m as i64);
                acc += pi * hit[start][target].clone();
            }
            acc
        })
        .collect();

    let first = per_start[0].clone();
    if !per_start.iter().all(|v| S::values_agree(v, &first)) {
        return Err(Error::HittingTimesInconsistent);
    }

    Ok(KemenyReport {
        kemeny: first,
        m,
        method: Method::HittingTime,
        per_start_values: Some(per_start),
    })
}

/// Moment of a vertex, `mu(G, v) = sum_i d_i r(i, v)`, from a precomputed
/// resistance matrix.
pub fn moment_from_resistances<S: Scalar>(g: &Graph, r: &ResistanceMatrix<S>, v: usize) -> S {
    let degrees = g.degrees();
    let mut acc = S::zero();
    for i in 0..g.n() {
        acc += S::from_usize(degrees[i]) * r.get(i, v).clone();
    }
    acc
}

/// Moment of a vertex, `mu(G, v) = d^T R e_v`.
pub fn moment<S: Scalar>(g: &Graph, v: usize) -> Result<MomentValue<S>> {
    if g.is_weighted() {
        return Err(Error::WeightedUnsupported);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    g.check_vertex(v)?;
    if g.n() == 1 {
        return Ok(MomentValue {
            vertex: v,
            value: S::zero(),
        });
    }
    let r = resistance_matrix::<S>(g)?;
    Ok(MomentValue {
        vertex: v,
        value: moment_from_resistances(g, &r, v),
    })
}

/// `mu(G, v) - K(G)`; nonnegative on every connected graph, which is
/// asserted for exact scalars.
pub fn moment_minus_kemeny<S: Scalar>(g: &Graph, v: usize) -> Result<S> {
    check_simple_connected(g)?;
    g.check_vertex(v)?;
    let r = resistance_matrix::<S>(g)?;
    let diff = moment_from_resistances(g, &r, v) - kemeny_from_resistances(g, &r);
    if S::EXACT {
        assert!(
            !diff.is_negative(),
            "moment minus Kemeny must be nonnegative, got {diff} at vertex {v}"
        );
    }
    Ok(diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_complete, make_cycle, make_path, make_star};
    use crate::Rational;
    use num_traits::Zero;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from_ratio_i64(n, d)
    }

    fn kem(g: &Graph) -> Rational {
        kemeny_resistance::<Rational>(g).unwrap().kemeny
    }

    #[test]
    fn known_kemeny_values() {
        assert_eq!(kem(&make_complete(5).unwrap()), rat(16, 5));
        assert_eq!(kem(&make_path(4).unwrap()), rat(19, 6));
        assert_eq!(kem(&make_star(6).unwrap()), rat(9, 2));
        assert_eq!(kem(&make_cycle(4).unwrap()), rat(5, 2));
        assert_eq!(kem(&make_path(2).unwrap()), rat(1, 2));
    }

    #[test]
    fn oracle_agrees_and_is_start_independent() {
        for g in [
            make_complete(3).unwrap(),
            make_path(2).unwrap(),
            make_path(7).unwrap(),
            make_cycle(4).unwrap(),
            make_star(5).unwrap(),
        ] {
            let by_resistance = kemeny_resistance::<Rational>(&g).unwrap();
            let by_hitting = kemeny_hitting_oracle::<Rational>(&g).unwrap();
            assert_eq!(by_resistance.kemeny, by_hitting.kemeny);
            let starts = by_hitting.per_start_values.unwrap();
            assert!(starts.iter().all(|v| *v == by_hitting.kemeny));
        }
        assert_eq!(
            kemeny_hitting_oracle::<Rational>(&make_complete(3).unwrap())
                .unwrap()
                .kemeny,
            rat(4, 3)
        );
        assert_eq!(
            kemeny_hitting_oracle::<Rational>(&make_path(7).unwrap())
                .unwrap()
                .kemeny,
            rat(73, 6)
        );
    }

    #[test]
    fn rejects_invalid_inputs() {
        let single = Graph::new(1, Vec::<(usize, usize)>::new()).unwrap();
        assert!(matches!(
            kemeny_resistance::<Rational>(&single),
            Err(Error::ParameterTooSmall { .. })
        ));
        let disconnected = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            kemeny_resistance::<Rational>(&disconnected),
            Err(Error::Disconnected)
        ));
        let weighted = Graph::new_weighted(2, vec![((0, 1), rat(1, 2))]).unwrap();
        assert!(matches!(
            kemeny_resistance::<Rational>(&weighted),
            Err(Error::WeightedUnsupported)
        ));
        assert!(matches!(
            moment::<Rational>(&weighted, 0),
            Err(Error::WeightedUnsupported)
        ));
    }

    #[test]
    fn known_moments() {
        let p5 = make_path(5).unwrap();
        assert_eq!(moment::<Rational>(&p5, 0).unwrap().value, rat(16, 1));
        let k4 = make_complete(4).unwrap();
        for v in 0..4 {
            assert_eq!(moment::<Rational>(&k4, v).unwrap().value, rat(9, 2));
        }
        let s4 = make_star(4).unwrap();
        assert_eq!(moment::<Rational>(&s4, 0).unwrap().value, rat(3, 1));
        assert!(matches!(
            moment::<Rational>(&s4, 9),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn moment_minus_kemeny_examples() {
        let p2 = make_path(2).unwrap();
        assert_eq!(moment_minus_kemeny::<Rational>(&p2, 0).unwrap(), rat(1, 2));
        assert_eq!(moment_minus_kemeny::<Rational>(&p2, 1).unwrap(), rat(1, 2));
        for n in 2..7i64 {
            let kn = make_complete(n as usize).unwrap();
            let expected = rat((n - 1) * (n - 1), n);
            assert_eq!(moment_minus_kemeny::<Rational>(&kn, 0).unwrap(), expected);
        }
    }

    #[test]
    fn single_vertex_moment_is_zero() {
        let g = Graph::new(1, Vec::<(usize, usize)>::new()).unwrap();
        assert!(moment::<Rational>(&g, 0).unwrap().value.is_zero());
    }
}

//! Kemeny's constant and moments of 1-separable graphs from component data.
//!
//! Everything here evaluates the decomposition side only: Kemeny's constant
//! of a glued graph is assembled from the parts' edge counts, Kemeny
//! constants, attachment-vertex moments, and within-part attachment-to-
//! attachment resistances. No formula ever touches the assembled graph, so
//! cross-checking against direct computation stays an honest two-route test.
//!
//! A single-vertex part contributes zero edges, zero moment, and zero
//! Kemeny's constant to every sum.

use crate::error::{Error, Result};
use crate::graph::{Graph, OneSumChain};
use crate::resistance::resistance_matrix;
use crate::scalar::Scalar;

/// Per-part inputs to the chain formulas.
#[derive(Debug, Clone)]
pub struct SeparationTerms<S> {
    /// m_i.
    pub edge_counts: Vec<usize>,
    /// Kemeny's constant of each part (zero for a single vertex).
    pub kemenys: Vec<S>,
    /// Moment of each part at its left attachment.
    pub moments_left: Vec<S>,
    /// Moment of each part at its right attachment.
    pub moments_right: Vec<S>,
    /// r within part i between its two attachments; zero when they coincide.
    pub within_resistance: Vec<S>,
}

impl<S: Scalar> SeparationTerms<S> {
    /// Resistance between the cut vertex shared by parts (i, i+1) and the one
    /// shared by parts (j-1, j), for j - i >= 2: resistances add across cut
    /// vertices, so this is the sum of the within-part terms between them.
    pub fn cross_resistance(&self, i: usize, j: usize) -> S {
        let mut acc = S::zero();
        for t in (i + 1)..j {
            acc += self.within_resistance[t].clone();
        }
        acc
    }

    pub fn total_edges(&self) -> usize {
        self.edge_counts.iter().sum()
    }
}

fn check_part(g: &Graph) -> Result<()> {
    if g.is_weighted() {
        return Err(Error::WeightedUnsupported);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Kemeny's constant, moments at the requested vertices, and the resistance
/// between the first two requested vertices, all from one resistance matrix.
fn part_data<S: Scalar>(g: &Graph, vs: &[usize]) -> Result<(S, Vec<S>, S)> {
    check_part(g)?;
    for &v in vs {
        g.check_vertex(v)?;
    }
    if g.n() == 1 {
        return Ok((S::zero(), vec![S::zero(); vs.len()], S::zero()));
    }
    let r = resistance_matrix::<S>(g)?;
    let kemeny = crate::constant::kemeny_from_resistances(g, &r);
    let moments = vs
        .iter()
        .map(|&v| crate::constant::moment_from_resistances(g, &r, v))
        .collect();
    let within = if vs.len() >= 2 {
        r.get(vs[0], vs[1]).clone()
    } else {
        S::zero()
    };
    Ok((kemeny, moments, within))
}

/// Kemeny's constant of `g1 (+)_v g2` from part data:
/// `[m1 (K(G1) + mu(G2, v)) + m2 (K(G2) + mu(G1, v))] / (m1 + m2)`.
pub fn kemeny_one_sep<S: Scalar>(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<S> {
    let (k1, mu1, _) = part_data::<S>(g1, &[v1])?;
    let (k2, mu2, _) = part_data::<S>(g2, &[v2])?;
    let m1 = g1.m();
    let m2 = g2.m();
    if m1 + m2 == 0 {
        return Err(Error::ParameterTooSmall {
            what: "1-separation formula",
            required: "at least one edge",
            got: "0".into(),
        });
    }
    Ok(kemeny_one_sep_params(m1, &k1, &mu1[0], m2, &k2, &mu2[0]))
}

/// The Kemeny 1-separation formula on already-computed part data.
pub fn kemeny_one_sep_params<S: Scalar>(
    m1: usize,
    kemeny1: &S,
    moment1: &S,
    m2: usize,
    kemeny2: &S,
    moment2: &S,
) -> S {
    let m1s = S::from_usize(m1);
    let m2s = S::from_usize(m2);
    let num = m1s.clone() * (kemeny1.clone() + moment2.clone())
        + m2s * (kemeny2.clone() + moment1.clone());
    num / S::from_usize(m1 + m2)
}

/// Computes every per-part quantity the chain formulas need. For part 1 the
/// "left attachment" is whatever vertex the caller queries a moment at, so
/// it is passed in as `v0`.
pub fn separation_terms<S: Scalar>(chain: &OneSumChain, v0: usize) -> Result<SeparationTerms<S>> {
    let parts = chain.parts();
    parts[0].graph.check_vertex(v0)?;
    let mut terms = SeparationTerms {
        edge_counts: Vec::with_capacity(parts.len()),
        kemenys: Vec::with_capacity(parts.len()),
        moments_left: Vec::with_capacity(parts.len()),
        moments_right: Vec::with_capacity(parts.len()),
        within_resistance: Vec::with_capacity(parts.len()),
    };
    for (i, part) in parts.iter().enumerate() {
        let left = if i == 0 { v0 } else { part.attach_left };
        let (kemeny, moments, within) = part_data::<S>(&part.graph, &[left, part.attach_right])?;
        terms.edge_counts.push(part.graph.m());
        terms.kemenys.push(kemeny);
        terms.moments_left.push(moments[0].clone());
        terms.moments_right.push(moments[1].clone());
        terms.within_resistance.push(within);
    }
    Ok(terms)
}

/// Moment of the chain graph at `v0` (a vertex of the first part):
/// `sum_i mu(G_i, v_{i-1,i}) + 2 sum_{i>=2} r(v_{i-2,i-1}, v_{i-1,i}) sum_{j>=i} m_j`.
pub fn moment_chain<S: Scalar>(chain: &OneSumChain, v0: usize) -> Result<S> {
    let terms = separation_terms::<S>(chain, v0)?;
    let n = chain.len();
    let mut acc = S::zero();
    for i in 0..n {
        acc += terms.moments_left[i].clone();
    }
    // Suffix sums of edge counts: sum_{j >= i} m_j at chain position i.
    let mut suffix = vec![0usize; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + terms.edge_counts[i];
    }
    for i in 1..n {
        // r(v_{i-2,i-1}, v_{i-1,i}) lives inside part i-1 (0-indexed i - 1).
        let r = terms.within_resistance[i - 1].clone();
        acc += S::from_i64(2) * r * S::from_usize(suffix[i]);
    }
    Ok(acc)
}

/// Kemeny's constant of the chain graph:
/// `[sum_i m_i (K(G_i) + sum_{j != i} mu(G_j, v_{q_ij}))
///   + 2 sum_{j-i>=2} m_i m_j r(v_{i,i+1}, v_{j-1,j})] / sum_i m_i`
/// where `q_ij` selects the attachment of part j facing part i.
pub fn kemeny_chain<S: Scalar>(chain: &OneSumChain) -> Result<S> {
    // Part 1's left attachment never enters this formula; any vertex works.
    let terms = separation_terms::<S>(chain, chain.parts()[0].attach_left)?;
    let n = chain.len();
    let total = terms.total_edges();
    if total == 0 {
        return Err(Error::ParameterTooSmall {
            what: "chain Kemeny formula",
            required: "at least one edge",
            got: "0".into(),
        });
    }

    let mut num = S::zero();
    for i in 0..n {
        let mut inner = terms.kemenys[i].clone();
        for j in 0..n {
            if j == i {
                continue;
            }
            // j > i: the attachment facing i is part j's left one; j < i: right.
            let mu = if j > i {
                terms.moments_left[j].clone()
            } else {
                terms.moments_right[j].clone()
            };
            inner += mu;
        }
        num += S::from_usize(terms.edge_counts[i]) * inner;
    }
    for i in 0..n {
        for j in (i + 2)..n {
            let mm = S::from_usize(terms.edge_counts[i] * terms.edge_counts[j]);
            num += S::from_i64(2) * mm * terms.cross_resistance(i, j);
        }
    }
    Ok(num / S::from_usize(total))
}

/// Kemeny's constant of several parts all 1-summed at one shared vertex:
/// `[sum_i m_i (K(G_i) + sum_{j != i} mu(G_j, v_j))] / sum_i m_i`.
pub fn kemeny_star_of_parts<S: Scalar>(parts: &[(Graph, usize)]) -> Result<S> {
    if parts.is_empty() {
        return Err(Error::EmptyChain);
    }
    let mut edge_counts = Vec::with_capacity(parts.len());
    let mut kemenys = Vec::with_capacity(parts.len());
    let mut moments = Vec::with_capacity(parts.len());
    for (g, v) in parts {
        let (k, mu, _) = part_data::<S>(g, &[*v])?;
        edge_counts.push(g.m());
        kemenys.push(k);
        moments.push(mu[0].clone());
    }
    let total: usize = edge_counts.iter().sum();
    if total == 0 {
        return Err(Error::ParameterTooSmall {
            what: "star-of-parts formula",
            required: "at least one edge",
            got: "0".into(),
        });
    }
    let mut num = S::zero();
    for i in 0..parts.len() {
        let mut inner = kemenys[i].clone();
        for j in 0..parts.len() {
            if j != i {
                inner += moments[j].clone();
            }
        }
        num += S::from_usize(edge_counts[i]) * inner;
    }
    Ok(num / S::from_usize(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constant::{kemeny_resistance, moment};
    use crate::families::{make_complete, make_path, make_star};
    use crate::graph::{chain_sum, one_sum, ChainPart};
    use crate::Rational;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from_ratio_i64(n, d)
    }

    fn path_part(n: usize) -> ChainPart {
        ChainPart {
            graph: make_path(n).unwrap(),
            attach_left: 0,
            attach_right: n - 1,
        }
    }

    #[test]
    fn one_sep_of_paths_gives_p5() {
        let p3 = make_path(3).unwrap();
        let value = kemeny_one_sep::<Rational>(&p3, 2, &p3, 0).unwrap();
        assert_eq!(value, rat(11, 2));
        let direct = kemeny_resistance::<Rational>(&make_path(5).unwrap())
            .unwrap()
            .kemeny;
        assert_eq!(value, direct);
    }

    #[test]
    fn one_sep_matches_direct_on_mixed_parts() {
        let k4 = make_complete(4).unwrap();
        let s4 = make_star(4).unwrap();
        let formula = kemeny_one_sep::<Rational>(&k4, 1, &s4, 0).unwrap();
        let summed = one_sum(&k4, 1, &s4, 0).unwrap();
        let direct = kemeny_resistance::<Rational>(&summed.graph).unwrap().kemeny;
        assert_eq!(formula, direct);
    }

    #[test]
    fn one_sep_is_symmetric() {
        let k4 = make_complete(4).unwrap();
        let p4 = make_path(4).unwrap();
        for v1 in 0..4 {
            for v2 in 0..4 {
                let a = kemeny_one_sep::<Rational>(&k4, v1, &p4, v2).unwrap();
                let b = kemeny_one_sep::<Rational>(&p4, v2, &k4, v1).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn trivial_part_contributes_nothing() {
        let k4 = make_complete(4).unwrap();
        let p1 = make_path(1).unwrap();
        let value = kemeny_one_sep::<Rational>(&k4, 2, &p1, 0).unwrap();
        assert_eq!(value, kemeny_resistance::<Rational>(&k4).unwrap().kemeny);
    }

    #[test]
    fn moment_chain_on_two_parts() {
        // mu(G1, v0) + mu(G2, v12) + 2 m2 r(v12, v0), checked against direct.
        let chain = OneSumChain::new(vec![path_part(3), path_part(4)]).unwrap();
        let summed = chain_sum(&chain).unwrap();
        for v0 in 0..3 {
            let formula = moment_chain::<Rational>(&chain, v0).unwrap();
            let direct = moment::<Rational>(&summed.graph, summed.maps[0][v0])
                .unwrap()
                .value;
            assert_eq!(formula, direct);
        }
    }

    #[test]
    fn moment_chain_of_edges_matches_path_closed_form() {
        // A chain of n-1 copies of P_2 is P_n; the endpoint moment is (n-1)^2.
        for n in 2..7usize {
            let chain = OneSumChain::new(vec![path_part(2); n - 1]).unwrap();
            let value = moment_chain::<Rational>(&chain, 0).unwrap();
            assert_eq!(value, rat(((n - 1) * (n - 1)) as i64, 1));
        }
    }

    #[test]
    fn single_part_chain_moment_is_plain_moment() {
        let k4 = make_complete(4).unwrap();
        let chain = OneSumChain::new(vec![ChainPart {
            graph: k4.clone(),
            attach_left: 0,
            attach_right: 2,
        }])
        .unwrap();
        assert_eq!(
            moment_chain::<Rational>(&chain, 1).unwrap(),
            moment::<Rational>(&k4, 1).unwrap().value
        );
    }

    #[test]
    fn clique_path_clique_chain_is_a_barbell() {
        // K_{b+1} and K_{c+1} hung on the ends of P_a, assembled as a chain,
        // is the barbell B(1, a, b, c); the chain formula reproduces the
        // printed barbell value.
        for (a, b, c) in [(2usize, 1usize, 1usize), (4, 2, 3), (6, 4, 5)] {
            let chain = OneSumChain::new(vec![
                ChainPart {
                    graph: make_complete(b + 1).unwrap(),
                    attach_left: 0,
                    attach_right: 0,
                },
                ChainPart {
                    graph: make_path(a).unwrap(),
                    attach_left: 0,
                    attach_right: a - 1,
                },
                ChainPart {
                    graph: make_complete(c + 1).unwrap(),
                    attach_left: 0,
                    attach_right: 0,
                },
            ])
            .unwrap();
            let summed = chain_sum(&chain).unwrap();
            let barbell = crate::families::make_barbell(1, a, b, c).unwrap();
            assert_eq!(summed.graph.n(), barbell.n());
            assert_eq!(summed.graph.m(), barbell.m());
            let mut chain_degrees = summed.graph.degrees();
            let mut barbell_degrees = barbell.degrees();
            chain_degrees.sort_unstable();
            barbell_degrees.sort_unstable();
            assert_eq!(chain_degrees, barbell_degrees);

            let by_chain = kemeny_chain::<Rational>(&chain).unwrap();
            assert_eq!(
                by_chain,
                crate::closed_forms::kemeny_barbell::<Rational>(a, b, c).unwrap()
            );
            assert_eq!(
                by_chain,
                kemeny_resistance::<Rational>(&barbell).unwrap().kemeny
            );
        }
    }

    #[test]
    fn four_part_chain_of_p3_is_p9() {
        let chain = OneSumChain::new(vec![path_part(3); 4]).unwrap();
        let value = kemeny_chain::<Rational>(&chain).unwrap();
        assert_eq!(value, rat(43, 2));
        let direct = kemeny_resistance::<Rational>(&chain_sum(&chain).unwrap().graph)
            .unwrap()
            .kemeny;
        assert_eq!(value, direct);
    }

    #[test]
    fn chain_with_coincident_attachments_matches_star_of_parts() {
        let k3 = make_complete(3).unwrap();
        let p3 = make_path(3).unwrap();
        let s4 = make_star(4).unwrap();
        let chain = OneSumChain::new(vec![
            ChainPart {
                graph: k3.clone(),
                attach_left: 1,
                attach_right: 1,
            },
            ChainPart {
                graph: p3.clone(),
                attach_left: 0,
                attach_right: 0,
            },
            ChainPart {
                graph: s4.clone(),
                attach_left: 0,
                attach_right: 0,
            },
        ])
        .unwrap();
        let by_chain = kemeny_chain::<Rational>(&chain).unwrap();
        let by_star = kemeny_star_of_parts::<Rational>(&[(k3, 1), (p3, 0), (s4, 0)]).unwrap();
        assert_eq!(by_chain, by_star);
        let direct = kemeny_resistance::<Rational>(&chain_sum(&chain).unwrap().graph)
            .unwrap()
            .kemeny;
        assert_eq!(by_chain, direct);
    }

    #[test]
    fn star_of_edges_is_a_star_graph() {
        // k copies of P_2 glued at one endpoint form S_{k+1}: K = k - 1/2.
        for k in 1..6i64 {
            let parts: Vec<(Graph, usize)> = (0..k).map(|_| (make_path(2).unwrap(), 0)).collect();
            let value = kemeny_star_of_parts::<Rational>(&parts).unwrap();
            assert_eq!(value, rat(2 * k - 1, 2));
        }
    }

    #[test]
    fn star_of_two_parts_reduces_to_one_sep() {
        let k3 = make_complete(3).unwrap();
        let p4 = make_path(4).unwrap();
        let star = kemeny_star_of_parts::<Rational>(&[(k3.clone(), 0), (p4.clone(), 1)]).unwrap();
        let sep = kemeny_one_sep::<Rational>(&k3, 0, &p4, 1).unwrap();
        assert_eq!(star, sep);
    }

    #[test]
    fn friendship_graph_matches_direct() {
        // Three triangles glued at one vertex.
        let k3 = make_complete(3).unwrap();
        let parts = vec![(k3.clone(), 0), (k3.clone(), 0), (k3.clone(), 0)];
        let formula = kemeny_star_of_parts::<Rational>(&parts).unwrap();
        let mut acc = one_sum(&k3, 0, &k3, 0).unwrap();
        let shared = acc.map_right[0];
        acc = one_sum(&k3, 0, &acc.graph, shared).unwrap();
        let direct = kemeny_resistance::<Rational>(&acc.graph).unwrap().kemeny;
        assert_eq!(formula, direct);
    }

    #[test]
    fn weighted_parts_are_rejected() {
        let weighted = Graph::new_weighted(2, vec![((0, 1), rat(1, 2))]).unwrap();
        let p2 = make_path(2).unwrap();
        assert!(matches!(
            kemeny_one_sep::<Rational>(&weighted, 0, &p2, 0),
            Err(Error::WeightedUnsupported)
        ));
    }
}

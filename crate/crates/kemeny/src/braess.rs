//! Braess edges and Braess sets: non-edges whose insertion increases
//! Kemeny's constant.
//!
//! The decomposed difference formula splits the change across a 1-separation
//! into a first term `l m1 (mu(G1,v) - K(G1)) / (m(m+l))`, which is never
//! negative, and a second term built from
//! `A = mu(G2', v) - mu(G2, v)`, `B = K(G2') - mu(G2, v)`,
//! `C = K(G2') - K(G2)` for the augmented part `G2'`. A positive second term
//! is therefore sufficient for a Braess set.

use num_integer::Roots;
use num_traits::Signed;
use serde_json::json;

use crate::constant::{kemeny_from_resistances, moment_from_resistances};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::resistance::resistance_matrix;
use crate::scalar::Scalar;
use crate::Rational;

/// Canonical edge-set form: each pair `(min, max)`, the set sorted
/// lexicographically.
pub fn canonical_edge_set(set: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = set
        .iter()
        .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
        .collect();
    out.sort_unstable();
    out
}

/// Deterministic textual id for a labelled graph.
pub fn graph_id(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("n{}:{}", g.n(), edges.join(","))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BraessTerms<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparationDescriptor {
    /// The cut vertex, in the right part's (hence the composite's) labels.
    pub v: usize,
    pub n1: usize,
    pub m1: usize,
    pub n2: usize,
    pub m2: usize,
}

#[derive(Debug, Clone)]
pub struct BraessReport<S> {
    pub graph: String,
    pub separation: Option<SeparationDescriptor>,
    pub edge_set: Vec<(usize, usize)>,
    pub delta_kemeny: S,
    pub terms: Option<BraessTerms<S>>,
    pub is_braess: bool,
    /// The sufficient condition (second term positive); only meaningful when
    /// a separation was used.
    pub sufficiency_condition_holds: Option<bool>,
}

impl<S: Scalar> BraessReport<S> {
    pub fn l(&self) -> usize {
        self.edge_set.len()
    }

    /// The report wire format used by the CLI.
    pub fn to_json(&self) -> serde_json::Value {
        let edge_set: Vec<serde_json::Value> =
            self.edge_set.iter().map(|&(u, v)| json!([u, v])).collect();
        let terms = match &self.terms {
            Some(t) => json!({
                "A": t.a.to_string(),
                "B": t.b.to_string(),
                "C": t.c.to_string(),
            }),
            None => serde_json::Value::Null,
        };
        json!({
            "graph": self.graph,
            "edge_set": edge_set,
            "delta": self.delta_kemeny.to_string(),
            "delta_float": self.delta_kemeny.to_f64(),
            "terms": terms,
            "is_braess": self.is_braess,
            "sufficient": self.sufficiency_condition_holds,
        })
    }
}

/// `K(g + set) - K(g)`, exact. The set must consist of distinct non-edges.
pub fn delta_kemeny_direct<S: Scalar>(g: &Graph, set: &[(usize, usize)]) -> Result<S> {
    let augmented = g.add_edges(set)?;
    let before = crate::constant::kemeny_resistance::<S>(g)?.kemeny;
    let after = crate::constant::kemeny_resistance::<S>(&augmented)?.kemeny;
    Ok(after - before)
}

fn part_kemeny_and_moment<S: Scalar>(g: &Graph, v: usize) -> Result<(S, S)> {
    if g.is_weighted() {
        return Err(Error::WeightedUnsupported);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    g.check_vertex(v)?;
    if g.n() == 1 {
        return Ok((S::zero(), S::zero()));
    }
    let r = resistance_matrix::<S>(g)?;
    Ok((
        kemeny_from_resistances(g, &r),
        moment_from_resistances(g, &r, v),
    ))
}

/// The decomposed Kemeny difference for edges added inside the `g2` part of
/// `g1 (+) g2`. The edge set is given in `g2`'s labels, which are also the
/// composite's labels for that part.
pub fn delta_kemeny_separated<S: Scalar>(
    g1: &Graph,
    v1: usize,
    g2: &Graph,
    v2: usize,
    set: &[(usize, usize)],
) -> Result<BraessReport<S>> {
    for &(u, w) in set {
        if u >= g2.n() || w >= g2.n() {
            return Err(Error::InvalidEdgeSet(format!(
                "edge ({u}, {w}) crosses the separation: not inside the second part"
            )));
        }
    }
    let augmented = g2.add_edges(set)?;
    let (k1, mu1) = part_kemeny_and_moment::<S>(g1, v1)?;
    let (k2, mu2) = part_kemeny_and_moment::<S>(g2, v2)?;
    let (k2_hat, mu2_hat) = part_kemeny_and_moment::<S>(&augmented, v2)?;

    let m1 = g1.m();
    let m2 = g2.m();
    let m = m1 + m2;
    let l = set.len();
    if m == 0 {
        return Err(Error::ParameterTooSmall {
            what: "separated Kemeny difference",
            required: "at least one edge in the base graph",
            got: "0".into(),
        });
    }

    let a = mu2_hat.clone() - mu2.clone();
    let b = k2_hat.clone() - mu2;
    let c = k2_hat - k2.clone();

    let m1s = S::from_usize(m1);
    let m2s = S::from_usize(m2);
    let ls = S::from_usize(l);
    let denom = S::from_usize(m) * S::from_usize(m + l);

    let gap = mu1 - k1;
    if S::EXACT {
        assert!(
            !gap.is_negative(),
            "moment minus Kemeny of the first part must be nonnegative"
        );
    }
    let first = ls.clone() * m1s.clone() * gap / denom.clone();
    let second_num = a.clone() * m1s.clone() * m1s.clone()
        + ((a.clone() + c.clone()) * m2s.clone() + b.clone() * ls.clone()) * m1s
        + c.clone() * (m2s.clone() * m2s.clone() + ls * m2s);
    let sufficient = second_num.is_positive();
    let delta = first + second_num / denom;
    let is_braess = delta.is_positive();

    Ok(BraessReport {
        graph: format!("one_sum({} @{v1}; {} @{v2})", graph_id(g1), graph_id(g2)),
        separation: Some(SeparationDescriptor {
            v: v2,
            n1: g1.n(),
            m1,
            n2: g2.n(),
            m2,
        }),
        edge_set: canonical_edge_set(set),
        delta_kemeny: delta,
        terms: Some(BraessTerms { a, b, c }),
        is_braess,
        sufficiency_condition_holds: Some(sufficient),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PendantStarBound {
    pub k: usize,
    pub l: usize,
    /// Threshold on `m1`; exceeding it guarantees a Braess set.
    pub bound: Rational,
    /// Whether the radical evaluated to an integer (no rounding applied).
    pub exact: bool,
}

/// Floor square root alongside a rational upper bound at 1e-6 granularity.
/// The upper bound can only strengthen an `m1 > bound` condition.
fn sqrt_upper(x: u128) -> (Rational, bool) {
    let s = x.sqrt();
    if s * s == x {
        return (Rational::from_i64(s as i64), true);
    }
    const SCALE: u128 = 1_000_000;
    let t = (x * SCALE * SCALE).sqrt();
    (
        Rational::new(((t + 1) as i64).into(), (SCALE as i64).into()),
        false,
    )
}

/// The simplified pendant-star threshold: `l` edges added among `k` pendants
/// hung at one vertex form a Braess set whenever `m1` exceeds
/// `(1/8)[sqrt(33 l^2 + 50 l + 17) - l - 1]` for `l < k`, and
/// `(1/8)[sqrt(33 k^2 - 30 k + 1) - k - 1]` for `l >= k`.
pub fn pendant_star_bound(k: usize, l: usize) -> Result<PendantStarBound> {
    if k < 1 {
        return Err(Error::ParameterTooSmall {
            what: "pendant-star bound",
            required: "k >= 1",
            got: k.to_string(),
        });
    }
    let addable = k * (k - 1) / 2;
    if l < 1 || l > addable {
        return Err(Error::ParameterTooSmall {
            what: "pendant-star bound",
            required: "1 <= l <= C(k+1,2) - k",
            got: format!("l = {l} with k = {k}"),
        });
    }
    let (radicand, subtract) = if l < k {
        let l = l as u128;
        (33 * l * l + 50 * l + 17, (l + 1) as i64)
    } else {
        let k = k as u128;
        (33 * k * k - 30 * k + 1, (k + 1) as i64)
    };
    let (root, exact) = sqrt_upper(radicand);
    let bound = (root - Rational::from_i64(subtract)) / Rational::from_i64(8);
    Ok(PendantStarBound { k, l, bound, exact })
}

/// The unsimplified threshold, before the piecewise reduction:
/// `(1/(8l)) [k^2 - 2kl - k + sqrt(k (k^3 - 16 l^2 + 2 k^2 (6l - 1)
/// + k (20 l^2 - 12 l + 1)))]`, again with the radical rounded up.
pub fn raw_pendant_bound(k: usize, l: usize) -> Result<Rational> {
    if k < 1 || l < 1 {
        return Err(Error::ParameterTooSmall {
            what: "raw pendant bound",
            required: "k >= 1 and l >= 1",
            got: format!("k = {k}, l = {l}"),
        });
    }
    let (ki, li) = (k as i128, l as i128);
    let inner = ki * ki * ki - 16 * li * li
        + 2 * ki * ki * (6 * li - 1)
        + ki * (20 * li * li - 12 * li + 1);
    let radicand = ki * inner;
    assert!(radicand >= 0, "radicand must be nonnegative here");
    let (root, _) = sqrt_upper(radicand as u128);
    let poly = Rational::from_i64((ki * ki - 2 * ki * li - ki) as i64);
    Ok((poly + root) / Rational::from_i64(8 * l as i64))
}

/// Advances a k-subset of `0..n` to its lexicographic successor.
pub(crate) fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] != i + n - k {
            indices[i] += 1;
            for j in (i + 1)..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exhaustive scan over all non-edge subsets of size `1..=max_set_size`.
/// Results are sorted by delta descending with a lexicographic tie-break on
/// the canonical edge set. The direct difference is the source of truth; no
/// separation formula is involved.
pub fn braess_scan(
    g: &Graph,
    max_set_size: usize,
    non_edge_cap: usize,
) -> Result<Vec<BraessReport<Rational>>> {
    if max_set_size < 1 {
        return Err(Error::ParameterTooSmall {
            what: "Braess scan",
            required: "max_set_size >= 1",
            got: max_set_size.to_string(),
        });
    }
    let non_edges = g.non_edges();
    if non_edges.len() > non_edge_cap {
        return Err(Error::CapExceeded(format!(
            "{} non-edges exceeds the scan cap of {non_edge_cap}",
            non_edges.len()
        )));
    }
    let base = crate::constant::kemeny_resistance::<Rational>(g)?.kemeny;
    let id = graph_id(g);

    let mut reports = Vec::new();
    for size in 1..=max_set_size.min(non_edges.len()) {
        let mut indices: Vec<usize> = (0..size).collect();
        loop {
            let set: Vec<(usize, usize)> = indices.iter().map(|&i| non_edges[i]).collect();
            let augmented = g.add_edges(&set)?;
            let after = crate::constant::kemeny_resistance::<Rational>(&augmented)?.kemeny;
            let delta = after - base.clone();
            let is_braess = delta.is_positive();
            reports.push(BraessReport {
                graph: id.clone(),
                separation: None,
                edge_set: canonical_edge_set(&set),
                delta_kemeny: delta,
                terms: None,
                is_braess,
                sufficiency_condition_holds: None,
            });
            if !next_combination(&mut indices, non_edges.len()) {
                break;
            }
        }
    }
    reports.sort_by(|x, y| {
        y.delta_kemeny
            .cmp(&x.delta_kemeny)
            .then_with(|| x.edge_set.cmp(&y.edge_set))
    });
    Ok(reports)
}

//! Closed-form values for standard families, barbells, pendant attachments,
//! and the four pendant-triplet gadgets.
//!
//! The formula functions take `(m, K(g), mu(g, v))` as inputs so they can be
//! swept symbolically in tests; each has a convenience wrapper that accepts
//! a graph. The special-case barbell formulas are evaluated in their
//! published closed form, rational correction term and all, rather than
//! re-derived from the general expression.

use crate::error::{Error, Result};
use crate::families::{barbell_edge_count, make_path};
use crate::graph::{one_sum, Graph};
use crate::resistance::resistance_matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Complete,
    Path,
    Star,
}

/// A named closed-form evaluation, optionally cross-checked against direct
/// computation on the explicitly constructed graph.
#[derive(Debug, Clone)]
pub struct ClosedFormResult<S> {
    pub name: String,
    pub parameters: Vec<(String, String)>,
    pub value: S,
    pub verified_against_direct: Option<bool>,
}

fn require(cond: bool, what: &'static str, required: &'static str, got: String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::ParameterTooSmall {
            what,
            required,
            got,
        })
    }
}

/// Kemeny's constant of `K_n`, `P_n`, or `S_n`:
/// `(n-1)^2/n`, `(2n^2-4n+3)/6`, `n - 3/2`.
pub fn kemeny_closed<S: Scalar>(family: Family, n: usize) -> Result<S> {
    require(n >= 2, "closed-form Kemeny", "n >= 2", n.to_string())?;
    let n = n as i64;
    Ok(match family {
        Family::Complete => S::from_ratio_i64((n - 1) * (n - 1), n),
        Family::Path => S::from_ratio_i64(2 * n * n - 4 * n + 3, 6),
        Family::Star => S::from_ratio_i64(2 * n - 3, 2),
    })
}

/// Moment closed forms, with `v` in this crate's 0-indexed labels:
/// `mu(K_n, v) = 2(n-1)^2/n`; `mu(P_n, v) = (n-1-v)^2 + v^2`;
/// `mu(S_n, center) = n - 1` (the star's center is vertex 0).
pub fn moment_closed<S: Scalar>(family: Family, n: usize, v: usize) -> Result<S> {
    require(n >= 2, "closed-form moment", "n >= 2", n.to_string())?;
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let ni = n as i64;
    match family {
        Family::Complete => Ok(S::from_ratio_i64(2 * (ni - 1) * (ni - 1), ni)),
        Family::Path => {
            let vi = v as i64;
            Ok(S::from_i64((ni - 1 - vi) * (ni - 1 - vi) + vi * vi))
        }
        Family::Star => {
            if v != 0 {
                return Err(Error::ParameterTooSmall {
                    what: "star moment closed form",
                    required: "the center vertex (index 0)",
                    got: v.to_string(),
                });
            }
            Ok(S::from_i64(ni - 1))
        }
    }
}

/// Kemeny's constant of the barbell `B(1, a, b, c)`, over
/// `m = C(b+1,2) + C(c+1,2) + a - 1`.
pub fn kemeny_barbell<S: Scalar>(a: usize, b: usize, c: usize) -> Result<S> {
    require(a >= 2, "barbell closed form", "a >= 2", a.to_string())?;
    require(b >= 1, "barbell closed form", "b >= 1", b.to_string())?;
    require(c >= 1, "barbell closed form", "c >= 1", c.to_string())?;
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let choose2 = |x: i64| x * (x - 1) / 2;
    let cb = S::from_i64(choose2(b + 1));
    let cc = S::from_i64(choose2(c + 1));
    let am1 = S::from_i64(a - 1);
    let am1_sq = S::from_i64((a - 1) * (a - 1));
    let b_term = S::from_ratio_i64(b * b, b + 1);
    let c_term = S::from_ratio_i64(c * c, c + 1);
    let two = S::from_i64(2);

    let t1 = cb.clone() * (b_term.clone() + am1_sq.clone() + two.clone() * c_term.clone());
    let t2 = am1.clone()
        * (S::from_ratio_i64(2 * a * a - 4 * a + 3, 6)
            + two.clone() * b_term.clone()
            + two.clone() * c_term.clone());
    let t3 = cc.clone() * (c_term + am1_sq + two.clone() * b_term);
    let t4 = two * cb * cc * am1;

    let m = S::from_usize(barbell_edge_count(a as usize, b as usize, c as usize));
    Ok((t1 + t2 + t3 + t4) / m)
}

fn require_third(n: usize) -> Result<i64> {
    require(
        n >= 9 && n.is_multiple_of(3),
        "barbell corollary",
        "n >= 9 and divisible by 3",
        n.to_string(),
    )?;
    Ok(n as i64)
}

/// Kemeny's constant of the balanced barbell `B(1, n/3, n/3, n/3)`:
/// `(1/54)[n^3+3n^2+24n-36 + (-513n^2+1782n-1701)/(n^3+9n^2+9n-27)]`.
pub fn kemeny_barbell_thirds<S: Scalar>(n: usize) -> Result<S> {
    let n = require_third(n)?;
    let poly = S::from_i64(n * n * n + 3 * n * n + 24 * n - 36);
    let correction = S::from_ratio_i64(
        -513 * n * n + 1782 * n - 1701,
        n * n * n + 9 * n * n + 9 * n - 27,
    );
    Ok((poly + correction) / S::from_i64(54))
}

/// Kemeny's constant of `B(1, n/3+2, n/3-1, n/3-1)`, the barbell on n
/// vertices with the largest Kemeny constant:
/// `(1/54)[n^3+3n^2+60n-270 + (297n^2-729n+5832)/(n^3+9n)]`.
pub fn kemeny_barbell_best<S: Scalar>(n: usize) -> Result<S> {
    let n = require_third(n)?;
    let poly = S::from_i64(n * n * n + 3 * n * n + 60 * n - 270);
    let correction = S::from_ratio_i64(297 * n * n - 729 * n + 5832, n * n * n + 9 * n);
    Ok((poly + correction) / S::from_i64(54))
}

/// Kemeny's constant after attaching `k` pendant vertices at `v`, from part
/// data: `[m1 K(G1) + k mu(G1, v) + k (m1 + k - 1/2)] / (m1 + k)`.
pub fn kemeny_k_pendants_params<S: Scalar>(m1: usize, kemeny1: &S, moment1: &S, k: usize) -> S {
    let ks = S::from_usize(k);
    let num = S::from_usize(m1) * kemeny1.clone()
        + ks.clone() * moment1.clone()
        + ks * (S::from_usize(m1) + S::from_ratio_i64(2 * k as i64 - 1, 2));
    num / S::from_usize(m1 + k)
}

/// Graph wrapper around [`kemeny_k_pendants_params`].
pub fn kemeny_k_pendants<S: Scalar>(g: &Graph, v: usize, k: usize) -> Result<S> {
    require(k >= 1, "pendant attachment", "k >= 1", k.to_string())?;
    g.check_vertex(v)?;
    if g.is_weighted() {
        return Err(Error::WeightedUnsupported);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let r = resistance_matrix::<S>(g)?;
    let kemeny = crate::constant::kemeny_from_resistances(g, &r);
    let moment = crate::constant::moment_from_resistances(g, &r, v);
    Ok(kemeny_k_pendants_params(g.m(), &kemeny, &moment, k))
}

/// Kemeny's constants of the four pendant-triplet augmentations of a graph.
///
/// Starting from `g` with three pendants `a, b, c` attached at `v`:
/// `bar` has no edges among the pendants, `tilde` adds `ab`, `hat` adds
/// `ab, bc`, and `star` adds all three (completing a `K_4` on `{v,a,b,c}`).
#[derive(Debug, Clone, PartialEq)]
pub struct TripletKemeny<S> {
    pub bar: S,
    pub tilde: S,
    pub hat: S,
    pub star: S,
}

/// The four triplet formulas on part data `(m, K(g), mu(g, v))`.
pub fn triplet_kemeny_params<S: Scalar>(m: usize, kemeny: &S, moment: &S) -> TripletKemeny<S> {
    let m = m as i64;
    let k = kemeny.clone();
    let mu = moment.clone();
    let lin = |km: i64, mum: i64, mm: i64, cc: i64, den_m: i64, den_c: i64| {
        (S::from_i64(km) * k.clone() + S::from_i64(mum) * mu.clone() + S::from_i64(mm * m + cc))
            / S::from_i64(den_m * m + den_c)
    };
    TripletKemeny {
        bar: lin(2 * m, 6, 6, 15, 2, 6),
        tilde: lin(6 * m, 24, 22, 61, 6, 24),
        hat: lin(4 * m, 20, 16, 47, 4, 20),
        star: lin(2 * m, 12, 9, 27, 2, 12),
    }
}

/// Graph wrapper around [`triplet_kemeny_params`].
pub fn kemeny_triplet_variants<S: Scalar>(g: &Graph, v: usize) -> Result<TripletKemeny<S>> {
    g.check_vertex(v)?;
    if g.is_weighted() {
        return Err(Error::WeightedUnsupported);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    require(g.m() >= 1, "triplet formulas", "m >= 1", g.m().to_string())?;
    let r = resistance_matrix::<S>(g)?;
    let kemeny = crate::constant::kemeny_from_resistances(g, &r);
    let moment = crate::constant::moment_from_resistances(g, &r, v);
    Ok(triplet_kemeny_params(g.m(), &kemeny, &moment))
}

/// The four explicit triplet graphs `[bar, tilde, hat, star]`: three pendants
/// at `v` labelled `n, n+1, n+2`, plus 0..3 edges among them.
pub fn triplet_graphs(g: &Graph, v: usize) -> Result<[Graph; 4]> {
    g.check_vertex(v)?;
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    edges.extend([(v, n), (v, n + 1), (v, n + 2)]);
    let bar = Graph::new(n + 3, edges)?;
    let tilde = bar.add_edges(&[(n, n + 1)])?;
    let hat = tilde.add_edges(&[(n + 1, n + 2)])?;
    let star = hat.add_edges(&[(n, n + 2)])?;
    Ok([bar, tilde, hat, star])
}

/// `K_n` 1-summed onto one end of `P_n`, returned with the far (degree-1)
/// path end. This is the amplifier graph used in the all-Braess argument.
pub fn make_clique_path(n: usize) -> Result<(Graph, usize)> {
    require(n >= 2, "clique-path graph", "n >= 2", n.to_string())?;
    let clique = crate::families::make_complete(n)?;
    let path = make_path(n)?;
    let summed = one_sum(&clique, 0, &path, 0)?;
    Ok((summed.graph, n - 1))
}

/// Kemeny's constant of the clique-path graph:
/// `(3n^4 - n^3 + 5n^2 - 18n + 12) / (3n(n+2))`.
pub fn kemeny_clique_path<S: Scalar>(n: usize) -> Result<S> {
    require(n >= 2, "clique-path closed form", "n >= 2", n.to_string())?;
    let n = n as i64;
    Ok(S::from_ratio_i64(
        3 * n * n * n * n - n * n * n + 5 * n * n - 18 * n + 12,
        3 * n * (n + 2),
    ))
}

/// Moment of the clique-path graph at the far path end:
/// `(n-1)^2 (n + 1 + 2/n)`.
pub fn moment_clique_path_end<S: Scalar>(n: usize) -> Result<S> {
    require(n >= 2, "clique-path closed form", "n >= 2", n.to_string())?;
    let n = n as i64;
    Ok(S::from_ratio_i64((n - 1) * (n - 1) * (n * n + n + 2), n))
}

/// `mu - K` for the clique-path graph at the far path end:
/// `(3n^4 - 2n^2 - 8n + 6) / (3(n+2))`.
pub fn clique_path_gap<S: Scalar>(n: usize) -> Result<S> {
    require(n >= 2, "clique-path closed form", "n >= 2", n.to_string())?;
    let n = n as i64;
    Ok(S::from_ratio_i64(
        3 * n * n * n * n - 2 * n * n - 8 * n + 6,
        3 * (n + 2),
    ))
}

/// Evaluates the barbell closed form as a [`ClosedFormResult`], optionally
/// cross-checked against direct computation on the constructed graph.
pub fn barbell_result(
    a: usize,
    b: usize,
    c: usize,
    verify: bool,
) -> Result<ClosedFormResult<crate::Rational>> {
    let value = kemeny_barbell::<crate::Rational>(a, b, c)?;
    let verified_against_direct = if verify {
        let g = crate::families::make_barbell(1, a, b, c)?;
        let direct = crate::constant::kemeny_resistance::<crate::Rational>(&g)?.kemeny;
        Some(direct == value)
    } else {
        None
    };
    Ok(ClosedFormResult {
        name: "barbell_kemeny".into(),
        parameters: vec![
            ("a".into(), a.to_string()),
            ("b".into(), b.to_string()),
            ("c".into(), c.to_string()),
        ],
        value,
        verified_against_direct,
    })
}

//! Sweep drivers behind `verify` suites and the acceptance tests.
//!
//! Each driver runs one family of checks at caller-chosen caps and reports
//! how many cases it checked and how many failed. Formula sides evaluate in
//! fixed-width exact arithmetic from cached part data; direct sides run the
//! integer kernel (falling back to arbitrary-precision when it declines),
//! which is itself pinned against the rational pseudoinverse route both in
//! its unit tests and by a dedicated cross-check driver here.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braess::{delta_kemeny_direct, pendant_star_bound};
use crate::closed_forms::{self, Family};
use crate::constant::{kemeny_hitting_oracle, kemeny_resistance, moment};
use crate::enumeration::{
    all_trees, connected_corpus, connected_graph_count_oracle, random_connected_graph,
};
use crate::error::Result;
use crate::families::{make_barbell, make_complete, make_path, make_star};
use crate::fast::{int_kernel, int_kernel_from_edges};
use crate::graph::{chain_sum, one_sum, ChainPart, Graph, OneSumChain};
use crate::scalar::Scalar;
use crate::separation::{kemeny_chain, kemeny_one_sep_params, kemeny_star_of_parts, moment_chain};
use crate::{Rational, Rational128};

/// Outcome of one named sweep.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
}

impl CheckOutcome {
    fn new(name: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            checked: 0,
            failures: 0,
        }
    }

    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
        }
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

/// Exact part data cached per corpus graph (fixed-width arithmetic).
struct PartData {
    m: usize,
    kemeny: Rational128,
    moments: Vec<Rational128>,
    /// Dense pairwise resistances, row-major n x n.
    resistances: Vec<Rational128>,
}

impl PartData {
    fn resistance(&self, n: usize, u: usize, v: usize) -> Rational128 {
        self.resistances[u * n + v]
    }
}

fn zero128() -> Rational128 {
    Rational128::from_i64(0)
}

/// Kemeny, moments, and resistances of one graph through the integer kernel.
/// Single-vertex graphs get the zero conventions used by the chain formulas.
fn part_data(g: &Graph) -> PartData {
    let n = g.n();
    if n == 1 {
        return PartData {
            m: 0,
            kemeny: zero128(),
            moments: vec![zero128()],
            resistances: vec![zero128()],
        };
    }
    let kernel = int_kernel(g).expect("corpus graphs are small and connected");
    let kemeny = kernel.kemeny().expect("in range");
    let moments = (0..n)
        .map(|v| kernel.moment(v).expect("in range"))
        .collect();
    let mut resistances = vec![zero128(); n * n];
    for u in 0..n {
        for v in 0..n {
            resistances[u * n + v] = kernel.resistance(u, v);
        }
    }
    PartData {
        m: g.m(),
        kemeny,
        moments,
        resistances,
    }
}

/// Direct Kemeny through the kernel with an arbitrary-precision fallback.
fn direct_kemeny(g: &Graph) -> Rational128 {
    match int_kernel(g).and_then(|k| k.kemeny()) {
        Some(v) => v,
        None => {
            let exact = kemeny_resistance::<Rational>(g).expect("connected").kemeny;
            Rational128::from_rational(&exact)
        }
    }
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Family closed forms against the rational resistance route, 2..=n_max.
pub fn check_closed_form_families(n_max: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new(format!("closed_forms_families(n<={n_max})"));
    let results: Vec<bool> = (2..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut oks = Vec::new();
            let complete = make_complete(n).expect("n >= 2");
            let path = make_path(n).expect("n >= 2");
            let star = make_star(n).expect("n >= 2");
            let kc = kemeny_resistance::<Rational>(&complete).unwrap().kemeny;
            let kp = kemeny_resistance::<Rational>(&path).unwrap().kemeny;
            let ks = kemeny_resistance::<Rational>(&star).unwrap().kemeny;
            oks.push(closed_forms::kemeny_closed::<Rational>(Family::Complete, n).unwrap() == kc);
            oks.push(closed_forms::kemeny_closed::<Rational>(Family::Path, n).unwrap() == kp);
            oks.push(closed_forms::kemeny_closed::<Rational>(Family::Star, n).unwrap() == ks);
            for v in 0..n {
                oks.push(
                    closed_forms::moment_closed::<Rational>(Family::Complete, n, v).unwrap()
                        == moment::<Rational>(&complete, v).unwrap().value,
                );
                oks.push(
                    closed_forms::moment_closed::<Rational>(Family::Path, n, v).unwrap()
                        == moment::<Rational>(&path, v).unwrap().value,
                );
            }
            oks.push(
                closed_forms::moment_closed::<Rational>(Family::Star, n, 0).unwrap()
                    == moment::<Rational>(&star, 0).unwrap().value,
            );
            oks
        })
        .collect();
    for ok in results {
        out.record(ok);
    }
    out
}

/// The general `B(1, a, b, c)` closed form against direct computation over
/// `2 <= a <= a_max`, `1 <= b, c <= bc_max`.
pub fn check_barbell_theorem(a_max: usize, bc_max: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new(format!("barbell_theorem(a<={a_max},b,c<={bc_max})"));
    let cases: Vec<(usize, usize, usize)> = (2..=a_max)
        .flat_map(|a| (1..=bc_max).flat_map(move |b| (1..=bc_max).map(move |c| (a, b, c))))
        .collect();
    let results: Vec<bool> = cases
        .into_par_iter()
        .map(|(a, b, c)| {
            let formula = closed_forms::kemeny_barbell::<Rational>(a, b, c).unwrap();
            let g = make_barbell(1, a, b, c).unwrap();
            let direct = kemeny_resistance::<Rational>(&g).unwrap().kemeny;
            formula == direct
        })
        .collect();
    for ok in results {
        out.record(ok);
    }
    out
}

/// The balanced and maximal barbell special cases against the general
/// formula and against direct computation at n in {9, 12, ..., n_max}, plus
/// best(n) > thirds(n) and the finite sweep showing best(n) tops every
/// barbell on n vertices.
pub fn check_barbell_corollaries(n_max: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new(format!("barbell_corollaries(n<={n_max})"));
    for n in (9..=n_max).step_by(3) {
        let third = n / 3;
        let thirds = closed_forms::kemeny_barbell_thirds::<Rational>(n).unwrap();
        let best = closed_forms::kemeny_barbell_best::<Rational>(n).unwrap();
        out.record(
            thirds == closed_forms::kemeny_barbell::<Rational>(third, third, third).unwrap(),
        );
        out.record(
            best == closed_forms::kemeny_barbell::<Rational>(third + 2, third - 1, third - 1)
                .unwrap(),
        );
        out.record(best > thirds);
        let direct_thirds =
            kemeny_resistance::<Rational>(&make_barbell(1, third, third, third).unwrap())
                .unwrap()
                .kemeny;
        out.record(thirds == direct_thirds);
        let direct_best = kemeny_resistance::<Rational>(
            &make_barbell(1, third + 2, third - 1, third - 1).unwrap(),
        )
        .unwrap()
        .kemeny;
        out.record(best == direct_best);
        // Finite sweep: best(n) maximizes over all (a, b, c) with a+b+c = n.
        let mut max_val: Option<Rational> = None;
        for a in 2..=(n - 2) {
            for b in 1..(n - a) {
                let c = n - a - b;
                if c < 1 {
                    continue;
                }
                let v = closed_forms::kemeny_barbell::<Rational>(a, b, c).unwrap();
                if max_val.as_ref().is_none_or(|m| v > *m) {
                    max_val = Some(v);
                }
            }
        }
        out.record(max_val.expect("sweep nonempty") == best);
    }
    out
}

// ---------------------------------------------------------------------------
// Oracle agreement
// ---------------------------------------------------------------------------

/// Both Kemeny routes on every labelled tree with n in 2..=n_max, including
/// start-independence of the hitting oracle.
pub fn check_oracle_agreement_trees(n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(format!("oracle_agreement_trees(n<={n_max})"));
    for n in 2..=n_max {
        let trees: Vec<Graph> = all_trees(n)?.collect();
        let results: Vec<bool> = trees
            .par_iter()
            .map(|tree| {
                let resist = kemeny_resistance::<Rational128>(tree).unwrap();
                let hit = kemeny_hitting_oracle::<Rational128>(tree).unwrap();
                let starts = hit.per_start_values.as_ref().unwrap();
                resist.kemeny == hit.kemeny && starts.iter().all(|v| *v == hit.kemeny)
            })
            .collect();
        for ok in results {
            out.record(ok);
        }
    }
    Ok(out)
}

/// Both Kemeny routes on seeded random connected graphs.
pub fn check_oracle_agreement_random(
    count: usize,
    n_max: usize,
    seed: u64,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(format!(
        "oracle_agreement_random(count={count},n<={n_max},seed={seed})"
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<Graph> = (0..count)
        .map(|_| {
            let n = rng.random_range(2..=n_max);
            let p = rng.random_range(0.15..0.9);
            random_connected_graph(&mut rng, n, p)
        })
        .collect();
    let results: Vec<bool> = graphs
        .par_iter()
        .map(|g| {
            let resist = kemeny_resistance::<Rational>(g).unwrap();
            let hit = kemeny_hitting_oracle::<Rational>(g).unwrap();
            let starts = hit.per_start_values.as_ref().unwrap();
            resist.kemeny == hit.kemeny && starts.iter().all(|v| *v == hit.kemeny)
        })
        .collect();
    for ok in results {
        out.record(ok);
    }
    Ok(out)
}

/// Pins the integer kernel to the rational pseudoinverse route over a whole
/// corpus: Kemeny and every vertex moment must agree exactly.
pub fn check_kernel_cross_validation(corpus_n: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(format!("kernel_cross_validation(n<={corpus_n})"));
    let corpus = connected_corpus(corpus_n)?;
    let results: Vec<bool> = corpus
        .graphs
        .par_iter()
        .filter(|g| g.n() >= 2)
        .map(|g| {
            let kernel = match int_kernel(g) {
                Some(k) => k,
                None => return false,
            };
            let r = crate::resistance::resistance_matrix::<Rational>(g).unwrap();
            let kem = crate::constant::kemeny_from_resistances(g, &r);
            if kernel.kemeny().unwrap().to_rational().unwrap() != kem {
                return false;
            }
            (0..g.n()).all(|v| {
                kernel.moment(v).unwrap().to_rational().unwrap()
                    == crate::constant::moment_from_resistances(g, &r, v)
            })
        })
        .collect();
    for ok in results {
        out.record(ok);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// 1-separation formulas
// ---------------------------------------------------------------------------

/// Where vertex `u` of the left operand lands in the composite: the right
/// operand keeps its labels, the left operand's other vertices follow in
/// ascending order. Matches `one_sum`, which is asserted on a sample inside
/// the sweeps.
#[inline]
fn spliced_label(u: usize, v1: usize, v2: usize, n2: usize) -> usize {
    if u == v1 {
        v2
    } else {
        n2 + u - usize::from(u > v1)
    }
}

/// Assembles the composite edge list of `g1 (+)_{v1,v2} g2` into `buf`.
fn splice_edges(g1: &Graph, v1: usize, g2: &Graph, v2: usize, buf: &mut Vec<(usize, usize)>) {
    buf.clear();
    buf.extend_from_slice(g2.edges());
    let n2 = g2.n();
    buf.extend(
        g1.edges()
            .iter()
            .map(|&(a, b)| (spliced_label(a, v1, v2, n2), spliced_label(b, v1, v2, n2))),
    );
}

/// Spot-check that the inline splice agrees with `one_sum` on this config.
fn assert_splice_matches_one_sum(
    g1: &Graph,
    v1: usize,
    g2: &Graph,
    v2: usize,
    buf: &[(usize, usize)],
) {
    let summed = one_sum(g1, v1, g2, v2).expect("corpus graphs are connected");
    let built = Graph::new(g1.n() + g2.n() - 1, buf.to_vec()).expect("valid edges");
    assert_eq!(built, summed.graph, "splice diverged from one_sum");
    for u in 0..g1.n() {
        assert_eq!(summed.map_left[u], spliced_label(u, v1, v2, g2.n()));
    }
}

/// Exhaustive 1-separation sweep over unordered pairs of corpus graphs and
/// every attachment choice. For each glued graph this checks the two-part
/// Kemeny formula and the two-part moment identity at every query vertex on
/// both sides, all against the assembled graph. Swapped operand order yields
/// an isomorphic glued graph and an algebraically identical formula, so
/// unordered pairs cover the ordered sweep.
pub fn check_one_separation_exhaustive(corpus_n: usize) -> Result<CheckOutcome> {
    let corpus = connected_corpus(corpus_n)?;
    let graphs = &corpus.graphs;
    let data: Vec<PartData> = graphs.par_iter().map(part_data).collect();

    let two = Rational128::from_i64(2);
    let results: Vec<(u64, u64)> = (0..graphs.len())
        .into_par_iter()
        .map(|i1| {
            let g1 = &graphs[i1];
            let d1 = &data[i1];
            let n1 = g1.n();
            let mut checked = 0u64;
            let mut failures = 0u64;
            let mut buf: Vec<(usize, usize)> = Vec::new();
            for i2 in i1..graphs.len() {
                let g2 = &graphs[i2];
                let d2 = &data[i2];
                let n2 = g2.n();
                if n1 + n2 - 1 < 2 {
                    continue;
                }
                for v1 in 0..n1 {
                    for v2 in 0..n2 {
                        splice_edges(g1, v1, g2, v2, &mut buf);
                        if (i1 + i2 + v1 + v2) % 8192 == 0 {
                            assert_splice_matches_one_sum(g1, v1, g2, v2, &buf);
                        }
                        let kernel = int_kernel_from_edges(n1 + n2 - 1, &buf)
                            .expect("composite of corpus graphs stays in kernel range");

                        // The spliced Kemeny value must equal the direct one.
                        checked += 1;
                        let formula = kemeny_one_sep_params(
                            d1.m,
                            &d1.kemeny,
                            &d1.moments[v1],
                            d2.m,
                            &d2.kemeny,
                            &d2.moments[v2],
                        );
                        let direct = kernel.kemeny().expect("in range");
                        if formula != direct {
                            failures += 1;
                        }

                        // Two-part moment identity, queried from both sides.
                        let m2s = Rational128::from_usize(d2.m);
                        for v0 in 0..n1 {
                            checked += 1;
                            let formula = d1.moments[v0]
                                + d2.moments[v2]
                                + two * m2s * d1.resistance(n1, v0, v1);
                            let direct = kernel
                                .moment(spliced_label(v0, v1, v2, n2))
                                .expect("in range");
                            if formula != direct {
                                failures += 1;
                            }
                        }
                        let m1s = Rational128::from_usize(d1.m);
                        for w0 in 0..n2 {
                            checked += 1;
                            let formula = d2.moments[w0]
                                + d1.moments[v1]
                                + two * m1s * d2.resistance(n2, w0, v2);
                            let direct = kernel.moment(w0).expect("in range");
                            if formula != direct {
                                failures += 1;
                            }
                        }
                    }
                }
            }
            (checked, failures)
        })
        .collect();

    let mut out = CheckOutcome::new(format!("one_separation_exhaustive(n<={corpus_n})"));
    for (checked, failures) in results {
        out.checked += checked;
        out.failures += failures;
    }
    Ok(out)
}

fn random_chain(rng: &mut ChaCha8Rng, corpus: &[Graph], parts: usize) -> OneSumChain {
    let parts: Vec<ChainPart> = (0..parts)
        .map(|_| {
            let g = loop {
                let g = &corpus[rng.random_range(0..corpus.len())];
                // Single-vertex parts are legal but make degenerate chains
                // common; keep them rare.
                if g.n() > 1 || rng.random_bool(0.2) {
                    break g.clone();
                }
            };
            let attach_left = rng.random_range(0..g.n());
            let attach_right = rng.random_range(0..g.n());
            ChainPart {
                graph: g,
                attach_left,
                attach_right,
            }
        })
        .collect();
    OneSumChain::new(parts).expect("corpus parts are connected")
}

/// Random 3-5 part chains: the chain Kemeny formula, the chain moment
/// formula at every first-part vertex, and the same-vertex corollary, all
/// against direct computation on the assembled graph.
pub fn check_chain_formulas(chains: usize, corpus_n: usize, seed: u64) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(format!(
        "chain_formulas(chains={chains},n<={corpus_n},seed={seed})"
    ));
    let corpus = connected_corpus(corpus_n)?.graphs;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..chains {
        let n_parts = rng.random_range(3..=5);
        let chain = random_chain(&mut rng, &corpus, n_parts);
        let summed = chain_sum(&chain)?;
        if summed.graph.n() < 2 {
            continue;
        }
        let direct = kemeny_resistance::<Rational>(&summed.graph)?.kemeny;
        let formula = kemeny_chain::<Rational>(&chain)?;
        out.record(formula == direct);

        for v0 in 0..chain.parts()[0].graph.n() {
            let formula = moment_chain::<Rational>(&chain, v0)?;
            let direct = moment::<Rational>(&summed.graph, summed.maps[0][v0])?.value;
            out.record(formula == direct);
        }

        // Same-vertex star: glue every part at one shared composite vertex.
        let star_parts: Vec<(Graph, usize)> = chain
            .parts()
            .iter()
            .map(|p| (p.graph.clone(), p.attach_left))
            .collect();
        if star_parts.iter().map(|(g, _)| g.m()).sum::<usize>() > 0 {
            let star_formula = kemeny_star_of_parts::<Rational>(&star_parts)?;
            // Equivalent chain: both attachments coincide within each part.
            let star_chain = OneSumChain::new(
                star_parts
                    .iter()
                    .map(|(g, v)| ChainPart {
                        graph: g.clone(),
                        attach_left: *v,
                        attach_right: *v,
                    })
                    .collect(),
            )?;
            out.record(star_formula == kemeny_chain::<Rational>(&star_chain)?);
            let star_graph = chain_sum(&star_chain)?;
            if star_graph.graph.n() >= 2 {
                let star_direct = kemeny_resistance::<Rational>(&star_graph.graph)?.kemeny;
                out.record(star_formula == star_direct);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Braess decomposition
// ---------------------------------------------------------------------------

/// Exact formula-side Kemeny difference across a 1-separation.
#[allow(clippy::too_many_arguments)]
fn separated_delta_formula(
    m1: usize,
    gap1: Rational128, // mu(G1, v) - K(G1)
    m2: usize,
    l: usize,
    a: Rational128,
    b: Rational128,
    c: Rational128,
) -> Rational128 {
    let m1s = Rational128::from_usize(m1);
    let m2s = Rational128::from_usize(m2);
    let ls = Rational128::from_usize(l);
    let m = Rational128::from_usize(m1 + m2);
    let denom = m * Rational128::from_usize(m1 + m2 + l);
    let first = ls * m1s * gap1 / denom;
    let second = a * m1s * m1s + ((a + c) * m2s + b * ls) * m1s + c * (m2s * m2s + ls * m2s);
    first + second / denom
}

/// Second-term positivity (the sufficient condition).
fn separated_second_term(
    m1: usize,
    m2: usize,
    l: usize,
    a: Rational128,
    b: Rational128,
    c: Rational128,
) -> Rational128 {
    let m1s = Rational128::from_usize(m1);
    let m2s = Rational128::from_usize(m2);
    let ls = Rational128::from_usize(l);
    a * m1s * m1s + ((a + c) * m2s + b * ls) * m1s + c * (m2s * m2s + ls * m2s)
}

/// The decomposed difference against the direct difference over unordered
/// corpus pairs, every attachment, and every edge set of size 1..=max_set
/// inside either part; also confirms the sufficiency flag never produces a
/// false positive and that the first term is nonnegative.
pub fn check_braess_decomposition(corpus_n: usize, max_set: usize) -> Result<CheckOutcome> {
    let corpus = connected_corpus(corpus_n)?;
    let graphs = &corpus.graphs;
    let data: Vec<PartData> = graphs.par_iter().map(part_data).collect();

    // Edge sets per graph, canonical order, sizes 1..=max_set.
    let edge_sets: Vec<Vec<Vec<(usize, usize)>>> = graphs
        .iter()
        .map(|g| {
            let non_edges = g.non_edges();
            let mut sets = Vec::new();
            for size in 1..=max_set.min(non_edges.len()) {
                let mut indices: Vec<usize> = (0..size).collect();
                loop {
                    sets.push(indices.iter().map(|&i| non_edges[i]).collect());
                    if !crate::braess::next_combination(&mut indices, non_edges.len()) {
                        break;
                    }
                }
            }
            sets
        })
        .collect();

    // Augmented-part data per (graph, edge set): K and the moment at every
    // vertex of g + set.
    let augmented: Vec<Vec<(Rational128, Vec<Rational128>)>> = graphs
        .par_iter()
        .zip(edge_sets.par_iter())
        .map(|(g, sets)| {
            sets.iter()
                .map(|set| {
                    let mut kernel = int_kernel(g).expect("corpus graph");
                    for &(u, w) in set {
                        kernel = kernel.with_edge(u, w).expect("in range");
                    }
                    let k = kernel.kemeny().expect("in range");
                    let mus = (0..g.n())
                        .map(|v| kernel.moment(v).expect("in range"))
                        .collect();
                    (k, mus)
                })
                .collect()
        })
        .collect();

    let results: Vec<(u64, u64)> = (0..graphs.len())
        .into_par_iter()
        .map(|i1| {
            let mut checked = 0u64;
            let mut failures = 0u64;
            let g1 = &graphs[i1];
            let d1 = &data[i1];
            for i2 in i1..graphs.len() {
                let g2 = &graphs[i2];
                let d2 = &data[i2];
                if d1.m + d2.m == 0 {
                    continue;
                }
                let mut buf: Vec<(usize, usize)> = Vec::new();
                let mut mapped: Vec<(usize, usize)> = Vec::new();
                for v1 in 0..g1.n() {
                    for v2 in 0..g2.n() {
                        splice_edges(g1, v1, g2, v2, &mut buf);
                        if (i1 + i2 + v1 + v2) % 8192 == 0 {
                            assert_splice_matches_one_sum(g1, v1, g2, v2, &buf);
                        }
                        let kernel =
                            int_kernel_from_edges(g1.n() + g2.n() - 1, &buf).expect("in range");
                        let base = kernel.kemeny().expect("in range");

                        // Sets inside the second part: its labels are the
                        // composite's labels.
                        for (set_idx, set) in edge_sets[i2].iter().enumerate() {
                            // Adding edges at the shared vertex changes
                            // nothing structural; every non-edge of the part
                            // is a non-edge of the composite.
                            checked += 1;
                            let (k_hat, mus_hat) = &augmented[i2][set_idx];
                            let a = mus_hat[v2] - d2.moments[v2];
                            let b = *k_hat - d2.moments[v2];
                            let c = *k_hat - d2.kemeny;
                            let gap1 = d1.moments[v1] - d1.kemeny;
                            if gap1.is_negative() {
                                failures += 1;
                                continue;
                            }
                            let formula =
                                separated_delta_formula(d1.m, gap1, d2.m, set.len(), a, b, c);
                            let direct_after = kernel.kemeny_after_edges(set).expect("in range");
                            let direct_delta = direct_after - base;
                            let sufficient =
                                separated_second_term(d1.m, d2.m, set.len(), a, b, c).is_positive();
                            let ok = formula == direct_delta
                                && (!sufficient || direct_delta.is_positive());
                            if !ok {
                                failures += 1;
                            }
                        }

                        // Sets inside the first part, mapped into the
                        // composite; the separation roles swap.
                        for (set_idx, set) in edge_sets[i1].iter().enumerate() {
                            checked += 1;
                            let (k_hat, mus_hat) = &augmented[i1][set_idx];
                            let a = mus_hat[v1] - d1.moments[v1];
                            let b = *k_hat - d1.moments[v1];
                            let c = *k_hat - d1.kemeny;
                            let gap2 = d2.moments[v2] - d2.kemeny;
                            if gap2.is_negative() {
                                failures += 1;
                                continue;
                            }
                            let formula =
                                separated_delta_formula(d2.m, gap2, d1.m, set.len(), a, b, c);
                            mapped.clear();
                            mapped.extend(set.iter().map(|&(u, w)| {
                                (
                                    spliced_label(u, v1, v2, g2.n()),
                                    spliced_label(w, v1, v2, g2.n()),
                                )
                            }));
                            let direct_after =
                                kernel.kemeny_after_edges(&mapped).expect("in range");
                            let direct_delta = direct_after - base;
                            let sufficient =
                                separated_second_term(d2.m, d1.m, set.len(), a, b, c).is_positive();
                            let ok = formula == direct_delta
                                && (!sufficient || direct_delta.is_positive());
                            if !ok {
                                failures += 1;
                            }
                        }
                    }
                }
            }
            (checked, failures)
        })
        .collect();

    let mut out = CheckOutcome::new(format!(
        "braess_decomposition(n<={corpus_n},set<={max_set})"
    ));
    for (checked, failures) in results {
        out.checked += checked;
        out.failures += failures;
    }
    Ok(out)
}

/// The path-on-seven witness: the two-edge set raises Kemeny's constant
/// while each singleton lowers it.
pub fn check_p7_witness() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("p7_witness".to_string());
    let p7 = make_path(7)?;
    let pair = delta_kemeny_direct::<Rational>(&p7, &[(0, 2), (4, 6)])?;
    out.record(pair.is_positive());
    let left = delta_kemeny_direct::<Rational>(&p7, &[(0, 2)])?;
    out.record(left.is_negative());
    let right = delta_kemeny_direct::<Rational>(&p7, &[(4, 6)])?;
    out.record(right.is_negative());
    Ok(out)
}

/// Seeded random pendant-star configurations with `m1` above the threshold:
/// the added edges must always form a Braess set. Also pins the
/// l = 1 threshold to exactly 1.
pub fn check_pendant_star_bound(samples: usize, seed: u64) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(format!("pendant_star(samples={samples},seed={seed})"));
    out.record(pendant_star_bound(2, 1)?.bound == Rational::from_i64(1));
    out.record(pendant_star_bound(6, 1)?.bound == Rational::from_i64(1));
    let raw = crate::braess::raw_pendant_bound(10, 1)?;
    out.record(raw > Rational::from_i64(26) && raw < Rational::from_i64(27));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(samples);
    while cases.len() < samples {
        let k = rng.random_range(2..=5usize);
        let addable = k * (k - 1) / 2;
        let l = rng.random_range(1..=addable);
        let bound = pendant_star_bound(k, l)?.bound;
        let n1 = rng.random_range(2..=8usize);
        let p = rng.random_range(0.2..0.9);
        let g1 = random_connected_graph(&mut rng, n1, p);
        if Rational::from_usize(g1.m()) <= bound {
            continue;
        }
        let v = rng.random_range(0..g1.n());
        // Pendant-pendant pairs of the star part, in star labels 1..=k.
        let mut pairs: Vec<(usize, usize)> = (1..=k)
            .flat_map(|a| ((a + 1)..=k).map(move |b| (a, b)))
            .collect();
        for i in (1..pairs.len()).rev() {
            pairs.swap(i, rng.random_range(0..=i));
        }
        pairs.truncate(l);
        cases.push((g1, v, k, pairs));
    }

    let results: Vec<bool> = cases
        .par_iter()
        .map(|(g1, v, k, pairs)| {
            let star = make_star(k + 1).expect("k >= 2");
            let summed = one_sum(g1, *v, &star, 0).expect("connected");
            let delta = delta_kemeny_direct::<Rational>(&summed.graph, pairs).expect("valid set");
            delta.is_positive()
        })
        .collect();
    for ok in results {
        out.record(ok);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Pendant triplets
// ---------------------------------------------------------------------------

/// The four triplet formulas against direct computation on their explicit
/// graphs, the embedded gadget constants, the five comparison statements at
/// their stated edge thresholds, the S_4 counterexample, and the P_2
/// equality case, all over the corpus crossed with every attachment vertex.
pub fn check_pendant_triplets(corpus_n: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(format!("pendant_triplets(n<={corpus_n})"));

    // Embedded gadget constants.
    {
        let s4 = make_star(4)?;
        let tilde = s4.add_edges(&[(1, 2)])?;
        out.record(direct_kemeny(&tilde) == Rational128::from_ratio_i64(61, 24));
        out.record(
            int_kernel(&tilde).unwrap().moment(0).unwrap() == Rational128::from_ratio_i64(11, 3),
        );
        let hat = tilde.add_edges(&[(2, 3)])?;
        out.record(direct_kemeny(&hat) == Rational128::from_ratio_i64(47, 20));
        out.record(int_kernel(&hat).unwrap().moment(0).unwrap() == Rational128::from_i64(4));
        let star = hat.add_edges(&[(1, 3)])?;
        out.record(direct_kemeny(&star) == Rational128::from_ratio_i64(9, 4));
        out.record(
            int_kernel(&star).unwrap().moment(0).unwrap() == Rational128::from_ratio_i64(9, 2),
        );
    }

    // The S_4-center counterexample at m = 3: the hat-over-tilde comparison
    // quantity 24m(mu - K) + 2(4m^2 - 9m - 46) evaluates to -38.
    {
        let s4 = make_star(4)?;
        let kernel = int_kernel(&s4).unwrap();
        let m = Rational128::from_usize(s4.m());
        let gap = kernel.moment(0).unwrap() - kernel.kemeny().unwrap();
        let quantity = Rational128::from_i64(24) * m * gap
            + Rational128::from_i64(2)
                * (Rational128::from_i64(4) * m * m
                    - Rational128::from_i64(9) * m
                    - Rational128::from_i64(46));
        out.record(quantity == Rational128::from_i64(-38));
        let t = closed_forms::kemeny_triplet_variants::<Rational>(&s4, 0)?;
        out.record(t.hat < t.tilde);
    }

    // P_2 equality case.
    {
        let p2 = make_path(2)?;
        let t = closed_forms::kemeny_triplet_variants::<Rational>(&p2, 0)?;
        out.record(t.bar == t.star);
    }

    let corpus = connected_corpus(corpus_n)?;
    let results: Vec<(u64, u64)> = corpus
        .graphs
        .par_iter()
        .filter(|g| g.n() >= 2)
        .map(|g| {
            let mut checked = 0u64;
            let mut failures = 0u64;
            let kernel = int_kernel(g).expect("corpus graph");
            let kemeny = kernel.kemeny().expect("in range");
            let m = g.m();
            for v in 0..g.n() {
                let mu = kernel.moment(v).expect("in range");
                let formulas = closed_forms::triplet_kemeny_params(m, &kemeny, &mu);
                let graphs = closed_forms::triplet_graphs(g, v).expect("pendants attach");
                let directs = [
                    direct_kemeny(&graphs[0]),
                    direct_kemeny(&graphs[1]),
                    direct_kemeny(&graphs[2]),
                    direct_kemeny(&graphs[3]),
                ];
                checked += 4;
                if formulas.bar != directs[0] {
                    failures += 1;
                }
                if formulas.tilde != directs[1] {
                    failures += 1;
                }
                if formulas.hat != directs[2] {
                    failures += 1;
                }
                if formulas.star != directs[3] {
                    failures += 1;
                }

                // Comparison statements at their stated thresholds.
                checked += 1;
                let mut ok = true;
                if m >= 4 && formulas.hat <= formulas.tilde {
                    ok = false;
                }
                if m >= 2 && formulas.star <= formulas.hat {
                    ok = false;
                }
                if m == 1 && formulas.star >= formulas.hat {
                    ok = false;
                }
                if m >= 4 && formulas.star <= formulas.tilde {
                    ok = false;
                }
                if formulas.hat <= formulas.bar {
                    ok = false;
                }
                if formulas.star < formulas.bar {
                    ok = false;
                }
                // Equality star = bar exactly when the base graph is P_2.
                let is_p2 = g.n() == 2;
                if (formulas.star == formulas.bar) != is_p2 {
                    ok = false;
                }
                if !ok {
                    failures += 1;
                }
            }
            (checked, failures)
        })
        .collect();
    for (checked, failures) in results {
        out.checked += checked;
        out.failures += failures;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

/// Path extremality for Kemeny's constant and the endpoint moment over all
/// labelled trees, 2..=n_max.
pub fn check_path_extremality(n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(format!("path_extremality(n<={n_max})"));
    for n in 2..=n_max {
        out.record(crate::enumeration::verify_path_max_kemeny(n)?);
        out.record(crate::enumeration::verify_path_max_moment(n)?);
    }
    Ok(out)
}

/// The complete graph minimizes Kemeny's constant over all connected graphs
/// on n vertices, exhaustively for 2 <= n <= max_n (max 7). The n = 7 level
/// streams its two million labelled graphs rather than storing them.
pub fn check_complete_graph_minimality(max_n: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(format!("complete_minimality(n<={max_n})"));
    if max_n > 7 {
        return Err(crate::Error::CapExceeded(format!(
            "complete-minimality sweep capped at n = 7, got {max_n}"
        )));
    }
    for n in 2..=max_n {
        let complete = direct_kemeny(&make_complete(n)?);
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let masks = 1u32 << pairs.len();
        let chunk = 1u32 << 14;
        let violations: u64 = (0..masks.div_ceil(chunk))
            .into_par_iter()
            .map(|block| {
                let mut bad = 0u64;
                let mut edges: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
                for mask in (block * chunk)..((block + 1) * chunk).min(masks) {
                    // Connectivity over adjacency bitsets before any algebra.
                    let mut adj = [0u8; 7];
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
                    edges.clear();
                    edges.extend(
                        pairs
                            .iter()
                            .enumerate()
                            .filter(|(bit, _)| mask & (1 << bit) != 0)
                            .map(|(_, &e)| e),
                    );
                    let kemeny = int_kernel_from_edges(n, &edges)
                        .and_then(|k| k.kemeny())
                        .expect("connected graph in kernel range");
                    if kemeny < complete {
                        bad += 1;
                    }
                }
                bad
            })
            .sum();
        out.checked += connected_graph_count_oracle(n);
        out.failures += violations;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Caps shared by the CLI verify suites.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerifyCaps {
    pub max_n: usize,
    pub seed: u64,
    pub chains: usize,
    pub samples: usize,
    pub max_set_size: usize,
}

impl Default for VerifyCaps {
    fn default() -> Self {
        VerifyCaps {
            max_n: 5,
            seed: 7,
            chains: 25,
            samples: 50,
            max_set_size: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ClosedForms,
    Separation,
    Trees,
    Braess,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "closed-forms" => Ok(Suite::ClosedForms),
            "separation" => Ok(Suite::Separation),
            "trees" => Ok(Suite::Trees),
            "braess" => Ok(Suite::Braess),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite '{other}' (expected closed-forms, separation, trees, braess, all)"
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub caps: VerifyCaps,
    pub checks: Vec<CheckOutcome>,
    pub ok: bool,
}

/// Runs one suite at the given caps.
pub fn run_suite(suite: Suite, caps: VerifyCaps) -> Result<SuiteReport> {
    let corpus_n = caps.max_n.clamp(2, crate::enumeration::CORPUS_CAP);
    let tree_n = caps.max_n.clamp(2, 8);
    let mut checks = Vec::new();
    let closed_forms = |checks: &mut Vec<CheckOutcome>| -> Result<()> {
        checks.push(check_closed_form_families(caps.max_n.max(8)));
        checks.push(check_barbell_theorem(4.max(caps.max_n.min(6)), 4));
        checks.push(check_barbell_corollaries(9 + 3 * caps.max_n.min(7)));
        checks.push(check_pendant_triplets(corpus_n)?);
        Ok(())
    };
    let separation = |checks: &mut Vec<CheckOutcome>| -> Result<()> {
        checks.push(check_kernel_cross_validation(corpus_n.min(5))?);
        checks.push(check_one_separation_exhaustive(corpus_n.min(4))?);
        checks.push(check_chain_formulas(
            caps.chains,
            corpus_n.min(5),
            caps.seed,
        )?);
        Ok(())
    };
    let trees = |checks: &mut Vec<CheckOutcome>| -> Result<()> {
        checks.push(check_path_extremality(tree_n.min(7))?);
        checks.push(check_oracle_agreement_trees(tree_n.min(6))?);
        checks.push(check_oracle_agreement_random(
            caps.samples,
            caps.max_n.clamp(8, 12),
            caps.seed,
        )?);
        Ok(())
    };
    let braess = |checks: &mut Vec<CheckOutcome>| -> Result<()> {
        checks.push(check_p7_witness()?);
        checks.push(check_braess_decomposition(
            corpus_n.min(4),
            caps.max_set_size,
        )?);
        checks.push(check_pendant_star_bound(caps.samples, caps.seed)?);
        checks.push(check_complete_graph_minimality(corpus_n)?);
        Ok(())
    };
    match suite {
        Suite::ClosedForms => closed_forms(&mut checks)?,
        Suite::Separation => separation(&mut checks)?,
        Suite::Trees => trees(&mut checks)?,
        Suite::Braess => braess(&mut checks)?,
        Suite::All => {
            closed_forms(&mut checks)?;
            separation(&mut checks)?;
            trees(&mut checks)?;
            braess(&mut checks)?;
        }
    }
    let ok = checks.iter().all(|c| c.ok());
    Ok(SuiteReport {
        suite,
        caps,
        checks,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_runs_clean() {
        let caps = VerifyCaps {
            max_n: 3,
            seed: 7,
            chains: 4,
            samples: 5,
            max_set_size: 1,
        };
        let report = run_suite(Suite::ClosedForms, caps).unwrap();
        assert!(report.ok, "{:?}", report.checks);
    }

    #[test]
    fn suite_parsing() {
        assert_eq!("braess".parse::<Suite>().unwrap(), Suite::Braess);
        assert!("bogus".parse::<Suite>().is_err());
    }
}

#[cfg(test)]
mod timing {
    use super::*;
    use std::time::Instant;

    #[test]
    #[ignore]
    fn timing_probe() {
        let t = Instant::now();
        let out = check_one_separation_exhaustive(4).unwrap();
        println!(
            "one_sep(4): {:?} checked={} fail={}",
            t.elapsed(),
            out.checked,
            out.failures
        );

        let t = Instant::now();
        let out = check_braess_decomposition(4, 2).unwrap();
        println!(
            "braess(4,2): {:?} checked={} fail={}",
            t.elapsed(),
            out.checked,
            out.failures
        );

        let t = Instant::now();
        let out = check_oracle_agreement_trees(7).unwrap();
        println!(
            "trees(7): {:?} checked={} fail={}",
            t.elapsed(),
            out.checked,
            out.failures
        );

        let t = Instant::now();
        let out = check_path_extremality(7).unwrap();
        println!(
            "pathmax(7): {:?} checked={} fail={}",
            t.elapsed(),
            out.checked,
            out.failures
        );

        let t = Instant::now();
        let out = check_pendant_triplets(5).unwrap();
        println!(
            "triplets(5): {:?} checked={} fail={}",
            t.elapsed(),
            out.checked,
            out.failures
        );

        let t = Instant::now();
        let out = check_kernel_cross_validation(5).unwrap();
        println!(
            "crossval(5): {:?} checked={} fail={}",
            t.elapsed(),
            out.checked,
            out.failures
        );
    }
}

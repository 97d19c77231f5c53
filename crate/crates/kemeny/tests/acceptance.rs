//! Acceptance suite. Each test pins one criterion at its stated scale and
//! tolerance (every equality here is exact), prints one pass/fail line, and
//! asserts the stated runtime budget where one exists.

use std::time::{Duration, Instant};

use kemeny::braess::{delta_kemeny_direct, pendant_star_bound, raw_pendant_bound};
use kemeny::constant::kemeny_resistance;
use kemeny::families::make_path;
use kemeny::scalar::Scalar;
use kemeny::verify::*;
use kemeny::Rational;

fn report(label: &str, ok: bool, detail: &str, elapsed: Duration) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("{label}: {status} ({detail}, elapsed {elapsed:.2?})");
    assert!(ok, "{label} failed: {detail}");
}

fn outcome_detail(outcomes: &[&CheckOutcome]) -> String {
    outcomes
        .iter()
        .map(|o| format!("{} checked={} failures={}", o.name, o.checked, o.failures))
        .collect::<Vec<_>>()
        .join("; ")
}

#[test]
fn criterion_1_closed_form_fidelity() {
    let start = Instant::now();
    let out = check_closed_form_families(20);
    let elapsed = start.elapsed();
    report(
        "criterion 1 (closed-form fidelity, n <= 20)",
        out.ok() && elapsed < Duration::from_secs(10),
        &outcome_detail(&[&out]),
        elapsed,
    );
}

#[test]
fn criterion_2_oracle_agreement() {
    let start = Instant::now();
    let trees = check_oracle_agreement_trees(8).unwrap();
    let random = check_oracle_agreement_random(200, 12, 7).unwrap();
    let elapsed = start.elapsed();
    report(
        "criterion 2 (oracle agreement: all trees n <= 8, 200 random n <= 12)",
        trees.ok() && random.ok() && elapsed < Duration::from_secs(120),
        &outcome_detail(&[&trees, &random]),
        elapsed,
    );
}

#[test]
fn criterion_3_one_separation_formulas() {
    let start = Instant::now();
    // Pin the integer sweep kernel to the rational pseudoinverse route over
    // the same corpus before trusting it as the direct side.
    let anchor = check_kernel_cross_validation(5).unwrap();
    let exhaustive = check_one_separation_exhaustive(5).unwrap();
    let chains = check_chain_formulas(100, 5, 7).unwrap();
    let elapsed = start.elapsed();
    report(
        "criterion 3 (1-separation formulas, exhaustive pairs n <= 5 + 100 chains)",
        anchor.ok() && exhaustive.ok() && chains.ok() && elapsed < Duration::from_secs(300),
        &outcome_detail(&[&anchor, &exhaustive, &chains]),
        elapsed,
    );
}

#[test]
fn criterion_4_barbell() {
    let start = Instant::now();
    let theorem = check_barbell_theorem(6, 5);
    let corollaries = check_barbell_corollaries(30);
    let elapsed = start.elapsed();
    report(
        "criterion 4 (barbell theorem 2<=a<=6, 1<=b,c<=5; corollaries n in 9..=30)",
        theorem.ok() && corollaries.ok() && elapsed < Duration::from_secs(60),
        &outcome_detail(&[&theorem, &corollaries]),
        elapsed,
    );
}

#[test]
fn criterion_5_tree_extremality() {
    let start = Instant::now();
    let out = check_path_extremality(8).unwrap();
    let elapsed = start.elapsed();
    report(
        "criterion 5 (path maximizes Kemeny and endpoint moment, all trees n <= 8)",
        out.ok() && elapsed < Duration::from_secs(600),
        &outcome_detail(&[&out]),
        elapsed,
    );
}

#[test]
fn criterion_6_braess_decomposition() {
    let start = Instant::now();
    let out = check_braess_decomposition(5, 2).unwrap();
    let elapsed = start.elapsed();
    report(
        "criterion 6 (Kemeny difference decomposition + sufficiency, pairs n <= 5, sets <= 2)",
        out.ok(),
        &outcome_detail(&[&out]),
        elapsed,
    );
}

#[test]
fn criterion_7_p7_witness() {
    let start = Instant::now();
    let out = check_p7_witness().unwrap();
    let elapsed = start.elapsed();

    // The exact values, pinned: the pair is Braess, each singleton is not.
    let p7 = make_path(7).unwrap();
    let pair = delta_kemeny_direct::<Rational>(&p7, &[(0, 2), (4, 6)]).unwrap();
    let left = delta_kemeny_direct::<Rational>(&p7, &[(0, 2)]).unwrap();
    let right = delta_kemeny_direct::<Rational>(&p7, &[(4, 6)]).unwrap();
    let zero = Rational::from_i64(0);
    report(
        "criterion 7 (P_7 witness: {(0,2),(4,6)} Braess, singletons not)",
        out.ok() && pair > zero && left < zero && right < zero,
        &format!("delta(pair) = {pair}, delta(0-2) = {left}, delta(4-6) = {right}"),
        elapsed,
    );
}

#[test]
fn criterion_8_pendant_star() {
    let start = Instant::now();
    let out = check_pendant_star_bound(200, 7).unwrap();
    let bound_l1 = pendant_star_bound(4, 1).unwrap();
    let raw = raw_pendant_bound(10, 1).unwrap();
    let elapsed = start.elapsed();
    report(
        "criterion 8 (pendant-star threshold: l=1 bound is 1; 200 samples above bound are Braess)",
        out.ok()
            && bound_l1.bound == Rational::from_i64(1)
            && bound_l1.exact
            && raw > Rational::from_i64(26)
            && raw < Rational::from_i64(27),
        &outcome_detail(&[&out]),
        elapsed,
    );
}

#[test]
fn criterion_9_pendant_triplets() {
    let start = Instant::now();
    let out = check_pendant_triplets(6).unwrap();
    let elapsed = start.elapsed();
    report(
        "criterion 9 (triplet formulas, comparisons, S_4 counterexample, P_2 equality; corpus n <= 6)",
        out.ok(),
        &outcome_detail(&[&out]),
        elapsed,
    );
}

/// In-process half of criterion 10; the CLI integration test repeats this
/// byte-for-byte through the binary.
#[test]
fn criterion_10_determinism_in_process() {
    let start = Instant::now();
    let caps = VerifyCaps {
        max_n: 4,
        seed: 7,
        chains: 10,
        samples: 20,
        max_set_size: 2,
    };
    let first = serde_json::to_string(&run_suite(Suite::All, caps).unwrap()).unwrap();
    let second = serde_json::to_string(&run_suite(Suite::All, caps).unwrap()).unwrap();
    let elapsed = start.elapsed();
    report(
        "criterion 10 (determinism: identical seeds give byte-identical reports)",
        first == second && first.contains("\"ok\":true"),
        &format!("report bytes = {}", first.len()),
        elapsed,
    );
}

/// Smaller full-precision counterpart of criterion 2: both routes at
/// arbitrary precision on every tree with n <= 6.
#[test]
fn oracle_agreement_bigrational_small_trees() {
    use kemeny::constant::kemeny_hitting_oracle;
    use kemeny::enumeration::all_trees;
    for n in 2..=6usize {
        for tree in all_trees(n).unwrap() {
            let a = kemeny_resistance::<Rational>(&tree).unwrap().kemeny;
            let b = kemeny_hitting_oracle::<Rational>(&tree).unwrap().kemeny;
            assert_eq!(a, b);
        }
    }
}

/// Exhaustive minimality of the complete graph's Kemeny constant over every
/// labelled connected graph through n = 7 (about two million graphs at the
/// top level).
#[test]
fn invariant_complete_graph_minimality_n7() {
    let start = Instant::now();
    let out = check_complete_graph_minimality(7).unwrap();
    let elapsed = start.elapsed();
    report(
        "invariant (K_n minimizes Kemeny over all connected graphs, n <= 7)",
        out.ok(),
        &outcome_detail(&[&out]),
        elapsed,
    );
}

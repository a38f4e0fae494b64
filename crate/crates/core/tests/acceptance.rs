//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`). Every bound
//! is pinned here; the suites enumerate all labeled posets up to it.

use powerspace_core::ndsem::{analyze, parse_program, render_verdict, AbstractDomain, Mode};
use powerspace_core::suites::{
    run_all, suite_analyzer, suite_classical_equivalence, suite_commutativity, suite_convergence,
    suite_semilattice_laws, suite_topology_coincidence, suite_universal_property, summary_text,
    SuiteOutcome,
};

fn gate(criterion: &str, outcome: &SuiteOutcome) {
    let verdict = if outcome.passed() { "PASS" } else { "FAIL" };
    println!(
        "{criterion}: {verdict} — {} instances, {} failures",
        outcome.instances,
        outcome.failures.len()
    );
    for f in outcome.failures.iter().take(5) {
        println!("  witness: {f}");
    }
    assert!(
        outcome.passed(),
        "{criterion} failed with {} witnesses",
        outcome.failures.len()
    );
}

/// 1. Every powerspace over every labeled poset on ≤ 4 elements satisfies the
///    semilattice laws of its kind, zero failures.
#[test]
fn criterion_1_semilattice_laws() {
    gate(
        "criterion 1 (semilattice laws, n ≤ 4)",
        &suite_semilattice_laws(4).unwrap(),
    );
}

/// 2. For every base ≤ 3, every matching-kind semilattice space ≤ 3 and every
///    monotone map, exactly one homomorphism factors it through the unit, and it
///    is the generator fold. Exhaustive search as oracle.
#[test]
fn criterion_2_universal_property() {
    gate(
        "criterion 2 (universal property, n ≤ 3)",
        &suite_universal_property(3).unwrap(),
    );
}

/// 3. The literal ⇒_U search equals the intersection criterion on every
///    directed family over posets ≤ 4, and each ⇒ relation equals the
///    finite-collapse oracle (target ≤ maximum) on posets ≤ 3.
#[test]
fn criterion_3_convergence() {
    gate(
        "criterion 3 (convergence criteria, n ≤ 4 / ≤ 3)",
        &suite_convergence(4, 3).unwrap(),
    );
}

/// 4. Convergence-open sets are exactly the upper sets of each powerspace
///    order, and the recovered specialization order is the constructed order,
///    for bases ≤ 3.
#[test]
fn criterion_4_topology_coincidence() {
    gate(
        "criterion 4 (topology coincidence, n ≤ 3)",
        &suite_topology_coincidence(3).unwrap(),
    );
}

/// 5. Order isomorphism with the classical carriers (closed sets, saturated
///    sets, lenses under Egli-Milner) and Vietoris = Scott on them, for ≤ 4.
///    The infinite separating examples are documentation only; nothing here
///    claims them.
#[test]
fn criterion_5_classical_equivalence() {
    gate(
        "criterion 5 (classical equivalence, n ≤ 4)",
        &suite_classical_equivalence(4).unwrap(),
    );
}

/// 6. The commutativity isomorphism is a bijective join-and-meet-preserving
///    order isomorphism tracking ↑(↓x) ↦ ↓(↑x), and both composites satisfy
///    both distributive laws, for bases ≤ 3.
#[test]
fn criterion_6_commutativity() {
    gate(
        "criterion 6 (commutativity iso, n ≤ 3)",
        &suite_commutativity(3).unwrap(),
    );
}

/// 7. Analyzer smoke over the sign domain plus the generator-lift vs
///    set-image oracle for every jointly monotone table on carriers ≤ 3.
#[test]
fn criterion_7_analyzer() {
    gate(
        "criterion 7 (analyzer smoke + lift oracle, |D| ≤ 3)",
        &suite_analyzer(3).unwrap(),
    );

    // the rendered verdicts pinned exactly
    let sign = AbstractDomain::sign();
    let e = parse_program("choice(-1, 2)").unwrap();
    assert_eq!(
        render_verdict(&sign, &analyze(&e, &sign, Mode::May).unwrap()),
        "may: {Neg, Pos}"
    );
    assert_eq!(
        render_verdict(&sign, &analyze(&e, &sign, Mode::Must).unwrap()),
        "must: at least one of {Neg, Pos}"
    );
    let e = parse_program("choice(1, 2)").unwrap();
    assert_eq!(
        render_verdict(&sign, &analyze(&e, &sign, Mode::Must).unwrap()),
        "must: at least Pos"
    );
}

/// 8. Two consecutive full sweep runs produce byte-identical summaries.
#[test]
fn criterion_8_determinism() {
    let first = summary_text(&run_all(4).unwrap());
    let second = summary_text(&run_all(4).unwrap());
    let verdict = if first == second && first.ends_with("all suites pass\n") {
        "PASS"
    } else {
        "FAIL"
    };
    println!("criterion 8 (determinism): {verdict}");
    assert_eq!(
        first, second,
        "sweep summaries differ between consecutive runs"
    );
    assert!(
        first.ends_with("all suites pass\n"),
        "sweep reported failures:\n{first}"
    );
}

//! Acceptance suite: one test per criterion; the cargo harness prints one
//! pass/fail line per criterion, and each test asserts its stated runtime
//! budget where one is given.

use semipic_cli::suites;
use std::time::{Duration, Instant};

fn run(name: &str, budget: Option<Duration>, f: impl FnOnce() -> semipic::Result<Vec<suites::Check>>) {
    let start = Instant::now();
    let checks = f().unwrap_or_else(|e| panic!("{} errored: {}", name, e));
    let elapsed = start.elapsed();
    for c in &checks {
        println!(
            "  [{}] {}: {}",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.details
        );
    }
    let all = checks.iter().all(|c| c.passed);
    println!(
        "{}: {} in {:.2?}",
        name,
        if all { "PASS" } else { "FAIL" },
        elapsed
    );
    assert!(all, "{} has failing checks", name);
    if let Some(b) = budget {
        assert!(
            elapsed < b,
            "{} took {:.2?}, budget {:.2?}",
            name,
            elapsed,
            b
        );
    }
}

#[test]
fn criterion_01_indecomposable_counts() {
    run(
        "criterion 1 (indecomposable counts)",
        Some(Duration::from_secs(1)),
        suites::suite_counts,
    );
}

#[test]
fn criterion_02_projective_vectors() {
    run(
        "criterion 2 (projective vectors and null data)",
        None,
        suites::suite_example_vectors,
    );
}

#[test]
fn criterion_03_a2_picture() {
    run(
        "criterion 3 (A2-tilde: 6 walls, 6 chambers)",
        Some(Duration::from_secs(1)),
        suites::suite_a2_picture,
    );
}

#[test]
fn criterion_04_thm_b() {
    // budget: under 10 seconds per model
    run(
        "criterion 4 (co-amalgamation isomorphism)",
        Some(Duration::from_secs(30)),
        suites::suite_thm_b,
    );
}

#[test]
fn criterion_05_thm_a() {
    run(
        "criterion 5 (infinitesimal vs v-perp oracles)",
        Some(Duration::from_secs(30)),
        || suites::suite_thm_a(0, &[2, 3, 4]),
    );
}

#[test]
fn criterion_06_fan() {
    run(
        "criterion 6 (projectively closed fan axioms)",
        Some(Duration::from_secs(60)),
        suites::suite_fan,
    );
}

#[test]
fn criterion_07_thm_c() {
    run(
        "criterion 7 (cluster-chamber bijection)",
        Some(Duration::from_secs(60)),
        suites::suite_thm_c,
    );
}

#[test]
fn criterion_08_wall_labels() {
    run(
        "criterion 8 (imaginary-cluster wall labels)",
        None,
        suites::suite_wall_labels,
    );
}

#[test]
fn criterion_09_mutation_figures() {
    run(
        "criterion 9 (mutation figure golden data)",
        Some(Duration::from_secs(30)),
        suites::suite_figures,
    );
}

#[test]
fn criterion_10_null_transport() {
    run(
        "criterion 10 (null-data transport search)",
        None,
        suites::suite_null_transport,
    );
}

#[test]
fn criterion_11_dual_enumeration() {
    run(
        "criterion 11 (dual support-tilting enumeration)",
        None,
        suites::suite_dual_enumeration,
    );
}

#[test]
fn criterion_12_property_suites() {
    run(
        "criterion 12 (seeded property suites)",
        None,
        || suites::suite_properties(0),
    );
}

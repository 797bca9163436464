//! End-to-end acceptance: one test per criterion at full scale.  The
//! harness prints one pass/fail line per criterion; the captured body
//! lists every check with its verdict and timing for diagnosis.

use homalg::verify::{self, SuiteParams};
use std::time::Instant;

fn run(criterion: usize, suite: &str, params: &SuiteParams) {
    let start = Instant::now();
    let rep = verify::run_suite(suite, params).expect("suite runs to completion");
    let verdict = if rep.ok() { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion} ({suite}): {verdict} [{} checks, {:.1}s]",
        rep.checks.len(),
        start.elapsed().as_secs_f64()
    );
    for c in &rep.checks {
        println!("  [{}] {} — {}", if c.pass { "ok" } else { "FAILED" }, c.name, c.detail);
    }
    assert!(rep.ok(), "criterion {criterion} failed: {rep:#?}");
}

fn at(trials: usize) -> SuiteParams {
    SuiteParams { trials: Some(trials), ..SuiteParams::default() }
}

#[test]
fn criterion_1_dold_kan_round_trip() {
    run(1, "dold-kan-roundtrip", &at(50));
}

#[test]
fn criterion_2_monoidal_comparison() {
    run(2, "monoidal", &at(50));
}

#[test]
fn criterion_3_induced_coalgebras() {
    run(3, "induced-coalgebras", &at(50));
}

#[test]
fn criterion_4_interchange_square_and_counterexample() {
    run(4, "interchange-square", &at(20));
}

#[test]
fn criterion_5_lifting_characterizations() {
    run(5, "lifting-characterizations", &at(100));
}

#[test]
fn criterion_6_acyclic_cofree_product() {
    run(6, "acyclic-cofree-product", &at(20));
}

#[test]
fn criterion_7_factorization() {
    run(7, "factorization", &at(20));
}

#[test]
fn criterion_8_word_comparison() {
    run(8, "word-comparison", &at(30));
}

#[test]
fn criterion_9_kunneth_dimensions() {
    run(9, "kunneth", &at(50));
}

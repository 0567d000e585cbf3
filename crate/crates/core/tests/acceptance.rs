//! Acceptance suite: one test per criterion, each at its stated scale, all
//! exact (tolerance zero). Run with `cargo test --test acceptance`; add
//! `-- --nocapture` to see one pass/fail line per criterion.

use brion_core::checks;
use brion_core::hopf::CheckReport;

fn settle(number: u32, report: brion_core::Result<CheckReport>) {
    let report = report.expect("check must run to completion");
    println!(
        "criterion {number:02} [{}]: {} ({} cases)",
        report.name,
        if report.passed() { "PASS" } else { "FAIL" },
        report.cases
    );
    if !report.passed() {
        for failure in report.failures.iter().take(20) {
            eprintln!("  {failure}");
        }
    }
    assert!(report.passed(), "criterion {number} failed: {}", report.name);
}

#[test]
fn criterion_01_oracle_formula_brion_equality() {
    settle(1, checks::check_oracle_brion_equality(5));
}

#[test]
fn criterion_02_chains_theorem() {
    settle(2, checks::check_chains_theorem(5, 8));
}

#[test]
fn criterion_03_rbt_coefficient_theorem() {
    settle(3, checks::check_rbt_coefficients(8));
}

#[test]
fn criterion_04_catalan_identity_and_parity() {
    settle(4, checks::check_catalan(10));
}

#[test]
fn criterion_05_orbit_theorem() {
    settle(5, checks::check_orbit_theorem(7, 5));
}

#[test]
fn criterion_06_hopf_axioms() {
    settle(6, checks::check_hopf_axioms(4));
}

#[test]
fn criterion_07_brion_morphism() {
    settle(7, checks::check_brion_morphism_all(4));
}

#[test]
fn criterion_08_dual_products() {
    settle(8, checks::check_dual_products(4));
}

#[test]
fn criterion_09_lie_axioms() {
    settle(9, checks::check_lie_axioms(4));
}

#[test]
fn criterion_10_witt_identification() {
    settle(10, checks::check_witt(6, 5));
}

#[test]
fn criterion_11_primitives() {
    settle(11, checks::check_primitives(4));
}

#[test]
fn criterion_12_dual_brion_adjointness() {
    settle(12, checks::check_dual_brion_adjointness(5, 5));
}

#[test]
fn criterion_13_loday_invariant() {
    settle(13, checks::check_loday(8));
}

#[test]
fn catalan_reference_values() {
    // C_10 = 16796 is the value the identity must reproduce at the bound.
    assert_eq!(brion_core::combinat::catalan(10), 16796);
    assert_eq!(brion_core::combinat::catalan(7), 429);
}

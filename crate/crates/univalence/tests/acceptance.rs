//! Acceptance gate: every validation-suite row must pass.
//!
//! Run with `cargo test -p univalence --test acceptance -- --nocapture` to
//! see the per-criterion table.

use univalence::suite;

#[test]
fn acceptance_suite() {
    let rows = suite::run_all();
    let mut failed = Vec::new();
    for row in &rows {
        let verdict = if row.passed { "PASS" } else { "FAIL" };
        println!(
            "[{verdict}] {:<28} {:>7} ms  {}",
            row.name, row.millis, row.detail
        );
        if !row.passed {
            failed.push(row.name.clone());
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

//! Full acceptance gate: every criterion at full Monte Carlo budget,
//! one pass/fail line each.

use degreeld::verify::run_all;

#[test]
fn acceptance_criteria() {
    let results = run_all(false);
    let mut all_passed = true;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:2}: {} ({})", r.id, r.name, r.detail);
        all_passed &= r.passed;
    }
    assert!(all_passed, "at least one acceptance criterion failed");
}

//! The acceptance suite: every criterion runs at its pinned tolerance and
//! prints one pass/fail line.

use sicrps::acceptance;

#[test]
fn acceptance_criteria() {
    let outcomes = acceptance::run_all();
    let mut all_passed = true;
    for outcome in &outcomes {
        println!("{}", outcome.summary_line());
        all_passed &= outcome.passed;
    }
    assert!(all_passed, "one or more acceptance criteria failed; see the lines above");
}

//! One PASS/FAIL line per acceptance criterion (fast suite). Runs without
//! the libtest harness so the lines are never captured.
//!
//! Tolerances: every criterion is an exact set or count comparison.
//! Fuzz criteria use 1000 seeded cases per property.

use std::process::ExitCode;

use polyslice::verify::{run_criterion, Suite, CRITERIA};
use polyslice::Parallelism;

fn main() -> ExitCode {
    let par = Parallelism::available();
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let r = run_criterion(id, Suite::Fast, par);
        println!("{r}");
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: {} passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}

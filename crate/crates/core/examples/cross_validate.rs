//! Runs the decision procedure and the exhaustive oracle on every ordered
//! pair of instances up to a given chain size and prints a summary.
//!
//!     cargo run --release --example cross_validate -- 5

use std::time::Instant;

use ordsemi::decision::{CrossOptions, Family};
use ordsemi::cross_validate;

fn main() {
    let max_size: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let family = Family::All { min_size: 1, max_size, min_rank: 2 };
    let start = Instant::now();
    let report = cross_validate(&family, CrossOptions::default()).expect("instances within cap");
    println!(
        "n ≤ {max_size}: {} instances, {} ordered pairs, {} isomorphic",
        report.instances, report.pairs, report.isomorphic_pairs
    );
    println!(
        "mismatches {}  violations {}  budget exceeded {}  ({:.2?})",
        report.mismatches,
        report.violations,
        report.budget_exceeded,
        start.elapsed()
    );
    for o in &report.outcomes {
        println!("{} | {}: {:?} vs {:?} {:?}", o.a, o.b, o.decision, o.oracle, o.violations);
    }
}

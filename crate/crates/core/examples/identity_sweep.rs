//! Checks every inclusion/intersection matrix identity on all parameter
//! tuples up to a ground-set bound and summarizes the outcome per identity.
//!
//!     cargo run --release --example identity_sweep -- 8

use std::collections::BTreeMap;
use std::time::Instant;

use twlab::intersection::{sweep_identities, Identity, Verdict};

fn main() {
    let v_max: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("v_max must be a number"))
        .unwrap_or(6);
    let start = Instant::now();
    let records = sweep_identities(v_max, &Identity::ALL);

    let mut tally: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in &records {
        let entry = tally.entry(r.identity.name()).or_default();
        entry.0 += 1;
        if !r.verdict.passed() {
            entry.1 += 1;
        }
    }
    println!("{:<22} {:>8} {:>8}", "identity", "checked", "failed");
    for (name, (checked, failed)) in &tally {
        println!("{name:<22} {checked:>8} {failed:>8}");
    }

    if let Some(r) = records.iter().find(|r| r.is_erratum()) {
        if let Verdict::Fail(w) = &r.verdict {
            println!(
                "\nfirst erratum witness: {} at {:?}: cell ({}, {}) lhs = {}, rhs = {}",
                r.identity, r.params, w.row, w.col, w.lhs, w.rhs
            );
        }
    }
    let defects = records.iter().filter(|r| r.is_failure()).count();
    println!(
        "\n{} instances, {} defects, {:.2?}",
        records.len(),
        defects,
        start.elapsed()
    );
}

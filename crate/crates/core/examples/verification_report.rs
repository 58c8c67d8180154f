//! Runs every check on one instance and prints the JSON report.
//!
//!     cargo run --release --example verification_report -- 6 2

use twlab::graph::{GeometryParams, Mode};
use twlab::report::{build_report, ReportOptions, Suite};
use twlab::terwilliger::AlgebraInstance;

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<usize>().expect("arguments are n and m"));
    let n = args.next().unwrap_or(6);
    let m = args.next().unwrap_or(2);
    let inst = AlgebraInstance::new(GeometryParams::new(n, m), Mode::Exploratory)
        .expect("valid parameters");
    let report = build_report(
        &inst,
        ReportOptions {
            suite: Suite::Algebra,
            timings: true,
        },
    )
    .expect("report");
    print!("{}", report.to_json());
    let failures = report.checks.failures();
    if !failures.is_empty() {
        eprintln!("failed: {}", failures.join(", "));
        std::process::exit(1);
    }
}

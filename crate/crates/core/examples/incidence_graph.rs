//! Builds `J(n, m, m+1)`, checks its distance partition against BFS, and
//! prints the Kronecker form found for every nonzero block of the adjacency
//! matrix.
//!
//!     cargo run --example incidence_graph -- 7 2

use twlab::graph::{
    verify_block_structure, verify_distance_partition, BlockForm, GeometryParams, IncidenceGraph,
    Mode,
};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<usize>().expect("arguments are n and m"));
    let n = args.next().unwrap_or(7);
    let m = args.next().unwrap_or(2);
    let graph =
        IncidenceGraph::build(GeometryParams::new(n, m), Mode::Strict).expect("needs n >= 2m+1");

    let p = &graph.partition;
    println!(
        "J({n},{m},{}): {} vertices, {} edges, base x = {}",
        m + 1,
        p.vertices().len(),
        graph.edges().len(),
        p.base()
    );
    for c in p.classes() {
        println!(
            "  class {}: {:>4} vertices of size {}, |z ∩ x| = {}, |z \\ x| = {}",
            c.distance, c.len, c.vertex_size, c.inner, c.outer
        );
    }

    let dist = verify_distance_partition(&graph);
    println!(
        "BFS agrees on {}/{} vertices, eccentricity {} (expected {})",
        dist.vertices - dist.mismatches,
        dist.vertices,
        dist.diameter,
        dist.expected_diameter
    );

    let blocks = verify_block_structure(&graph);
    for b in blocks.iter().filter(|b| b.form != BlockForm::Zero) {
        println!(
            "  A[{},{}] {:?}: {}",
            b.i,
            b.j,
            b.form,
            if b.passed { "matches" } else { "MISMATCH" }
        );
    }
    let zero_ok = blocks
        .iter()
        .filter(|b| b.form == BlockForm::Zero)
        .all(|b| b.passed);
    println!("all blocks with |i-j| != 1 are zero: {zero_ok}");
}

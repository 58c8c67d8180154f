//! Writes the adjacency matrix, the dual idempotents and the edge list of
//! `J(n, m, m+1)` into a directory, as Matrix Market files and plain text.
//!
//!     cargo run --example export_matrices -- out_dir 5 1

use std::fs;
use std::path::PathBuf;

use twlab::graph::{GeometryParams, IncidenceGraph, Mode};
use twlab::linalg::write_matrix_market;

fn main() -> std::io::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "twlab_export".into()));
    let n: usize = args.next().map_or(5, |s| s.parse().expect("n"));
    let m: usize = args.next().map_or(1, |s| s.parse().expect("m"));
    let graph =
        IncidenceGraph::build(GeometryParams::new(n, m), Mode::Strict).expect("valid parameters");
    fs::create_dir_all(&dir)?;

    let mut file = fs::File::create(dir.join("adjacency.mtx"))?;
    write_matrix_market(&graph.adjacency, &mut file)?;
    for (i, e) in graph.dual_idempotents().iter().enumerate() {
        let mut file = fs::File::create(dir.join(format!("estar_{i}.mtx")))?;
        write_matrix_market(e, &mut file)?;
    }
    fs::write(dir.join("edges.txt"), graph.edge_list())?;
    println!(
        "wrote {} files to {}",
        graph.partition.classes().len() + 2,
        dir.display()
    );
    Ok(())
}

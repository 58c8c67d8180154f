//! Colex ranking of k-subsets, intersection matrices built on that order, and
//! the relabeling used to split a vertex into its parts inside and outside
//! the base vertex.
//!
//!     cargo run --example colex_subsets -- 5 2

use twlab::intersection::{build_c, build_h, build_w, level_count};
use twlab::subsets::{enumerate_subsets, Relabeling, SubsetCode};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<usize>().expect("arguments are v and k"));
    let v = args.next().unwrap_or(5);
    let k = args.next().unwrap_or(2);

    println!("{k}-subsets of {{1..{v}}} in colex order:");
    for s in enumerate_subsets(v, k) {
        let back = SubsetCode::unrank(v, k, s.rank()).expect("rank in range");
        assert_eq!(back, s);
        println!("  rank {:>3}  {s}  mask {:#x}", s.rank(), s.mask());
    }

    let w = build_w(k.saturating_sub(1), k, v);
    println!(
        "\nW_{{{},{k}}}({v}) is {}x{} with {} ones",
        k.saturating_sub(1),
        w.rows(),
        w.cols(),
        w.nnz()
    );
    for l in 0..=k {
        let h = build_h(k, k, l as i64, v);
        let c = build_c(k, k, l as i64, v);
        println!(
            "  level {l}: H has {:>3} ones, C has {:>3} nonzeros",
            h.nnz(),
            c.nnz()
        );
    }
    println!(
        "feasible intersection sizes of two {k}-subsets: {}",
        level_count(k, k, v)
    );

    let x = SubsetCode::from_elements(v, &[2, 4]).expect("valid subset");
    let inside = Relabeling::new(x);
    let outside = Relabeling::new(x.complement());
    let z = SubsetCode::from_elements(v, &[1, 4, 5]).expect("valid subset");
    let a = z.intersection(&x).expect("same ground");
    let b = z.intersection(&x.complement()).expect("same ground");
    println!(
        "\nz = {z} relative to x = {x}: z ∩ x = {a} -> {}, z \\ x = {b} -> {}",
        inside.compress(&a).expect("inside x"),
        outside.compress(&b).expect("outside x")
    );
}

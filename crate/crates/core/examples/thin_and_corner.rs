//! Checks that every `E_i* B E_i*` is symmetric for a basis of `T`, and
//! compares the even corner of `T` with the Terwilliger algebra of the
//! Johnson graph `J(n, m)`.
//!
//!     cargo run --release --example thin_and_corner -- 7 2

use twlab::graph::{GeometryParams, Mode};
use twlab::terwilliger::{verify_corner, verify_thin, AlgebraInstance};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<usize>().expect("arguments are n and m"));
    let n = args.next().unwrap_or(7);
    let m = args.next().unwrap_or(2);
    let inst =
        AlgebraInstance::new(GeometryParams::new(n, m), Mode::Strict).expect("valid parameters");
    let t = inst.compute_t().expect("closure");

    let thin = verify_thin(&inst, &t).expect("products");
    match thin.asymmetric {
        None => println!("all {} products E_i* B E_i* are symmetric", thin.checked),
        Some((b, i)) => println!("basis element {b} gives an asymmetric E_{i}* B E_{i}*"),
    }

    let corner = verify_corner(&inst, &t).expect("products");
    println!(
        "even corner: dim {} (sum over even classes {}), Terwilliger algebra of J({n},{m}): dim {}",
        corner.corner_dim, corner.sum_gr_corner, corner.johnson_dim
    );
}

//! Computes `T` by closure and `M` by span for one `J(n, m, m+1)` and
//! compares them, along with the two explicit bases and the dimension
//! formulas.
//!
//!     cargo run --release --example closure_vs_block_algebra -- 7 2

use std::time::Instant;

use twlab::graph::{GeometryParams, Mode};
use twlab::terwilliger::{
    c_to_h_unitriangular, dim_closed_form, dim_sum_gr, verify_basis, verify_t_equals_m,
    AlgebraInstance, BasisKind,
};

fn arg(i: usize, default: usize) -> usize {
    std::env::args()
        .nth(i)
        .map(|s| s.parse().expect("arguments are n and m"))
        .unwrap_or(default)
}

fn main() {
    let (n, m) = (arg(1, 5), arg(2, 1));
    let inst = AlgebraInstance::new(GeometryParams::new(n, m), Mode::Exploratory)
        .expect("valid parameters");
    println!("J({n},{m},{}) with {} vertices", m + 1, inst.size());

    let clock = Instant::now();
    let t = inst.compute_t().expect("closure");
    println!("T by closure: dim {} ({:.2?})", t.dim(), clock.elapsed());

    let clock = Instant::now();
    let big_m = inst.compute_m();
    println!(
        "M by span:    dim {} ({:.2?})",
        big_m.dim(),
        clock.elapsed()
    );

    let tm = verify_t_equals_m(&t, &big_m);
    println!("T subset of M: {}, T = M: {}", tm.t_in_m, tm.equal);

    let clock = Instant::now();
    let h = inst.basis_family(BasisKind::H);
    let c = inst.basis_family(BasisKind::C);
    let (hc, cc) = (verify_basis(&h, &t), verify_basis(&c, &t));
    println!(
        "H-basis: {} members, basis of T: {}; C-basis: {} members, basis of T: {}; C->H unitriangular: {} ({:.2?})",
        hc.cardinality,
        hc.passed(),
        cc.cardinality,
        cc.passed(),
        c_to_h_unitriangular(&h, &c),
        clock.elapsed()
    );

    match (dim_sum_gr(n, m), dim_closed_form(n, m)) {
        (Ok(sum), Ok(closed)) => println!("sum |G||R| = {sum}, closed form = {closed}"),
        _ => println!("n < 3m: dimension formulas do not apply"),
    }
}

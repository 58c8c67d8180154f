//! Tabulates the closure dimension of `T` against the `|G||R|` count and the
//! closed form, flagging disagreements.
//!
//!     cargo run --release --example dimension_table -- 3 10

use twlab::report::{dims_csv, dims_table};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<usize>().expect("arguments are m_max and n_max"));
    let m_max = args.next().unwrap_or(2);
    let n_max = args.next().unwrap_or(9);
    let rows = dims_table(m_max, n_max, Some(150_000)).expect("valid range");
    print!("{}", dims_csv(&rows));
    let flagged: Vec<_> = rows.iter().filter(|r| r.sum_gr != r.closed_form).collect();
    println!(
        "\n{} of {} rows have closed form != sum |G||R|:",
        flagged.len(),
        rows.len()
    );
    for r in flagged {
        println!(
            "  n = {}, m = {}: closed form {}, sum {}, closure {}",
            r.n,
            r.m,
            r.closed_form,
            r.sum_gr,
            r.closure.map_or("-".into(), |c| c.to_string())
        );
    }
}

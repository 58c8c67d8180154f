//! Matrix Market coordinate export.
//!
//! Integer matrices use the standard `integer` field. Matrices with a
//! non-integer entry are written with field `rational` and `num/den` values,
//! which standard readers do not understand.

use std::io::{self, Write};

use super::ExactMatrix;

pub fn write_matrix_market(m: &ExactMatrix, out: &mut impl Write) -> io::Result<()> {
    let integer = m.iter().all(|(_, _, v)| v.is_integer());
    let field = if integer { "integer" } else { "rational" };
    writeln!(out, "%%MatrixMarket matrix coordinate {field} general")?;
    writeln!(out, "% rows: {} cols: {}", m.row_space(), m.col_space())?;
    writeln!(out, "{} {} {}", m.rows(), m.cols(), m.nnz())?;
    for (r, c, v) in m.iter() {
        writeln!(out, "{} {} {}", r + 1, c + 1, v)?;
    }
    Ok(())
}

pub fn matrix_market_string(m: &ExactMatrix) -> String {
    let mut buf = Vec::new();
    write_matrix_market(m, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn integer_matrix() {
        let m = ExactMatrix::from_rows_i64(&[vec![0, 2], vec![-1, 0]]);
        assert_eq!(
            matrix_market_string(&m),
            "%%MatrixMarket matrix coordinate integer general\n% rows: _ cols: _\n2 2 2\n1 2 2\n2 1 -1\n"
        );
    }

    #[test]
    fn rational_matrix() {
        let m = ExactMatrix::from_triplets(1, 1, vec![(0, 0, Rational::new(3, 4))]);
        let s = matrix_market_string(&m);
        assert!(s.starts_with("%%MatrixMarket matrix coordinate rational general\n"));
        assert!(s.ends_with("1 1 3/4\n"));
    }
}

//! Randomized invariants of the algebra across small parameters.

use proptest::prelude::*;

use twlab::graph::{GeometryParams, Mode};
use twlab::linalg::ExactMatrix;
use twlab::scalar::Rational;
use twlab::terwilliger::{dim_sum_gr, verify_t_equals_m, AlgebraInstance, BasisKind};

fn params() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=2).prop_flat_map(|m| (3 * m..=3 * m + 3).prop_map(move |n| (n, m)))
}

fn combination(inst: &AlgebraInstance, coeffs: &[i64]) -> ExactMatrix {
    let size = inst.size();
    inst.basis_family(BasisKind::H)
        .members
        .iter()
        .zip(coeffs.iter().cycle())
        .fold(ExactMatrix::zeros(size, size), |acc, (b, &c)| {
            acc.add_scaled(&Rational::from_int(c), &b.matrix).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn closure_matches_block_algebra((n, m) in params()) {
        let inst = AlgebraInstance::new(GeometryParams::new(n, m), Mode::Strict).unwrap();
        let t = inst.compute_t().unwrap();
        prop_assert_eq!(t.dim() as u64, dim_sum_gr(n, m).unwrap());
        prop_assert!(verify_t_equals_m(&t, &inst.compute_m()).equal);
    }

    #[test]
    fn products_of_combinations_stay_in_t(
        (n, m) in params(),
        a in prop::collection::vec(-3i64..=3, 1..12),
        b in prop::collection::vec(-3i64..=3, 1..12),
    ) {
        let inst = AlgebraInstance::new(GeometryParams::new(n, m), Mode::Strict).unwrap();
        let t = inst.compute_t().unwrap();
        let (x, y) = (combination(&inst, &a), combination(&inst, &b));
        prop_assert!(t.contains(&x.mat_mul(&y).unwrap()).unwrap());
        prop_assert!(t.contains(&x.transpose()).unwrap());
    }
}

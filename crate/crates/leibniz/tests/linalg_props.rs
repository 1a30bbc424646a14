use leibniz::field::{Field, GaussianRational as G};
use leibniz::linalg::{Matrix, Subspace};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = G> {
    (-3i64..=3, -2i64..=2).prop_map(|(a, b)| G::from_ints(a, b))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<G>> {
    prop::collection::vec(prop::collection::vec(entry(), cols), rows).prop_map(|r| Matrix::from_rows(r, &()).unwrap())
}

proptest! {
    #[test]
    fn rank_nullity(m in (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let kernel = m.nullspace();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Field::is_zero));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn inverses_are_two_sided(m in matrix(4, 4)) {
        prop_assume!(m.is_invertible());
        let inv = m.invert().unwrap();
        let id = Matrix::identity(4, &());
        prop_assert_eq!(m.mul(&inv).unwrap(), id.clone());
        prop_assert_eq!(inv.mul(&m).unwrap(), id);
    }

    #[test]
    fn solve_agrees_with_mul(m in matrix(3, 4), x in prop::collection::vec(entry(), 4)) {
        let b = m.mul_vec(&x).unwrap();
        let y = m.solve(&b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn subspace_dimension_formula(u in matrix(3, 5), w in matrix(2, 5)) {
        let su = Subspace::span(5, u.row_vecs(), &());
        let sw = Subspace::span(5, w.row_vecs(), &());
        let sum = su.sum(&sw).unwrap();
        let meet = su.intersection(&sw).unwrap();
        prop_assert_eq!(su.dim() + sw.dim(), sum.dim() + meet.dim());
        prop_assert!(sum.contains(&su).unwrap() && su.contains(&meet).unwrap() && sw.contains(&meet).unwrap());
    }
}

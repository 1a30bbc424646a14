use leibniz::algebra::LeibnizAlgebra;
use leibniz::catalogue::{sample_params, Catalogue};
use leibniz::field::GaussianRational as G;
use leibniz::invariants::signature;
use leibniz::iso::verify_witness;
use leibniz::linalg::Matrix;
use proptest::prelude::*;
use std::sync::OnceLock;

fn catalogue() -> &'static Catalogue {
    static CAT: OnceLock<Catalogue> = OnceLock::new();
    CAT.get_or_init(Catalogue::bundled)
}

fn algebra() -> impl Strategy<Value = LeibnizAlgebra<G>> {
    (0..catalogue().entries.len(), 0usize..3).prop_map(|(k, s)| {
        let cat = catalogue();
        let entry = &cat.entries[k];
        let mut points = sample_params(entry, 3).unwrap();
        let params = points.swap_remove(s.min(points.len() - 1));
        cat.instantiate(entry, &params).unwrap()
    })
}

fn invertible() -> impl Strategy<Value = Matrix<G>> {
    prop::collection::vec(prop::collection::vec((-2i64..=2, -1i64..=1).prop_map(|(a, b)| G::from_ints(a, b)), 5), 5)
        .prop_map(|r| Matrix::from_rows(r, &()).unwrap())
        .prop_filter("invertible", Matrix::is_invertible)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn base_change_preserves_structure(a in algebra(), p in invertible()) {
        let b = a.base_change(&p).unwrap();
        prop_assert_eq!(b.check_leibniz().is_ok(), a.check_leibniz().is_ok());
        prop_assert_eq!(b.is_lie(), a.is_lie());
        prop_assert!(signature(&b).differences(&signature(&a)).is_empty());
        prop_assert!(verify_witness(&a, &b, &p).unwrap().is_ok());
    }

    #[test]
    fn base_changes_compose(a in algebra(), p in invertible(), q in invertible()) {
        let b = a.base_change(&p).unwrap();
        let c = b.base_change(&q).unwrap();
        let pq = p.mul(&q).unwrap();
        prop_assert_eq!(a.base_change(&pq).unwrap(), c.clone());
        prop_assert!(verify_witness(&a, &c, &pq).unwrap().is_ok());
        prop_assert_eq!(b.base_change(&p.invert().unwrap()).unwrap(), a);
    }

    #[test]
    fn a_wrong_witness_is_rejected(a in algebra(), p in invertible()) {
        // Scaling by 2 changes every nonzero product, so P cannot also map onto 2A.
        let b = a.base_change(&p).unwrap().scale(&G::from_i64(2));
        prop_assume!(a.products().next().is_some());
        prop_assert!(!verify_witness(&a, &b, &p).unwrap().is_ok());
    }

    #[test]
    fn nilpotent_class_sits_in_the_centre(a in algebra()) {
        let flags = a.classify_flags();
        prop_assert!(flags.is_nilpotent);
        let c = flags.nilpotency_class.unwrap();
        let lcs = a.lower_central();
        prop_assert!(a.center().contains(lcs.term(c)).unwrap());
        prop_assert_eq!(a.leib_ideal().is_zero(), a.is_lie());
    }
}

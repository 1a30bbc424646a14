use leibniz::bilinear::{congruence_canonical, congruent, congruent_image, Congruence};
use leibniz::field::GaussianRational as G;
use leibniz::linalg::Matrix;
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = G> {
    (-4i64..=4, -2i64..=2).prop_map(|(a, b)| G::from_ints(a, b))
}

fn square() -> impl Strategy<Value = Matrix<G>> {
    prop::collection::vec(prop::collection::vec(entry(), 2), 2).prop_map(|r| Matrix::from_rows(r, &()).unwrap())
}

fn mixed_c(c: &Congruence) -> Option<String> {
    (c.tag() == leibniz::bilinear::KindTag::MixedC).then(|| c.kind_string())
}

proptest! {
    #[test]
    fn canonical_forms_recheck(m in square()) {
        let c = congruence_canonical(&m);
        prop_assert!(c.verify(&m), "{} with Q = {}", c.kind_string(), c.q_string());
    }

    #[test]
    fn kind_is_a_congruence_invariant(m in square(), q in square()) {
        prop_assume!(q.is_invertible());
        let n = congruent_image(&m, &q);
        let (cm, cn) = (congruence_canonical(&m), congruence_canonical(&n));
        prop_assert_eq!(cm.tag(), cn.tag());
        prop_assert_eq!(mixed_c(&cm), mixed_c(&cn));
        prop_assert!(congruent(&m, &n));
    }
}

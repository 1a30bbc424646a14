use leibniz::field::{parse_scalar, reduce_mod_p, Field, Fp, GaussianRational as G, QuadExt, ScalarLiteral};
use proptest::prelude::*;

fn gaussian() -> impl Strategy<Value = G> {
    (-9i64..=9, -9i64..=9, 1i64..=6).prop_map(|(a, b, d)| G::from_ints(a, b).div(&G::from_i64(d)).unwrap())
}

fn nonzero_gaussian() -> impl Strategy<Value = G> {
    gaussian().prop_filter("nonzero", |g| !g.is_zero())
}

fn radicand() -> impl Strategy<Value = G> {
    prop_oneof![Just(G::from_i64(2)), Just(G::from_i64(3)), Just(G::from_i64(-2)), Just(G::from_ints(1, 1))]
}

/// Two elements of the same extension.
fn quad_pair() -> impl Strategy<Value = (QuadExt, QuadExt)> {
    (radicand(), gaussian(), gaussian(), gaussian(), gaussian()).prop_map(|(d, a, b, c, e)| {
        (QuadExt::new(a, b, d.clone()).unwrap(), QuadExt::new(c, e, d).unwrap())
    })
}

proptest! {
    #[test]
    fn gaussian_ring_laws(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.add(&a.neg()), G::zero());
    }

    #[test]
    fn gaussian_inverses(a in nonzero_gaussian()) {
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        prop_assert_eq!(a.mul(&a.conj()), G::from_rational(a.norm()));
    }

    #[test]
    fn gaussian_square_roots(a in gaussian()) {
        let sq = a.mul(&a);
        let r = sq.sqrt().expect("a square has a root");
        prop_assert_eq!(r.mul(&r), sq);
    }

    #[test]
    fn gaussian_display_parses_back(a in gaussian()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), ScalarLiteral::Gaussian(a));
    }

    #[test]
    fn reduction_is_a_ring_map(a in gaussian(), b in gaussian(), p in prop_oneof![Just(13u64), Just(17), Just(29)]) {
        let (ra, rb) = (reduce_mod_p(&a, p).unwrap(), reduce_mod_p(&b, p).unwrap());
        prop_assert_eq!(reduce_mod_p(&a.add(&b), p).unwrap(), ra.add(&rb));
        prop_assert_eq!(reduce_mod_p(&a.mul(&b), p).unwrap(), ra.mul(&rb));
        prop_assert_eq!(reduce_mod_p(&G::i(), p).unwrap().mul(&reduce_mod_p(&G::i(), p).unwrap()), Fp::new(-1, p));
    }

    #[test]
    fn prime_field_inverses(v in 1i64..13) {
        let x = Fp::new(v, 13);
        prop_assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn quad_ring_laws((x, y) in quad_pair()) {
        let d = x.ctx();
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        prop_assert!(x.mul(&x.conj()).as_base().is_some());
        if !x.is_zero() {
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        let r = QuadExt::generator(&d).unwrap();
        prop_assert_eq!(r.mul(&r), QuadExt::embed(d.clone(), &d));
    }
}

use hnstrata::classes::{
    enumerate_hn_types, euler_form, lower_convex_hull, polygon_lies_above, stack_dim, stratum_codim, HNType,
    KClass,
};
use hnstrata::hall::{element_from_json, element_to_json, expand_one, HallElement};
use hnstrata::scalars::{BigRational, LaurentV, SqrtQScalar};
use num_rational::Rational64;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..21, 1i64..8).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn laurent() -> impl Strategy<Value = LaurentV> {
    proptest::collection::vec((-5i64..6, rational()), 0..5).prop_map(LaurentV::from_terms)
}

fn sqrtq(q: u64) -> impl Strategy<Value = SqrtQScalar> {
    (rational(), rational()).prop_map(move |(a, b)| SqrtQScalar::new(a, b, q))
}

fn class() -> impl Strategy<Value = KClass> {
    (-3i64..4, -6i64..7).prop_map(|(r, d)| KClass::new(r, d))
}

fn weight() -> impl Strategy<Value = KClass> {
    (1i64..4, -3i64..4).prop_map(|(r, d)| KClass::new(r, d))
}

proptest! {
    #[test]
    fn laurent_ring(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), q in prop_oneof![Just(2u64), Just(3), Just(4), Just(8)]) {
        prop_assert_eq!((&a * &b).eval_sqrt_q(q), &a.eval_sqrt_q(q) * &b.eval_sqrt_q(q));
        prop_assert_eq!((&a + &b).eval_sqrt_q(q), &a.eval_sqrt_q(q) + &b.eval_sqrt_q(q));
        prop_assert_eq!(a.shift(2).eval_sqrt_q(q), a.eval_sqrt_q(q).scale(&BigRational::new(1.into(), (q as i64).into())));
    }

    #[test]
    fn sqrtq_field(x in sqrtq(3), y in sqrtq(3)) {
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse(), SqrtQScalar::one(3));
        }
        prop_assert_eq!((&x * &y).signum(), x.signum() * y.signum());
        prop_assert_eq!(x.abs().signum() >= 0, true);
    }

    #[test]
    fn euler_form_identities(x in class(), y in class(), z in class(), g in 0i64..5) {
        prop_assert_eq!(euler_form(&(x + y), &z, g), euler_form(&x, &z, g) + euler_form(&y, &z, g));
        prop_assert_eq!(euler_form(&x, &y, g) - euler_form(&y, &x, g), 2 * (x.r * y.d - y.r * x.d));
        prop_assert_eq!(stack_dim(x, g), (g - 1) * x.r * x.r);
    }

    #[test]
    fn enumeration_is_monotone_and_well_formed(w in weight(), n in -3i64..1, vec_only in any::<bool>()) {
        let hi = enumerate_hn_types(w, Rational64::from_integer(n), vec_only);
        let lo = enumerate_hn_types(w, Rational64::from_integer(n - 1), vec_only);
        prop_assert!(hi.iter().all(|t| lo.contains(t)));
        for t in &lo {
            prop_assert_eq!(t.weight(), w);
            prop_assert!(t.parts().windows(2).all(|p| p[0].slope() < p[1].slope()));
            prop_assert!(t.parts().iter().take(t.len() - 1).all(|p| !p.is_torsion()));
            prop_assert_eq!(stratum_codim(t, 2) == 0, t.len() == 1);
        }
    }

    #[test]
    fn hull_lies_below_inputs(w in weight(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..6)) {
        let all = enumerate_hn_types(w, Rational64::from_integer(w.d.div_euclid(w.r) - 3), false);
        let chosen: Vec<HNType> = picks.iter().map(|i| all[i.index(all.len())].clone()).collect();
        let hull = lower_convex_hull(&chosen).unwrap();
        prop_assert_eq!(hull.weight(), w);
        prop_assert!(hull.parts().windows(2).all(|p| p[0].slope() < p[1].slope()));
        for t in &chosen {
            for v in t.vertices() {
                prop_assert!(polygon_lies_above(&v, &hull).unwrap());
            }
        }
    }

    #[test]
    fn element_json_round_trip(w in weight(), level in -2i64..1, seed in laurent()) {
        let base = expand_one(w, w.d.div_euclid(w.r) + level, false).unwrap();
        let mut e = HallElement::zero(w, base.level()).unwrap();
        for (i, (t, _)) in base.iter().enumerate() {
            e.add_term(t.clone(), seed.shift(i as i64)).unwrap();
        }
        prop_assert_eq!(element_from_json(&element_to_json(&e)).unwrap(), e);
    }
}

#[test]
fn vector_types_of_rank_two_grow_linearly() {
    let w = KClass::new(2, 0);
    for m in 0..=30i64 {
        let n = enumerate_hn_types(w, Rational64::from_integer(-m), true).len() as i64;
        assert_eq!(n, m + 1);
    }
}

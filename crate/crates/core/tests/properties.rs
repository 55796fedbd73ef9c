//! Randomized laws that must hold for any input, not just the golden
//! vectors: text round trips, ring axioms for witnesses, division
//! invariants, and agreement between independent computation routes.

use num_traits::Zero;
use proptest::prelude::*;
use scf_core::{
    family_poly, format_rational, parse_rational, rational_roots, transform_param, ClassWitness,
    FieldSpec, MoebiusElement, RatPolynomial, Rational,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-2_000_000i64..=2_000_000, 1i64..=2_000_000)
        .prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn witness() -> impl Strategy<Value = ClassWitness> {
    (-40i64..=40, -40i64..=40)
        .prop_filter("witness must be nonzero", |(c, d)| *c != 0 || *d != 0)
        .prop_map(|(c, d)| ClassWitness::from_i64(c, d).unwrap())
}

fn poly(max_deg: usize) -> impl Strategy<Value = RatPolynomial> {
    proptest::collection::vec(-9i64..=9, 1..=max_deg + 1)
        .prop_map(|cs| RatPolynomial::from_i64(&cs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn format_parse_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn witness_ring_laws(w1 in witness(), w2 in witness(), w3 in witness()) {
        prop_assert_eq!(w1.compose(&w1.inverse()), ClassWitness::identity());
        prop_assert_eq!(w1.compose(&w2), w2.compose(&w1));
        prop_assert_eq!(
            w1.compose(&w2).compose(&w3),
            w1.compose(&w2.compose(&w3))
        );
        prop_assert_eq!(
            w1.compose(&w2).to_map(),
            w1.to_map().compose(&w2.to_map())
        );
    }

    #[test]
    fn division_invariant(a in poly(6), b in poly(3)) {
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&quo * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn reported_roots_really_vanish(p in poly(5)) {
        prop_assume!(!p.is_zero());
        let roots = rational_roots(&p).unwrap();
        let mut total = 0usize;
        for (r, mult) in &roots {
            prop_assert!(p.eval(r).is_zero(), "claimed root {} does not vanish", r);
            total += mult;
        }
        prop_assert!(total <= p.degree().unwrap());
    }

    #[test]
    fn planted_rational_roots_are_found(n1 in -9i64..=9, d1 in 1i64..=9,
                                        n2 in -9i64..=9, d2 in 1i64..=9) {
        // (d1*x - n1)(d2*x - n2)(x^2 + 1): both rational roots, nothing else.
        let f = &(&RatPolynomial::from_i64(&[-n1, d1]) * &RatPolynomial::from_i64(&[-n2, d2]))
            * &RatPolynomial::from_i64(&[1, 0, 1]);
        let roots = rational_roots(&f).unwrap();
        let r1 = Rational::new(n1.into(), d1.into());
        let r2 = Rational::new(n2.into(), d2.into());
        let expected = if r1 == r2 { 1 } else { 2 };
        prop_assert_eq!(roots.len(), expected);
        prop_assert!(roots.iter().any(|(r, _)| *r == r1));
        prop_assert!(roots.iter().any(|(r, _)| *r == r2));
    }

    #[test]
    fn transform_inverse_law(w in witness(), n in -30i64..=30, d in 1i64..=12) {
        let k = Rational::new(n.into(), d.into());
        prop_assume!(FieldSpec::new(k.clone()).is_ok());
        let k1 = transform_param(&w, &k).unwrap();
        prop_assert_eq!(transform_param(&w.inverse(), &k1).unwrap(), k);
    }

    #[test]
    fn quotient_element_routes_agree(a in -25i64..=25, b in -25i64..=25,
                                     c in -25i64..=25, d in -25i64..=25,
                                     n in -12i64..=12, m in 1i64..=8) {
        prop_assume!(a * d - b * c != 0);
        let k = Rational::new(n.into(), m.into());
        prop_assume!(FieldSpec::new(k.clone()).is_ok());
        let q = MoebiusElement::from_i64(FieldSpec::new(k).unwrap(), a, b, c, d).unwrap();
        prop_assert_eq!(q.to_field_element(), q.to_field_element_by_division());
        prop_assert_eq!(q.minpoly_closed_form(), q.to_field_element().minpoly_oracle());
    }

    #[test]
    fn conjugate_roots_share_the_polynomial(n in -12i64..=12, m in 1i64..=8) {
        let k = Rational::new(n.into(), m.into());
        prop_assume!(FieldSpec::new(k.clone()).is_ok());
        let fs = FieldSpec::new(k.clone()).unwrap();
        let alpha = scf_core::FieldElement::alpha(fs);
        let sigma = alpha.conj();
        // Both the root and its automorphic image satisfy the family cubic.
        let f = family_poly(&k);
        prop_assert_eq!(alpha.minpoly_oracle(), f.clone());
        prop_assert_eq!(sigma.minpoly_oracle(), f);
    }
}

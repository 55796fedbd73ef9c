//! End-to-end acceptance gate. Each test covers one release criterion and
//! prints a single PASS line when it holds; golden values were fixed in
//! advance with an independent computer-algebra oracle.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::{Signed, ToPrimitive};
use scf_core::selftest::{
    random_element, random_invertible_quad, random_irreducible_k, random_witness, seeded_rng,
};
use scf_core::{
    approx_roots, classify, degenerate_param, discriminant_k, equivalent, rational_roots,
    rational_sqrt, transform_param, verify_witness, witness_cubic, Classification, ClassWitness,
    FieldSpec, MoebiusElement, RatPolynomial, Rational,
};

fn q(s: &str) -> Rational {
    scf_core::parse_rational(s).expect("test literal")
}

fn w(c: i64, d: i64) -> ClassWitness {
    ClassWitness::from_i64(c, d).expect("test witness")
}

fn spec(k: &str) -> FieldSpec {
    FieldSpec::new(q(k)).expect("irreducible test parameter")
}

/// z -> (z-1)/z, the cycle that ties the three roots together.
fn y_step(z: &Rational) -> Rational {
    (z - Rational::from_integer(1.into())) / z
}

#[test]
fn c01_golden_transform_values() {
    assert_eq!(transform_param(&w(2, 3), &q("3")).unwrap(), q("-51/73"));
    assert_eq!(transform_param(&w(1, 2), &q("3")).unwrap(), q("3/19"));
    println!("PASS c01 golden transform values");
}

#[test]
fn c02_golden_minimal_polynomials() {
    let cases: [(i64, i64, i64, i64, [&str; 4]); 2] = [
        (5, -2, 2, 3, ["1", "-270/73", "51/73", "1"]),
        (3, -1, 1, 2, ["1", "-54/19", "-3/19", "1"]),
    ];
    for (a, b, c, d, coeffs) in cases {
        let m = MoebiusElement::from_i64(spec("3"), a, b, c, d).unwrap();
        let closed = m.minpoly_closed_form();
        let expected =
            RatPolynomial::new(coeffs.iter().map(|s| q(s)).collect::<Vec<_>>());
        assert_eq!(closed, expected, "closed form for ({a},{b},{c},{d})");
        assert_eq!(
            closed,
            m.to_field_element().minpoly_oracle(),
            "closed form must match the multiplication-matrix oracle"
        );
    }
    println!("PASS c02 golden minimal polynomials, both routes");
}

#[test]
fn c03_equivalence_with_witness() {
    let (k, k2) = (q("3"), q("-51/73"));
    let res = equivalent(&k, &k2);
    assert!(res.equivalent);
    assert!(res.witnesses.contains(&w(2, 3)), "expected witness 2:3");
    assert!(verify_witness(&k, &k2, &w(2, 3)).unwrap());

    let back = w(2, 3).inverse();
    assert_eq!(transform_param(&back, &k2).unwrap(), k);
    assert!(verify_witness(&k2, &k, &back).unwrap());

    let res = equivalent(&q("0"), &q("1"));
    assert!(!res.equivalent);
    assert!(res.witnesses.is_empty());
    // Independent route: the witness cubic for this pair has no rational
    // root, so no witness can exist.
    let cubic = witness_cubic(&q("0"), &q("1"));
    assert_eq!(cubic, RatPolynomial::from_i64(&[1, 9, 6, -1]));
    assert!(rational_roots(&cubic).unwrap().is_empty());
    println!("PASS c03 equivalence witness certified in both directions");
}

#[test]
fn c04_differential_formula_validation() {
    let mut rng = seeded_rng(41);
    for round in 0..200 {
        let k = random_irreducible_k(&mut rng, 20, 20);
        let (a, b, c, d) = random_invertible_quad(&mut rng, 50);
        let m = MoebiusElement::from_i64(FieldSpec::new(k.clone()).unwrap(), a, b, c, d)
            .expect("nonzero determinant");
        let direct = m.to_field_element();
        assert_eq!(
            direct,
            m.to_field_element_by_division(),
            "basis formulas vs division, round {round}, quad ({a},{b},{c},{d})"
        );
        assert_eq!(
            m.minpoly_closed_form(),
            direct.minpoly_oracle(),
            "minimal polynomial routes, round {round}, quad ({a},{b},{c},{d})"
        );
    }
    println!("PASS c04 differential validation on 200 random quotient elements");
}

#[test]
fn c05_witness_algebra_laws() {
    let mut rng = seeded_rng(42);
    for round in 0..200 {
        let k = random_irreducible_k(&mut rng, 12, 8);
        let w1 = random_witness(&mut rng, 12);
        let w2 = random_witness(&mut rng, 12);
        let k1 = transform_param(&w1, &k).unwrap();
        assert_eq!(
            transform_param(&w1.inverse(), &k1).unwrap(),
            k,
            "inverse law, round {round}"
        );
        let chained = transform_param(&w2, &k1).unwrap();
        assert_eq!(
            chained,
            transform_param(&w1.compose(&w2), &k).unwrap(),
            "composition law, round {round}"
        );
    }
    for c1 in -5i64..=5 {
        for d1 in -5i64..=5 {
            if c1 == 0 && d1 == 0 {
                continue;
            }
            for c2 in -5i64..=5 {
                for d2 in -5i64..=5 {
                    if c2 == 0 && d2 == 0 {
                        continue;
                    }
                    let (w1, w2) = (w(c1, d1), w(c2, d2));
                    assert_eq!(
                        w1.compose(&w2).to_map(),
                        w1.to_map().compose(&w2.to_map()),
                        "witness composition vs matrix product at ({c1},{d1}),({c2},{d2})"
                    );
                }
            }
        }
    }
    println!("PASS c05 witness algebra laws, 200 samples plus exhaustive small box");
}

#[test]
fn c06_trace_identity() {
    let mut rng = seeded_rng(43);
    for round in 0..100 {
        let k = random_irreducible_k(&mut rng, 15, 9);
        let witness = random_witness(&mut rng, 20);
        let elem =
            MoebiusElement::from_witness(FieldSpec::new(k.clone()).unwrap(), &witness);
        assert_eq!(
            elem.to_field_element().trace(),
            transform_param(&witness, &k).unwrap(),
            "trace vs parameter transform, round {round}, witness {witness}"
        );
    }
    println!("PASS c06 trace identity on 100 random witnesses");
}

#[test]
fn c07_discriminant_law() {
    let mut rng = seeded_rng(44);
    let three = Rational::from_integer(3.into());
    let nine = Rational::from_integer(9.into());
    for _ in 0..100 {
        let k = scf_core::selftest::random_rational(&mut rng, 40, 15);
        let base = &k * &k - &three * &k + nine.clone();
        assert_eq!(discriminant_k(&k), &base * &base);
        if let Classification::Generating {
            discriminant,
            sqrt_discriminant,
        } = classify(&k)
        {
            assert_eq!(rational_sqrt(&discriminant), Some(sqrt_discriminant.clone()));
            assert_eq!(sqrt_discriminant, base);
        }
    }
    println!("PASS c07 discriminant is a perfect square with known root");
}

#[test]
fn c08_degenerate_class() {
    match classify(&q("3/2")) {
        Classification::Degenerate { roots } => {
            assert_eq!(roots, vec![q("-1"), q("1/2"), q("2")]);
            // The three roots are one cycle of z -> (z-1)/z.
            for r in &roots {
                assert!(roots.contains(&y_step(r)));
            }
            assert_eq!(y_step(&y_step(&y_step(&roots[0]))), roots[0]);
            assert_ne!(y_step(&roots[0]), roots[0]);
        }
        other => panic!("3/2 must be degenerate, got {other:?}"),
    }
    for p in -10i64..=10 {
        for qd in -10i64..=10 {
            if p == 0 || qd == 0 || p == qd {
                continue;
            }
            let k = degenerate_param(&p.into(), &qd.into()).unwrap();
            assert!(
                matches!(classify(&k), Classification::Degenerate { .. }),
                "({p},{qd}) must give a degenerate parameter"
            );
        }
    }
    for k in 0..=3i64 {
        assert!(
            matches!(
                classify(&Rational::from_integer(k.into())),
                Classification::Generating { .. }
            ),
            "k = {k} must generate a field"
        );
    }
    println!("PASS c08 degenerate class closed under construction, small k generate");
}

#[test]
fn c09_numeric_cross_check_k3() {
    let roots = approx_roots(&q("3"), 12).unwrap();
    let tol = 1e-12f64;
    let largest = roots[0].to_f64().unwrap();
    let reference = 2.0 * (std::f64::consts::PI / 9.0).cos() + 1.0;
    assert!(
        (largest - reference).abs() < tol,
        "largest root {largest} vs 2cos(pi/9)+1 = {reference}"
    );
    let tol_exact = Rational::new(1.into(), scf_core::Int::from(10).pow(12));
    for i in 0..3 {
        let image = y_step(&roots[i]);
        let next = &roots[(i + 1) % 3];
        assert!(
            (&image - next).abs() < tol_exact,
            "y must send root {i} to root {}", (i + 1) % 3
        );
        let residual = scf_core::family_poly(&q("3")).eval(&roots[i]).abs();
        assert!(residual < tol_exact, "residual of root {i} too large");
    }
    println!("PASS c09 numeric roots for k = 3 certified to 12 digits");
}

#[test]
fn c10_automorphism_order_three() {
    let mut rng = seeded_rng(45);
    for round in 0..100 {
        let k = random_irreducible_k(&mut rng, 12, 7);
        let fs = FieldSpec::new(k).unwrap();
        let x = random_element(&mut rng, &fs, 9);
        let z = random_element(&mut rng, &fs, 9);
        assert_eq!(
            x.mul(&z).unwrap().conj(),
            x.conj().mul(&z.conj()).unwrap(),
            "conj must be multiplicative, round {round}"
        );
        assert_eq!(
            x.add(&z).unwrap().conj(),
            x.conj().add(&z.conj()).unwrap(),
            "conj must be additive, round {round}"
        );
        assert_eq!(x.conj().conj().conj(), x, "conj must have order 3");
    }
    println!("PASS c10 conjugation is an order-3 automorphism on 100 random pairs");
}

#[test]
fn c11_witness_cubic_degree_sweep() {
    // equivalent() asserts on every call that the witness cubic has degree 3
    // off the diagonal and degree 2 with positive leading coefficient on it.
    // Sweep enough parameter pairs that a wrong degree would have to fire.
    let grid: Vec<Rational> = [
        "0", "1", "2", "3", "-3", "57", "3/2", "19/6", "-51/73", "3/19", "-17/12", "5/7",
    ]
    .iter()
    .map(|s| q(s))
    .collect();
    let sweep = AssertUnwindSafe(|| {
        for a in &grid {
            for b in &grid {
                let res = equivalent(a, b);
                if a == b {
                    assert!(res.equivalent, "every parameter is equivalent to itself");
                }
            }
        }
        let mut rng = seeded_rng(46);
        for _ in 0..50 {
            let a = scf_core::selftest::random_rational(&mut rng, 25, 9);
            let b = scf_core::selftest::random_rational(&mut rng, 25, 9);
            equivalent(&a, &b);
        }
    });
    assert!(
        catch_unwind(sweep).is_ok(),
        "a degree assertion fired during the equivalence sweep"
    );
    println!("PASS c11 witness-cubic degree assertions silent over full sweep");
}

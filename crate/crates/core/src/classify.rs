//! Parameter-level theory of the family x³ − kx² + (k−3)x + 1.
//!
//! Every parameter is either Degenerate (the cubic has three rational
//! roots forming one y-cycle) or Generating (irreducible, with square
//! discriminant certifying a cyclic cubic field). Two generating
//! parameters give the same field exactly when a witness (c,d) carries
//! one to the other via the degree-0-homogeneous transform T(c,d,k);
//! deciding that reduces to the rational roots of one cubic in t = c/d.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{family_poly, FieldSpec, MoebiusElement};
use crate::moebius::ClassWitness;
use crate::poly::{cubic_discriminant, rational_roots, RatPolynomial};
use crate::rational::{format_rational, rat_int, rational_sqrt, Int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Three rational roots, ascending, forming a single y-cycle.
    Degenerate { roots: Vec<Rational> },
    /// Irreducible cubic; the discriminant and its rational square root
    /// certify three real conjugate roots.
    Generating { discriminant: Rational, sqrt_discriminant: Rational },
}

/// Discriminant of the family cubic at k; equals (k² − 3k + 9)², though
/// callers confirm that identity by test rather than assuming it.
pub fn discriminant_k(k: &Rational) -> Rational {
    cubic_discriminant(&family_poly(k)).expect("family polynomial has degree 3")
}

pub fn classify(k: &Rational) -> Classification {
    let f = family_poly(k);
    let roots = rational_roots(&f).expect("family polynomial is nonzero");
    if roots.is_empty() {
        let discriminant = cubic_discriminant(&f).expect("family polynomial has degree 3");
        assert!(
            discriminant.is_positive(),
            "family discriminant must be positive"
        );
        let sqrt_discriminant = rational_sqrt(&discriminant)
            .expect("family discriminant must be a rational square");
        return Classification::Generating { discriminant, sqrt_discriminant };
    }
    let mut flat = Vec::new();
    for (r, mult) in roots {
        for _ in 0..mult {
            flat.push(r.clone());
        }
    }
    assert_eq!(
        flat.len(),
        3,
        "one rational root forces the family cubic to split completely"
    );
    Classification::Degenerate { roots: flat }
}

/// (p³ − 3pq² + q³)/(qp(p − q)): the parameter whose cubic has p/q as a
/// root. Requires p ≠ 0, q ≠ 0, p ≠ q.
pub fn degenerate_param(p: &Int, q: &Int) -> Result<Rational> {
    if p.is_zero() || q.is_zero() || p == q {
        return Err(Error::Domain(
            "degenerate parametrization needs p ≠ 0, q ≠ 0, p ≠ q".into(),
        ));
    }
    let num = p * p * p - Int::from(3) * p * q * q + q * q * q;
    let den = q * p * (p - q);
    Ok(Rational::new(num, den))
}

/// Recovers some (p, q) with degenerate_param(p, q) = k, if k is
/// degenerate: any rational root p/q of the cubic works.
pub fn degenerate_preimage(k: &Rational) -> Option<(Int, Int)> {
    let roots = rational_roots(&family_poly(k)).expect("family polynomial is nonzero");
    let (r, _) = roots.first()?;
    Some((r.numer().clone(), r.denom().clone()))
}

/// T(c,d,k) = (9d²c + c³k + 9c²d − 3d²ck − kd³) / (c³ + 3c²d − c²dk − cd²k − d³),
/// homogeneous of degree 0 in (c,d). The denominator is (minus) the norm
/// of cα + d, so it only vanishes at degenerate parameters.
pub fn transform_param(w: &ClassWitness, k: &Rational) -> Result<Rational> {
    let c = Rational::from_integer(w.c().clone());
    let d = Rational::from_integer(w.d().clone());
    let nine = rat_int(9);
    let three = rat_int(3);
    let den = &c * &c * &c + &three * &c * &c * &d
        - &c * &c * &d * k
        - &c * &d * &d * k
        - &d * &d * &d;
    if den.is_zero() {
        return Err(Error::Domain(format!(
            "witness {w} degenerate at this parameter"
        )));
    }
    let num = &nine * &d * &d * &c + &c * &c * &c * k + &nine * &c * &c * &d
        - &three * &d * &d * &c * k
        - k * &d * &d * &d;
    Ok(num / den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceResult {
    pub equivalent: bool,
    /// Every witness w here satisfies T(w, k) = k₂; sorted by height,
    /// then |c|, |d|, nonnegative c first.
    pub witnesses: Vec<ClassWitness>,
}

/// The cubic in t = c/d whose rational roots are the finite-t witnesses
/// carrying k to k₂:
///   (k − k₂)t³ + (kk₂ − 3k₂ + 9)t² + (kk₂ − 3k + 9)t + (k₂ − k).
pub fn witness_cubic(k: &Rational, k2: &Rational) -> RatPolynomial {
    let nine = rat_int(9);
    let three = rat_int(3);
    let kk2 = k * k2;
    RatPolynomial::new(vec![
        k2 - k,
        &kk2 - &three * k + &nine,
        &kk2 - &three * k2 + &nine,
        k - k2,
    ])
}

pub fn equivalent(k: &Rational, k2: &Rational) -> EquivalenceResult {
    let p = witness_cubic(k, k2);
    if k == k2 {
        assert!(
            p.degree() == Some(2) && p.leading().is_some_and(|l| l.is_positive()),
            "witness cubic must drop to a positive-leading quadratic at equal parameters"
        );
    } else {
        assert!(
            p.degree() == Some(3),
            "witness cubic must have degree 3 at distinct parameters"
        );
    }
    let mut witnesses = Vec::new();
    for (root, _) in rational_roots(&p).expect("witness cubic is nonzero") {
        let w = ClassWitness::new(root.numer().clone(), root.denom().clone())
            .expect("a reduced fraction is a valid witness");
        // A transform error means the denominator vanished at this root:
        // it carries no witness (possible for degenerate k only).
        if let Ok(value) = transform_param(&w, k) {
            assert_eq!(
                &value, k2,
                "a witness-cubic root with nonvanishing denominator must map k to k2"
            );
            witnesses.push(w);
        }
    }
    if k == k2 {
        // the d = 0 branch: t = ∞, witness (1,0), i.e. y itself
        witnesses.push(ClassWitness::from_i64(1, 0).expect("valid witness"));
    }
    witnesses.sort();
    EquivalenceResult { equivalent: !witnesses.is_empty(), witnesses }
}

/// Full symbolic check that the witness carries α to a root of the k₂
/// cubic: the minimal polynomial of ((c+d)α − c)/(cα + d) over the k
/// field must equal the k₂ family polynomial. Requires irreducible f_k.
pub fn verify_witness(k: &Rational, k2: &Rational, w: &ClassWitness) -> Result<bool> {
    let spec = FieldSpec::new(k.clone())?;
    let element = MoebiusElement::from_witness(spec, w).to_field_element();
    Ok(element.minpoly_oracle() == family_poly(k2))
}

/// All normalized witnesses with max(|c|, |d|) ≤ height, in the
/// deterministic enumeration order (height, |c|, |d|, sign).
fn witness_grid(height: u32) -> Vec<ClassWitness> {
    let h = i64::from(height);
    let mut grid = vec![ClassWitness::from_i64(1, 0).expect("valid witness")];
    for d in 1..=h {
        for c in -h..=h {
            if num_integer::gcd(c, d) == 1 {
                grid.push(ClassWitness::from_i64(c, d).expect("valid witness"));
            }
        }
    }
    grid.sort();
    grid
}

fn orbit_impl(
    k: &Rational,
    height: u32,
    parallel: bool,
) -> Result<Vec<(Rational, ClassWitness)>> {
    FieldSpec::new(k.clone())?;
    let grid = witness_grid(height);
    let transform_one = |w: ClassWitness| {
        let value =
            transform_param(&w, k).expect("transform denominator is nonzero at irreducible k");
        (value, w)
    };
    let pairs: Vec<(Rational, ClassWitness)> = if parallel {
        grid.into_par_iter().map(transform_one).collect()
    } else {
        grid.into_iter().map(transform_one).collect()
    };
    let mut dedup: BTreeMap<(Int, Int), (Rational, ClassWitness)> = BTreeMap::new();
    for (value, w) in pairs {
        dedup
            .entry((value.denom().clone(), value.numer().clone()))
            .or_insert((value, w));
    }
    Ok(dedup.into_values().collect())
}

/// Deduplicated parameters reachable from k by witnesses up to the given
/// height, each with its first witness in enumeration order; sorted by
/// (denominator, numerator) of the reached parameter.
pub fn orbit(k: &Rational, height: u32) -> Result<Vec<(Rational, ClassWitness)>> {
    orbit_impl(k, height, false)
}

/// Same result as `orbit`, computed with a parallel transform sweep.
pub fn orbit_parallel(k: &Rational, height: u32) -> Result<Vec<(Rational, ClassWitness)>> {
    orbit_impl(k, height, true)
}

fn pow10(p: u32) -> Int {
    Int::from(10).pow(p)
}

fn truncate_to_scale(r: &Rational, scale: &Int) -> Rational {
    let scaled = (r * Rational::from_integer(scale.clone())).floor();
    scaled / Rational::from_integer(scale.clone())
}

fn eval_f64(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Exact-arithmetic Newton refinement from an f64 seed, truncated to a
/// fixed decimal scale each step, until |f(r)| < bound.
fn newton_certified(
    f: &RatPolynomial,
    fprime: &RatPolynomial,
    seed: f64,
    digits: u32,
    bound: &Rational,
) -> Result<Rational> {
    for attempt in 0..6u32 {
        let scale = pow10((digits + 16) << attempt);
        let start = Rational::from_float(seed)
            .ok_or_else(|| Error::Internal("numeric seed is not finite".into()))?;
        let mut r = truncate_to_scale(&start, &scale);
        for _ in 0..32 {
            if f.eval(&r).abs() < *bound {
                return Ok(r);
            }
            let slope = fprime.eval(&r);
            if slope.is_zero() {
                break;
            }
            let step = f.eval(&r) / slope;
            r = truncate_to_scale(&(&r - step), &scale);
        }
        if f.eval(&r).abs() < *bound {
            return Ok(r);
        }
    }
    Err(Error::Internal(
        "numeric root refinement failed to certify the residual bound".into(),
    ))
}

/// The three real roots of the irreducible family cubic, descending,
/// as rationals certified to satisfy |f_k(r)| < 10^(−digits).
pub fn approx_roots(k: &Rational, digits: u32) -> Result<[Rational; 3]> {
    let spec = FieldSpec::new(k.clone())?;
    let f = spec.poly().clone();
    let kf = k
        .to_f64()
        .filter(|v: &f64| v.is_finite())
        .ok_or_else(|| Error::Domain("parameter too large for numeric roots".into()))?;

    // Depressed form t³ + pt + q via x = t + k/3; three real roots mean
    // p < 0 and the trigonometric parametrization applies.
    let b = -kf;
    let c = kf - 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + 1.0;
    let m = 2.0 * (-p / 3.0).sqrt();
    let theta = (3.0 * q / (p * m)).clamp(-1.0, 1.0).acos();

    let coeffs_f64: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|r| r.to_f64().unwrap_or(f64::NAN))
        .collect();
    let deriv_f64: Vec<f64> = coeffs_f64
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, v)| v * i as f64)
        .collect();

    let fprime = f.derivative();
    let bound = Rational::new(Int::one(), pow10(digits));
    let mut roots: Vec<Rational> = Vec::with_capacity(3);
    for i in 0..3 {
        let angle = theta / 3.0 - 2.0 * std::f64::consts::PI * (i as f64) / 3.0;
        let mut seed = m * angle.cos() + kf / 3.0;
        for _ in 0..4 {
            let slope = eval_f64(&deriv_f64, seed);
            if slope == 0.0 || !slope.is_finite() {
                break;
            }
            seed -= eval_f64(&coeffs_f64, seed) / slope;
        }
        roots.push(newton_certified(&f, &fprime, seed, digits, &bound)?);
    }
    roots.sort();
    roots.reverse();
    assert!(
        roots[0] != roots[1] && roots[1] != roots[2],
        "the three real roots of an irreducible family cubic are distinct"
    );
    Ok([roots[0].clone(), roots[1].clone(), roots[2].clone()])
}

/// Human-readable classification summary used by the CLI.
pub fn describe(c: &Classification) -> String {
    match c {
        Classification::Degenerate { roots } => {
            let shown: Vec<String> = roots.iter().map(format_rational).collect();
            format!("degenerate, roots {{{}}}", shown.join(", "))
        }
        Classification::Generating { discriminant, sqrt_discriminant } => format!(
            "generating, discriminant {} = ({})^2",
            format_rational(discriminant),
            format_rational(sqrt_discriminant)
        ),
    }
}

//! Exact arithmetic in Q(α) where α is a root of x³ − kx² + (k−3)x + 1.
//!
//! `FieldSpec` fixes the parameter k and rejects parameters whose cubic
//! has a rational root, so the quotient is always a field. Elements are
//! stored fully reduced in the power basis {1, α, α²}; equality is
//! component-wise. Elements given in Möbius form (aα+b)/(cα+d) can be
//! brought to the basis two independent ways: closed-form coefficients
//! and extended-Euclid division, and their minimal polynomial likewise
//! has a closed form checked against the characteristic polynomial of
//! the multiplication matrix.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::moebius::{ClassWitness, MoebiusMap};
use crate::poly::{rational_roots, RatPolynomial};
use crate::rational::{format_rational, parse_rational, rat_int, Int, Rational};

/// x³ − kx² + (k−3)x + 1 as a polynomial, defined for every rational k.
pub fn family_poly(k: &Rational) -> RatPolynomial {
    RatPolynomial::new(vec![
        Rational::one(),
        k - rat_int(3),
        -k,
        Rational::one(),
    ])
}

/// A parameter k whose cubic x³ − kx² + (k−3)x + 1 is irreducible,
/// together with that cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    k: Rational,
    f: RatPolynomial,
}

impl FieldSpec {
    pub fn new(k: Rational) -> Result<Self> {
        let f = family_poly(&k);
        if !rational_roots(&f)?.is_empty() {
            return Err(Error::Domain(format!(
                "parameter {} is degenerate: its cubic has rational roots",
                format_rational(&k)
            )));
        }
        Ok(FieldSpec { k, f })
    }

    pub fn from_i64(k: i64) -> Result<Self> {
        Self::new(rat_int(k))
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    pub fn poly(&self) -> &RatPolynomial {
        &self.f
    }
}

/// An element x₀ + x₁α + x₂α², always reduced (degree < 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    spec: FieldSpec,
    coeffs: [Rational; 3],
}

impl FieldElement {
    pub fn new(spec: FieldSpec, coeffs: [Rational; 3]) -> Self {
        FieldElement { spec, coeffs }
    }

    /// Reduces an arbitrary-degree representative modulo the field cubic.
    pub fn from_polynomial(spec: FieldSpec, p: &RatPolynomial) -> Self {
        let (_, rem) = p.div_rem(spec.poly()).expect("field cubic is nonzero");
        let coeffs = [rem.coeff(0), rem.coeff(1), rem.coeff(2)];
        FieldElement { spec, coeffs }
    }

    pub fn constant(spec: FieldSpec, r: Rational) -> Self {
        FieldElement { spec, coeffs: [r, Rational::zero(), Rational::zero()] }
    }

    pub fn zero(spec: FieldSpec) -> Self {
        Self::constant(spec, Rational::zero())
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::constant(spec, Rational::one())
    }

    pub fn alpha(spec: FieldSpec) -> Self {
        FieldElement { spec, coeffs: [Rational::zero(), Rational::one(), Rational::zero()] }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[Rational; 3] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1].is_zero() && self.coeffs[2].is_zero() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn to_polynomial(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.to_vec())
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::Domain(format!(
                "elements live in different fields (k = {} vs k = {})",
                format_rational(self.spec.k()),
                format_rational(other.spec.k())
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let coeffs = [
            &self.coeffs[0] + &other.coeffs[0],
            &self.coeffs[1] + &other.coeffs[1],
            &self.coeffs[2] + &other.coeffs[2],
        ];
        Ok(FieldElement { spec: self.spec.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let coeffs = [
            &self.coeffs[0] - &other.coeffs[0],
            &self.coeffs[1] - &other.coeffs[1],
            &self.coeffs[2] - &other.coeffs[2],
        ];
        Ok(FieldElement { spec: self.spec.clone(), coeffs })
    }

    pub fn neg(&self) -> Self {
        let coeffs = [-&self.coeffs[0], -&self.coeffs[1], -&self.coeffs[2]];
        FieldElement { spec: self.spec.clone(), coeffs }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let coeffs = [&self.coeffs[0] * r, &self.coeffs[1] * r, &self.coeffs[2] * r];
        FieldElement { spec: self.spec.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let product = &self.to_polynomial() * &other.to_polynomial();
        Ok(Self::from_polynomial(self.spec.clone(), &product))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// the field cubic, which always terminates in a constant gcd.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let (g, s, _) = ext_gcd(&self.to_polynomial(), self.spec.poly());
        if g.degree() != Some(0) {
            return Err(Error::Internal(
                "field cubic shares a factor with a nonzero element".into(),
            ));
        }
        let g0 = g.coeff(0);
        let inv_poly = s.scale(&(Rational::one() / g0));
        Ok(Self::from_polynomial(self.spec.clone(), &inv_poly))
    }

    /// The order-3 automorphism α ↦ (α−1)/α applied coefficient-wise.
    pub fn conj(&self) -> Self {
        let spec = self.spec.clone();
        let alpha = Self::alpha(spec.clone());
        let one = Self::one(spec.clone());
        let sigma = alpha
            .sub(&one)
            .expect("same field")
            .mul(&alpha.inv().expect("alpha is a unit"))
            .expect("same field");
        let sigma_sq = sigma.mul(&sigma).expect("same field");
        let mut acc = Self::constant(spec, self.coeffs[0].clone());
        acc = acc.add(&sigma.scale(&self.coeffs[1])).expect("same field");
        acc.add(&sigma_sq.scale(&self.coeffs[2])).expect("same field")
    }

    /// Characteristic polynomial of multiplication by this element on
    /// {1, α, α²}: the minimal polynomial for elements outside Q, and
    /// (x − u)³ for a rational constant u.
    pub fn minpoly_oracle(&self) -> RatPolynomial {
        let m = self.multiplication_matrix();
        let tr = &m[0][0] + &m[1][1] + &m[2][2];
        let s2 = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
            + (&m[0][0] * &m[2][2] - &m[0][2] * &m[2][0])
            + (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]);
        let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
        RatPolynomial::new(vec![-det, s2, -tr, Rational::one()])
    }

    /// Sum of the three conjugates.
    pub fn trace(&self) -> Rational {
        -self.minpoly_oracle().coeff(2)
    }

    /// Product of the three conjugates.
    pub fn norm(&self) -> Rational {
        -self.minpoly_oracle().coeff(0)
    }

    /// `m[i][j]` is the {1,α,α²}-coordinate i of self·αʲ.
    fn multiplication_matrix(&self) -> [[Rational; 3]; 3] {
        let mut cols: Vec<[Rational; 3]> = Vec::with_capacity(3);
        let mut power = Self::one(self.spec.clone());
        for _ in 0..3 {
            let prod = self.mul(&power).expect("same field");
            cols.push(prod.coeffs.clone());
            power = power
                .mul(&Self::alpha(self.spec.clone()))
                .expect("same field");
        }
        let mut m: [[Rational; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m[i][j] = v;
            }
        }
        m
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*A + {}*A^2",
            format_rational(&self.coeffs[0]),
            format_rational(&self.coeffs[1]),
            format_rational(&self.coeffs[2])
        )
    }
}

/// Parses "x0 + x1*A + x2*A^2" (terms in any order, signs attached or
/// separated, components rational).
pub fn parse_element(spec: FieldSpec, s: &str) -> Result<FieldElement> {
    let cleaned: String = s
        .replace('\u{2212}', "-")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    if cleaned.is_empty() || cleaned.ends_with('+') || cleaned.ends_with('-') {
        return Err(Error::Parse(format!("incomplete element text {s:?}")));
    }
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-')
            && !cur.is_empty()
            && !matches!(prev, Some('*') | Some('/') | Some('^') | Some('+') | Some('-'))
        {
            terms.push(std::mem::take(&mut cur));
            if ch == '-' {
                cur.push('-');
            }
        } else if cur.is_empty() && ch == '+' {
            // leading plus carries no information
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    let mut coeffs = [Rational::zero(), Rational::zero(), Rational::zero()];
    for term in &terms {
        let (body, power) = if let Some(stripped) = term.strip_suffix("A^2") {
            (stripped, 2usize)
        } else if let Some(stripped) = term.strip_suffix('A') {
            (stripped, 1)
        } else {
            (term.as_str(), 0)
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        let value = match body {
            "" => Rational::one(),
            "-" => -Rational::one(),
            _ => parse_rational(body)?,
        };
        coeffs[power] += value;
    }
    Ok(FieldElement::new(spec, coeffs))
}

/// Extended Euclid on polynomials: returns (g, s, t) with s·a + t·b = g.
fn ext_gcd(
    a: &RatPolynomial,
    b: &RatPolynomial,
) -> (RatPolynomial, RatPolynomial, RatPolynomial) {
    let one = RatPolynomial::from_i64(&[1]);
    let zero = RatPolynomial::zero();
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (one.clone(), zero.clone());
    let (mut old_t, mut t) = (zero, one);
    while !r.is_zero() {
        let (q, rem) = old_r.div_rem(&r).expect("nonzero divisor");
        old_r = std::mem::replace(&mut r, rem);
        let s_next = &old_s - &(&q * &s);
        old_s = std::mem::replace(&mut s, s_next);
        let t_next = &old_t - &(&q * &t);
        old_t = std::mem::replace(&mut t, t_next);
    }
    (old_r, old_s, old_t)
}

/// (aα+b)/(cα+d) with ad − bc ≠ 0, entries normalized projectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusElement {
    spec: FieldSpec,
    map: MoebiusMap,
}

impl MoebiusElement {
    pub fn new(
        spec: FieldSpec,
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
    ) -> Result<Self> {
        Ok(MoebiusElement { spec, map: MoebiusMap::new(a, b, c, d)? })
    }

    pub fn from_i64(spec: FieldSpec, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Ok(MoebiusElement { spec, map: MoebiusMap::from_i64(a, b, c, d)? })
    }

    pub fn from_map(spec: FieldSpec, map: MoebiusMap) -> Self {
        MoebiusElement { spec, map }
    }

    pub fn from_witness(spec: FieldSpec, w: &ClassWitness) -> Self {
        MoebiusElement { spec, map: w.to_map() }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn map(&self) -> &MoebiusMap {
        &self.map
    }

    /// The canonical integer entries (a, b, c, d).
    pub fn entries(&self) -> (Int, Int, Int, Int) {
        let (a, b, c, d) = self.map.entries();
        (
            a.numer().clone(),
            b.numer().clone(),
            c.numer().clone(),
            d.numer().clone(),
        )
    }

    /// Basis form by the closed coefficient formulas: the element equals
    /// (a₁α² + b₁α + c₁)/d₁ with
    ///   a₁ = −c(bc − da)
    ///   b₁ = (ck + d)(bc − da)
    ///   c₁ = ac² − bc²k + 3bc² − bdck − d²b
    ///   d₁ = c³ + 3c²d − c²dk − cd²k − d³
    /// and d₁ is (minus) the norm of cα + d, hence nonzero here.
    pub fn to_field_element(&self) -> FieldElement {
        let (a, b, c, d) = self.map.entries();
        let k = self.spec.k();
        let three = rat_int(3);
        let m = b * c - d * a;
        let a1 = -(c * &m);
        let b1 = (c * k + d) * &m;
        let c1 = a * c * c - b * c * c * k + &three * b * c * c - b * d * c * k - d * d * b;
        let d1 = c * c * c + &three * c * c * d - c * c * d * k - c * d * d * k - d * d * d;
        assert!(
            !d1.is_zero(),
            "basis denominator vanished for an invertible element"
        );
        FieldElement::new(self.spec.clone(), [&c1 / &d1, &b1 / &d1, &a1 / &d1])
    }

    /// Basis form the independent way: (aα + b) · (cα + d)⁻¹.
    pub fn to_field_element_by_division(&self) -> FieldElement {
        let (a, b, c, d) = self.map.entries();
        let spec = self.spec.clone();
        let alpha = FieldElement::alpha(spec.clone());
        let num = alpha
            .scale(a)
            .add(&FieldElement::constant(spec.clone(), b.clone()))
            .expect("same field");
        let den = alpha
            .scale(c)
            .add(&FieldElement::constant(spec, d.clone()))
            .expect("same field");
        num.mul(&den.inv().expect("cα+d is nonzero in the field"))
            .expect("same field")
    }

    /// Monic cubic satisfied by (aα+b)/(cα+d), by the closed coefficient
    /// formulas over the same denominator d₁ as the basis form. Checked
    /// against `minpoly_oracle` by callers and the self-test suites.
    pub fn minpoly_closed_form(&self) -> RatPolynomial {
        let (a, b, c, d) = self.map.entries();
        let k = self.spec.k();
        let r = |n: i64| rat_int(n);
        let denom = c * c * c + r(3) * c * c * d - c * c * d * k - c * d * d * k - d * d * d;
        assert!(
            !denom.is_zero(),
            "minimal-polynomial denominator vanished for an invertible element"
        );
        let num2 = r(2) * b * d * c * k + r(3) * d * d * b + b * c * c * k
            - r(3) * a * c * c
            - r(3) * b * c * c
            + k * d * d * a
            + r(2) * c * k * d * a
            - r(6) * c * d * a;
        let num1 = -r(3) * c * a * a + c * b * b * k - r(6) * c * b * a
            + r(2) * c * b * k * a
            + r(2) * b * d * k * a
            + a * a * k * d
            + r(3) * d * b * b
            - r(3) * a * a * d;
        let num0 = -r(3) * b * a * a + b * b * b + b * b * k * a + b * k * a * a - a * a * a;
        RatPolynomial::new(vec![
            &num0 / &denom,
            -(&num1 / &denom),
            &num2 / &denom,
            Rational::one(),
        ])
    }
}

//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so
//! the degree is well-defined except for the zero polynomial, whose degree
//! is `None`, so consumers must check. Includes exact rational root finding
//! (divisor-pair search on the primitive integer form), the cubic
//! discriminant, and the primitive-integer-form decomposition.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPolynomial {
    /// `coeffs[i]` multiplies `x^i`; the last entry is nonzero.
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    /// Convenience constructor from machine integers, lowest degree first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(Int::from(c))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        RatPolynomial { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(Int::from(i)))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * divisor + r` with
    /// `deg r < deg divisor`. The zero divisor is a domain error.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let lead = divisor.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().expect("nonempty") / &lead;
            if !factor.is_zero() {
                for i in 0..dd {
                    let delta = &factor * &divisor.coeffs[i];
                    rem[k + i] = &rem[k + i] - delta;
                }
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;
    fn add(self, rhs: Self) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;
    fn sub(self, rhs: Self) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;
    fn neg(self) -> RatPolynomial {
        RatPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: Self) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = match i {
                0 => String::new(),
                1 => "x".to_owned(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else if mag.denom().is_one() {
                write!(f, "{}*{var}", mag.numer())?;
            } else {
                write!(f, "({})*{var}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

/// Writes nonzero `p` as `scale * q` where `q` has integer coefficients,
/// content 1 and positive leading coefficient; `scale` carries the sign of
/// `p`'s leading coefficient.
pub fn primitive_integer_form(p: &RatPolynomial) -> Result<(RatPolynomial, Rational)> {
    if p.is_zero() {
        return Err(Error::Domain("zero polynomial has no primitive form".into()));
    }
    let mut denom_lcm = Int::one();
    for c in p.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<Int> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let mut content = Int::zero();
    for v in &ints {
        content = content.gcd(v);
    }
    let negative_lead = ints.last().expect("nonzero").is_negative();
    if negative_lead {
        content = -content;
    }
    let q = RatPolynomial::new(
        ints.iter().map(|v| Rational::from_integer(v / &content)).collect(),
    );
    Ok((q, Rational::new(content, denom_lcm)))
}

fn positive_divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    debug_assert!(!n.is_zero());
    // Trial division. Coefficient magnitudes stay at desk scale here (the
    // witness cubics have small entries), so no factorization backend.
    let mut divs = Vec::new();
    if let Ok(small) = i128::try_from(&n) {
        let mut i: i128 = 1;
        while i * i <= small {
            if small % i == 0 {
                divs.push(Int::from(i));
                if i * i != small {
                    divs.push(Int::from(small / i));
                }
            }
            i += 1;
        }
    } else {
        let mut i = Int::one();
        loop {
            let sq = &i * &i;
            if sq > n {
                break;
            }
            if (&n % &i).is_zero() {
                divs.push(i.clone());
                if sq != n {
                    divs.push(&n / &i);
                }
            }
            i += 1;
        }
    }
    divs
}

/// All rational roots of `p` with multiplicities, sorted ascending.
///
/// Clears denominators to the primitive integer form, walks the divisor
/// pairs of trailing/leading coefficients, confirms each candidate by
/// evaluation and deflates by the confirmed factor.
pub fn rational_roots(p: &RatPolynomial) -> Result<Vec<(Rational, usize)>> {
    if p.is_zero() {
        return Err(Error::Domain("rational roots of the zero polynomial".into()));
    }
    let mut out: Vec<(Rational, usize)> = Vec::new();
    let mut work = p.clone();

    // x = 0 roots first.
    let mut zero_mult = 0usize;
    while !work.is_zero() && work.coeff(0).is_zero() && work.degree() > Some(0) {
        work = work.div_rem(&RatPolynomial::from_i64(&[0, 1]))?.0;
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((Rational::zero(), zero_mult));
    }
    if work.degree() == Some(0) || work.degree().is_none() {
        out.sort_by(|a, b| a.0.cmp(&b.0));
        return Ok(out);
    }

    let (q, _) = primitive_integer_form(&work)?;
    let trailing = q.coeff(0).to_integer();
    let leading = q.leading().expect("nonzero").to_integer();

    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    for num in positive_divisors(&trailing) {
        for den in positive_divisors(&leading) {
            let r = Rational::new(num.clone(), den);
            candidates.insert(-&r);
            candidates.insert(r);
        }
    }

    for cand in candidates {
        if work.degree() == Some(0) {
            break;
        }
        if !work.eval(&cand).is_zero() {
            continue;
        }
        let linear = RatPolynomial::new(vec![-&cand, Rational::one()]);
        let mut mult = 0usize;
        loop {
            let (quot, rem) = work.div_rem(&linear)?;
            if !rem.is_zero() {
                break;
            }
            work = quot;
            mult += 1;
            if work.degree().is_none() {
                break;
            }
        }
        debug_assert!(mult > 0);
        out.push((cand, mult));
    }

    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Discriminant `18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2` of a cubic
/// `ax^3 + bx^2 + cx + d`. Anything but degree 3 is a domain error.
pub fn cubic_discriminant(p: &RatPolynomial) -> Result<Rational> {
    if p.degree() != Some(3) {
        return Err(Error::Domain("discriminant requires a cubic".into()));
    }
    let a = p.coeff(3);
    let b = p.coeff(2);
    let c = p.coeff(1);
    let d = p.coeff(0);
    let r18 = Rational::from_integer(Int::from(18));
    let r4 = Rational::from_integer(Int::from(4));
    let r27 = Rational::from_integer(Int::from(27));
    Ok(&r18 * &a * &b * &c * &d - &r4 * &b * &b * &b * &d + &b * &b * &c * &c
        - &r4 * &a * &c * &c * &c
        - &r27 * &a * &a * &d * &d)
}

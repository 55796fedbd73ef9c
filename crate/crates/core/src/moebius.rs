//! Linear fractional maps over Q and the two-parameter witness ring.
//!
//! A `MoebiusMap` is kept in canonical projective form: coprime integer
//! entries with the first nonzero of (a, b, c, d) positive, so equality is
//! component-wise. The order-3 generator y : z ↦ (z−1)/z has matrix
//! Y = [[1,−1],[1,0]] with Y² = Y − I and Y³ = −I; the ring of matrices
//! d·I + c·Y is commutative and every nonzero element is invertible
//! (its determinant c² + cd + d² is positive definite). `ClassWitness`
//! names such an element by the normalized pair (c, d).

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_int, Int, Rational};

/// A rational number or the point at infinity, so that maps act totally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendedRational {
    Finite(Rational),
    Infinity,
}

impl ExtendedRational {
    pub fn finite(r: Rational) -> Self {
        ExtendedRational::Finite(r)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(r) => Some(r),
            ExtendedRational::Infinity => None,
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(r) => write!(f, "{}", crate::rational::format_rational(r)),
            ExtendedRational::Infinity => write!(f, "inf"),
        }
    }
}

/// z ↦ (az+b)/(cz+d) with ad − bc ≠ 0, in canonical projective form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusMap {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

/// Scales to coprime integers with the first nonzero entry positive.
fn normalize_entries(vals: [Rational; 4]) -> [Rational; 4] {
    let mut lcm = Int::one();
    for v in &vals {
        lcm = lcm.lcm(v.denom());
    }
    let lcm_r = Rational::from_integer(lcm);
    let mut ints: Vec<Int> = vals.iter().map(|v| (v * &lcm_r).to_integer()).collect();
    let mut g = Int::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        g = -g;
    }
    for v in &mut ints {
        *v = &*v / &g;
    }
    let mut it = ints.into_iter().map(Rational::from_integer);
    [
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ]
}

impl MoebiusMap {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::Domain(
                "moebius map requires nonzero determinant".into(),
            ));
        }
        let [a, b, c, d] = normalize_entries([a, b, c, d]);
        Ok(MoebiusMap { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(
            rat_int(a),
            rat_int(b),
            rat_int(c),
            rat_int(d),
        )
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1).expect("identity is invertible")
    }

    /// The generator y : z ↦ (z−1)/z.
    pub fn y_generator() -> Self {
        Self::from_i64(1, -1, 1, 0).expect("y is invertible")
    }

    pub fn entries(&self) -> (&Rational, &Rational, &Rational, &Rational) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Matrix product: self after other, so apply(compose(f,g), z) =
    /// apply(f, apply(g, z)).
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(
            &self.a * &other.a + &self.b * &other.c,
            &self.a * &other.b + &self.b * &other.d,
            &self.c * &other.a + &self.d * &other.c,
            &self.c * &other.b + &self.d * &other.d,
        )
        .expect("product of invertible maps is invertible")
    }

    /// The adjugate (d, −b, −c, a), which is the projective inverse.
    pub fn inverse(&self) -> Self {
        Self::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
            .expect("adjugate of an invertible map is invertible")
    }

    /// Errors at the pole z = −d/c; use `apply_ext` for total action.
    pub fn apply(&self, z: &Rational) -> Result<Rational> {
        let denom = &self.c * z + &self.d;
        if denom.is_zero() {
            return Err(Error::Domain(format!(
                "map has a pole at {}",
                crate::rational::format_rational(z)
            )));
        }
        Ok((&self.a * z + &self.b) / denom)
    }

    pub fn apply_ext(&self, z: &ExtendedRational) -> ExtendedRational {
        match z {
            ExtendedRational::Infinity => {
                if self.c.is_zero() {
                    ExtendedRational::Infinity
                } else {
                    ExtendedRational::Finite(&self.a / &self.c)
                }
            }
            ExtendedRational::Finite(z) => {
                let denom = &self.c * z + &self.d;
                if denom.is_zero() {
                    ExtendedRational::Infinity
                } else {
                    ExtendedRational::Finite((&self.a * z + &self.b) / denom)
                }
            }
        }
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({})z+({}))/(({})z+({}))",
            self.a.numer(),
            self.b.numer(),
            self.c.numer(),
            self.d.numer()
        )
    }
}

/// True exactly when ad − bc = 0, i.e. (aα+b)/(cα+d) collapses to a
/// rational for every irrational α. All-zero input is a domain error.
pub fn is_rational_detector(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<bool> {
    if a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero() {
        return Err(Error::Domain("all-zero moebius coefficients".into()));
    }
    Ok((a * d - b * c).is_zero())
}

/// Normalized integer pair (c, d), not both zero, naming the matrix
/// d·I + c·Y. Ordering is by height, then |c|, then |d|, with c ≥ 0
/// preferred; this is the enumeration order used for orbit and witness lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassWitness {
    c: Int,
    d: Int,
}

impl ClassWitness {
    pub fn new(c: Int, d: Int) -> Result<Self> {
        if c.is_zero() && d.is_zero() {
            return Err(Error::Domain("witness (0,0) is not allowed".into()));
        }
        let g = c.gcd(&d);
        let (mut c, mut d) = (c / &g, d / &g);
        if d.is_negative() || (d.is_zero() && c.is_negative()) {
            c = -c;
            d = -d;
        }
        Ok(ClassWitness { c, d })
    }

    pub fn from_i64(c: i64, d: i64) -> Result<Self> {
        Self::new(Int::from(c), Int::from(d))
    }

    pub fn identity() -> Self {
        Self::from_i64(0, 1).expect("identity witness")
    }

    pub fn c(&self) -> &Int {
        &self.c
    }

    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn height(&self) -> Int {
        self.c.abs().max(self.d.abs())
    }

    /// det(d·I + c·Y) = c² + cd + d², positive for every witness.
    pub fn det(&self) -> Int {
        &self.c * &self.c + &self.c * &self.d + &self.d * &self.d
    }

    /// The map ((c+d)z − c)/(cz + d), i.e. d·I + c·Y.
    pub fn to_map(&self) -> MoebiusMap {
        MoebiusMap::new(
            Rational::from_integer(&self.c + &self.d),
            Rational::from_integer(-&self.c),
            Rational::from_integer(self.c.clone()),
            Rational::from_integer(self.d.clone()),
        )
        .expect("witness determinant c^2+cd+d^2 is positive")
    }

    /// (c₁d₂ + c₂d₁ + c₁c₂, d₁d₂ − c₁c₂), from Y² = Y − I.
    pub fn compose(&self, other: &Self) -> Self {
        let c = &self.c * &other.d + &other.c * &self.d + &self.c * &other.c;
        let d = &self.d * &other.d - &self.c * &other.c;
        // (0,0) would need a zero divisor in the ring, which t²−t+1
        // irreducible over Q rules out.
        Self::new(c, d).expect("witness ring has no zero divisors")
    }

    /// (−c, c+d): the adjugate of d·I + c·Y, still in the ring.
    pub fn inverse(&self) -> Self {
        Self::new(-&self.c, &self.c + &self.d).expect("inverse of a nonzero witness is nonzero")
    }
}

impl PartialOrd for ClassWitness {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClassWitness {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |w: &Self| (w.height(), w.c.abs(), w.d.abs(), w.c.is_negative());
        key(self).cmp(&key(other))
    }
}

impl fmt::Display for ClassWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.c, self.d)
    }
}

/// Parses "c:d" with ASCII or U+2212 minus signs.
pub fn parse_witness(s: &str) -> Result<ClassWitness> {
    let cleaned: String = s.trim().replace('\u{2212}', "-");
    let mut parts = cleaned.split(':');
    let (c, d) = match (parts.next(), parts.next(), parts.next()) {
        (Some(c), Some(d), None) => (c.trim(), d.trim()),
        _ => {
            return Err(Error::Parse(format!(
                "witness must look like \"c:d\", got {s:?}"
            )))
        }
    };
    let c: Int = c
        .parse()
        .map_err(|_| Error::Parse(format!("bad witness entry {c:?}")))?;
    let d: Int = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad witness entry {d:?}")))?;
    match ClassWitness::new(c, d) {
        Ok(w) => Ok(w),
        Err(_) => Err(Error::Parse("witness 0:0 is not allowed".into())),
    }
}

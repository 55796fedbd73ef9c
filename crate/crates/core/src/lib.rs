//! Exact arithmetic for the one-parameter family of cyclic cubic fields
//! generated by roots of x³ − kx² + (k−3)x + 1.
//!
//! The crate decides when two rational parameters generate the same
//! field, produces the explicit Möbius witness relating their roots,
//! enumerates bounded equivalence classes, converts Möbius-form elements
//! (aα+b)/(cα+d) to the power basis, and computes minimal polynomials
//! two independent ways (closed form and multiplication-matrix
//! characteristic polynomial). Everything is exact over arbitrary
//! precision rationals; floating point appears only in the seed step of
//! the certified numeric root display.

pub mod classify;
pub mod error;
pub mod field;
pub mod moebius;
pub mod poly;
pub mod rational;
pub mod selftest;

pub use classify::{
    approx_roots, classify, degenerate_param, degenerate_preimage, describe, discriminant_k,
    equivalent, orbit, orbit_parallel, transform_param, verify_witness, witness_cubic,
    Classification, EquivalenceResult,
};
pub use error::{Error, Result};
pub use field::{family_poly, parse_element, FieldElement, FieldSpec, MoebiusElement};
pub use moebius::{
    is_rational_detector, parse_witness, ClassWitness, ExtendedRational, MoebiusMap,
};
pub use poly::{cubic_discriminant, primitive_integer_form, rational_roots, RatPolynomial};
pub use rational::{
    decimal_string, format_rational, parse_rational, rational_sqrt, Int, Rational,
};

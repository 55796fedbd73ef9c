//! Python bindings for the simplest-cubic-field library.
//!
//! Exact values cross the language boundary as strings (`"p/q"`, witness
//! `"c:d"`, element `"x0 + x1*A + x2*A^2"`) so nothing is ever rounded.
//! Domain and parse problems raise `ValueError`; a failed internal
//! cross-check raises `RuntimeError`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use scf_core::{
    approx_roots, classify, decimal_string, describe, equivalent as core_equivalent,
    format_rational, orbit as core_orbit, parse_element, parse_rational, parse_witness,
    selftest as core_selftest, transform_param, verify_witness, Classification, Error,
    FieldElement, FieldSpec, MoebiusElement,
};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::Domain(_) => PyValueError::new_err(e.to_string()),
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

trait ToPyResult<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> ToPyResult<T> for scf_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py_err)
    }
}

/// A field of the family x^3 - k*x^2 + (k-3)*x + 1, for a non-degenerate k.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct CubicField {
    spec: FieldSpec,
}

#[pymethods]
impl CubicField {
    #[new]
    fn new(k: &str) -> PyResult<Self> {
        let k = parse_rational(k).py()?;
        Ok(CubicField {
            spec: FieldSpec::new(k).py()?,
        })
    }

    /// The defining parameter, as a "p/q" string.
    fn k(&self) -> String {
        format_rational(self.spec.k())
    }

    /// The defining polynomial, e.g. "x^3 - 3*x^2 + 1".
    fn poly(&self) -> String {
        self.spec.poly().to_string()
    }

    /// The distinguished root A of the defining polynomial.
    fn alpha(&self) -> CubicElement {
        CubicElement {
            inner: FieldElement::alpha(self.spec.clone()),
        }
    }

    /// Parses "x0 + x1*A + x2*A^2" (terms optional, any order).
    fn element(&self, text: &str) -> PyResult<CubicElement> {
        Ok(CubicElement {
            inner: parse_element(self.spec.clone(), text).py()?,
        })
    }

    /// The element (a*A + b)/(c*A + d); entries are "p/q" strings.
    fn quotient(&self, a: &str, b: &str, c: &str, d: &str) -> PyResult<CubicElement> {
        let q = MoebiusElement::new(
            self.spec.clone(),
            parse_rational(a).py()?,
            parse_rational(b).py()?,
            parse_rational(c).py()?,
            parse_rational(d).py()?,
        )
        .py()?;
        Ok(CubicElement {
            inner: q.to_field_element(),
        })
    }

    fn __repr__(&self) -> String {
        format!("CubicField(k={})", self.k())
    }
}

/// An element of a `CubicField`, kept in exact power-basis coordinates.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct CubicElement {
    inner: FieldElement,
}

#[pymethods]
impl CubicElement {
    /// Power-basis coordinates [x0, x1, x2] as "p/q" strings.
    fn coordinates(&self) -> Vec<String> {
        self.inner.coeffs().iter().map(format_rational).collect()
    }

    /// Minimal polynomial over the rationals (characteristic-polynomial route).
    fn minpoly(&self) -> String {
        self.inner.minpoly_oracle().to_string()
    }

    fn trace(&self) -> String {
        format_rational(&self.inner.trace())
    }

    fn norm(&self) -> String {
        format_rational(&self.inner.norm())
    }

    /// Image under the order-3 field automorphism.
    fn conj(&self) -> CubicElement {
        CubicElement {
            inner: self.inner.conj(),
        }
    }

    fn inv(&self) -> PyResult<CubicElement> {
        Ok(CubicElement {
            inner: self.inner.inv().py()?,
        })
    }

    fn __add__(&self, other: &CubicElement) -> PyResult<CubicElement> {
        Ok(CubicElement {
            inner: self.inner.add(&other.inner).py()?,
        })
    }

    fn __sub__(&self, other: &CubicElement) -> PyResult<CubicElement> {
        Ok(CubicElement {
            inner: self.inner.sub(&other.inner).py()?,
        })
    }

    fn __mul__(&self, other: &CubicElement) -> PyResult<CubicElement> {
        Ok(CubicElement {
            inner: self.inner.mul(&other.inner).py()?,
        })
    }

    fn __neg__(&self) -> CubicElement {
        CubicElement {
            inner: self.inner.neg(),
        }
    }

    fn __eq__(&self, other: &CubicElement) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CubicElement({})", self.inner)
    }
}

/// Applies the witness "c:d" (or separate integers) to the parameter k.
#[pyfunction]
fn transform(c: &str, d: &str, k: &str) -> PyResult<String> {
    let w = parse_witness(&format!("{c}:{d}")).py()?;
    let k = parse_rational(k).py()?;
    Ok(format_rational(&transform_param(&w, &k).py()?))
}

/// Returns (equivalent, witnesses) where witnesses are "c:d" strings.
#[pyfunction]
fn equivalent(k: &str, k2: &str) -> PyResult<(bool, Vec<String>)> {
    let k = parse_rational(k).py()?;
    let k2 = parse_rational(k2).py()?;
    let res = core_equivalent(&k, &k2);
    let wits = res.witnesses.iter().map(|w| w.to_string()).collect();
    Ok((res.equivalent, wits))
}

/// One-line classification of k.
#[pyfunction(name = "classify")]
fn classify_param(k: &str) -> PyResult<String> {
    let k = parse_rational(k).py()?;
    Ok(describe(&classify(&k)))
}

/// Minimal polynomial of (a*A + b)/(c*A + d), closed form cross-checked
/// against the characteristic polynomial.
#[pyfunction]
fn minpoly(a: &str, b: &str, c: &str, d: &str, k: &str) -> PyResult<String> {
    let field = CubicField::new(k)?;
    let q = MoebiusElement::new(
        field.spec.clone(),
        parse_rational(a).py()?,
        parse_rational(b).py()?,
        parse_rational(c).py()?,
        parse_rational(d).py()?,
    )
    .py()?;
    let closed = q.minpoly_closed_form();
    let oracle = q.to_field_element().minpoly_oracle();
    if closed != oracle {
        return Err(PyRuntimeError::new_err(format!(
            "minimal-polynomial routes disagree: {closed} vs {oracle}"
        )));
    }
    Ok(closed.to_string())
}

/// Power-basis form of (a*A + b)/(c*A + d) as "x0 + x1*A + x2*A^2".
#[pyfunction]
fn basis(a: &str, b: &str, c: &str, d: &str, k: &str) -> PyResult<String> {
    let field = CubicField::new(k)?;
    let q = field.quotient(a, b, c, d)?;
    Ok(q.__str__())
}

/// Roots of the cubic for k, largest first: decimal strings with `digits`
/// certified digits, or exact rationals (ascending) when k is degenerate.
#[pyfunction]
#[pyo3(signature = (k, digits = 12))]
fn roots(k: &str, digits: u32) -> PyResult<Vec<String>> {
    let k = parse_rational(k).py()?;
    match classify(&k) {
        Classification::Degenerate { roots } => {
            Ok(roots.iter().map(format_rational).collect())
        }
        Classification::Generating { .. } => {
            let rs = approx_roots(&k, digits).py()?;
            Ok(rs.iter().map(|r| decimal_string(r, digits)).collect())
        }
    }
}

/// The degenerate parameter whose cubic has p/q as a root.
#[pyfunction]
fn degenerate_param(p: &str, q: &str) -> PyResult<String> {
    let p = parse_rational(p).py()?;
    let q = parse_rational(q).py()?;
    if !p.is_integer() || !q.is_integer() {
        return Err(PyValueError::new_err("p and q must be integers"));
    }
    let k = scf_core::degenerate_param(&p.to_integer(), &q.to_integer()).py()?;
    Ok(format_rational(&k))
}

/// Parameters reachable from k by witnesses of height at most `height`,
/// as (parameter, witness) string pairs; every row is verified symbolically.
#[pyfunction]
fn orbit(k: &str, height: u32) -> PyResult<Vec<(String, String)>> {
    let k = parse_rational(k).py()?;
    let rows = core_orbit(&k, height).py()?;
    let mut out = Vec::with_capacity(rows.len());
    for (k2, w) in rows {
        if !verify_witness(&k, &k2, &w).py()? {
            return Err(PyRuntimeError::new_err(format!(
                "orbit row {} via {w} fails the symbolic check",
                format_rational(&k2)
            )));
        }
        out.push((format_rational(&k2), w.to_string()));
    }
    Ok(out)
}

/// Runs every invariant suite; returns the names of failing suites.
#[pyfunction]
fn selftest() -> Vec<String> {
    core_selftest::run_all()
        .into_iter()
        .filter_map(|(name, r)| r.err().map(|e| format!("{name}: {e}")))
        .collect()
}

#[pymodule]
fn scf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<CubicField>()?;
    m.add_class::<CubicElement>()?;
    m.add_function(wrap_pyfunction!(transform, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(classify_param, m)?)?;
    m.add_function(wrap_pyfunction!(minpoly, m)?)?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(degenerate_param, m)?)?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}

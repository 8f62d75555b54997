//! Python bindings: `import pywedderburn`.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use wedderburn::arith::PrimePower;
use wedderburn::checks::deep_checks;
use wedderburn::complex_reps::{character_value, enumerate_irreducibles};
use wedderburn::formulas::{complex_counts_closed_form, rational_counts_closed_form};
use wedderburn::rational::{character_field_level, oracle};
use wedderburn::{
    DecompositionReport, ErrorKind, GroupParams, IrreducibleCharacter, OrbitDescriptor,
    Verification, WedderburnDecomposition,
};

/// `(suite, checked, failures)` per deep-check suite.
type CheckRows = Vec<(String, usize, Vec<String>)>;

create_exception!(pywedderburn, ValidationError, PyValueError);
create_exception!(pywedderburn, SizeBoundError, PyValueError);
create_exception!(pywedderburn, InconsistencyError, PyRuntimeError);

fn to_py(e: wedderburn::Error) -> PyErr {
    let msg = e.to_string();
    match e.kind() {
        ErrorKind::Validation => ValidationError::new_err(msg),
        ErrorKind::SizeBound => SizeBoundError::new_err(msg),
        ErrorKind::Internal => InconsistencyError::new_err(msg),
    }
}

fn report_for(params: &GroupParams, method: &str) -> PyResult<DecompositionReport> {
    match method {
        "closed-form" => DecompositionReport::closed_form(params),
        "oracle" => DecompositionReport::oracle(params),
        "both" => DecompositionReport::verified(params),
        other => {
            return Err(PyValueError::new_err(format!(
                "method must be 'closed-form', 'oracle' or 'both', got {other:?}"
            )))
        }
    }
    .map_err(to_py)
}

/// A multiset of simple components `mult * M_q(Q(zeta_{p^lambda}))`.
#[pyclass(name = "Decomposition", frozen)]
struct PyDecomposition {
    inner: WedderburnDecomposition,
}

#[pymethods]
impl PyDecomposition {
    /// Parses the compact text form, e.g. `"Q + 4*Q(z3) + M3(Q(z3))"`.
    #[staticmethod]
    fn parse(text: &str, p: u64) -> PyResult<Self> {
        let inner = wedderburn::parse_decomposition(text, p).map_err(to_py)?;
        Ok(PyDecomposition { inner })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    /// `(q, lambda, mult)` triples in canonical order.
    #[getter]
    fn components(&self) -> Vec<(u64, u32, u64)> {
        self.inner
            .components()
            .iter()
            .map(|c| (c.matrix_size, c.center_level, c.multiplicity))
            .collect()
    }

    /// Dimension over Q.
    fn dimension(&self) -> u128 {
        self.inner.dimension()
    }

    /// Keys where the two decompositions differ, as
    /// `(q, lambda, self_mult, other_mult)`.
    fn diff(&self, other: &PyDecomposition) -> Vec<(u64, u32, u64, u64)> {
        self.inner
            .diff(&other.inner)
            .into_iter()
            .map(|d| (d.matrix_size, d.center_level, d.left, d.right))
            .collect()
    }

    fn __eq__(&self, other: &PyDecomposition) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.components().len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Decomposition('{}')", self.inner)
    }
}

/// An irreducible complex character of a group.
#[pyclass(name = "Character", frozen)]
struct PyCharacter {
    inner: IrreducibleCharacter,
    params: GroupParams,
}

#[pymethods]
impl PyCharacter {
    #[getter]
    fn degree(&self) -> u64 {
        self.inner.degree
    }

    /// `"linear"` or `"induced"`.
    #[getter]
    fn kind(&self) -> &'static str {
        if self.inner.is_linear() {
            "linear"
        } else {
            "induced"
        }
    }

    /// Orbit label: `lambda` for linear characters, `l` for induced ones.
    #[getter]
    fn label(&self) -> u64 {
        match self.inner.orbit {
            OrbitDescriptor::Linear { lambda } => lambda,
            OrbitDescriptor::Induced { l, .. } => l,
        }
    }

    #[getter]
    fn u(&self) -> u64 {
        self.inner.u
    }

    #[getter]
    fn t(&self) -> u32 {
        self.inner.t()
    }

    /// `L` with `Q(psi) = Q(zeta_{p^L})`.
    #[getter]
    fn field_level(&self) -> u32 {
        character_field_level(&self.inner, &self.params)
    }

    /// `psi(a^i b^j)` as text in powers of `zeta_{p^N}`, `N = max(n, m)`.
    fn value(&self, i: i64, j: i64) -> String {
        character_value(&self.inner, self.params.element(i, j), &self.params).to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Character({}, degree={}, label={}, u={})",
            self.kind(),
            self.degree(),
            self.label(),
            self.u()
        )
    }
}

/// `<a, b | a^(p^n) = b^(p^m) = 1, b a b^-1 = a^r>`. Give exactly one of
/// `r`, `s` (canonical `r = 1 + p^(n-s)`) or `abelian=True`.
#[pyclass(name = "Group", frozen)]
struct PyGroup {
    inner: GroupParams,
}

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (p, n, m, r=None, s=None, abelian=false))]
    fn new(
        p: u64,
        n: u32,
        m: u32,
        r: Option<i64>,
        s: Option<u32>,
        abelian: bool,
    ) -> PyResult<Self> {
        let inner = match (r, s, abelian) {
            (Some(r), None, false) => GroupParams::new(p, n, m, r),
            (None, Some(s), false) => GroupParams::from_s(p, n, m, s),
            (None, None, true) => GroupParams::abelian(p, n, m),
            _ => {
                return Err(PyValueError::new_err(
                    "give exactly one of r, s, abelian=True",
                ))
            }
        }
        .map_err(to_py)?;
        Ok(PyGroup { inner })
    }

    /// Every non-abelian parameter set with `p^(n+m) <= max_order`.
    #[staticmethod]
    fn enumerate(p: u64, max_order: u64) -> PyResult<Vec<PyGroup>> {
        Ok(GroupParams::enumerate(p, max_order)
            .map_err(to_py)?
            .into_iter()
            .map(|inner| PyGroup { inner })
            .collect())
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }
    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }
    #[getter]
    fn r(&self) -> u64 {
        self.inner.r()
    }
    #[getter]
    fn s(&self) -> u32 {
        self.inner.s()
    }
    #[getter]
    fn k(&self) -> u64 {
        self.inner.k()
    }
    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }
    #[getter]
    fn canonical_r(&self) -> u64 {
        self.inner.canonical_r()
    }
    #[getter]
    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    /// `method` is `"closed-form"`, `"oracle"` or `"both"`.
    #[pyo3(signature = (method="closed-form"))]
    fn decompose(&self, method: &str) -> PyResult<PyDecomposition> {
        Ok(PyDecomposition {
            inner: report_for(&self.inner, method)?.decomposition(),
        })
    }

    /// The full report as a JSON document.
    #[pyo3(signature = (method="closed-form"))]
    fn report_json(&self, method: &str) -> PyResult<String> {
        let report = report_for(&self.inner, method)?;
        serde_json::to_string(&report).map_err(|e| InconsistencyError::new_err(e.to_string()))
    }

    /// Complex irreducibles by degree.
    #[pyo3(signature = (oracle=false))]
    fn complex_counts(&self, oracle: bool) -> PyResult<BTreeMap<u64, u64>> {
        if oracle {
            Ok(wedderburn::oracle(&self.inner)
                .map_err(to_py)?
                .complex_counts)
        } else {
            Ok(complex_counts_closed_form(&self.inner))
        }
    }

    /// Rational irreducibles by degree `phi(p^lambda)`.
    #[pyo3(signature = (oracle=false))]
    fn rational_counts(&self, oracle: bool) -> PyResult<BTreeMap<u64, u64>> {
        let counts = if oracle {
            wedderburn::oracle(&self.inner)
                .map_err(to_py)?
                .rational_counts
        } else {
            rational_counts_closed_form(&self.inner)
        };
        Ok(counts.by_degree())
    }

    /// Compares the closed form with the oracle. Returns
    /// `(agrees, summary, checks)` where `checks` lists
    /// `(suite, checked, failures)` when `deep=True`.
    #[pyo3(signature = (deep=false))]
    fn verify(&self, deep: bool) -> PyResult<(bool, String, CheckRows)> {
        let v = Verification::run(&self.inner).map_err(to_py)?;
        let mut agrees = v.agrees();
        let mut checks = Vec::new();
        if deep {
            for outcome in deep_checks(&self.inner).map_err(to_py)? {
                agrees &= outcome.passed();
                checks.push((outcome.name.to_string(), outcome.checked, outcome.failures));
            }
        }
        Ok((agrees, v.summary(), checks))
    }

    /// Irreducible complex characters (oracle scale only).
    fn characters(&self) -> PyResult<Vec<PyCharacter>> {
        Ok(enumerate_irreducibles(&self.inner)
            .map_err(to_py)?
            .into_iter()
            .map(|inner| PyCharacter {
                inner,
                params: self.inner.clone(),
            })
            .collect())
    }

    /// Number of conjugacy classes, by brute force (oracle scale only).
    fn conjugacy_class_count(&self) -> PyResult<usize> {
        Ok(self.inner.conjugacy_classes().map_err(to_py)?.len())
    }

    fn __repr__(&self) -> String {
        format!(
            "Group(p={}, n={}, m={}, r={})",
            self.inner.p(),
            self.inner.n(),
            self.inner.m(),
            self.inner.r()
        )
    }
}

/// Order of `r` modulo `p^exp`.
#[pyfunction]
fn multiplicative_order(r: i64, p: u64, exp: u32) -> PyResult<u64> {
    let modulus = PrimePower::new(p, exp).map_err(to_py)?;
    wedderburn::arith::multiplicative_order(r, &modulus).map_err(to_py)
}

/// `(k, s)` with `r = 1 + k p^(n-s)` and `r` of order `p^s` mod `p^n`.
#[pyfunction]
fn split_r(r: i64, p: u64, n: u32) -> PyResult<(u64, u32)> {
    wedderburn::arith::split_r(r, p, n).map_err(to_py)
}

/// Decomposition from `(p, n, m, r)` in one call, as text.
#[pyfunction]
#[pyo3(signature = (p, n, m, r, method="closed-form"))]
fn decompose(p: u64, n: u32, m: u32, r: i64, method: &str) -> PyResult<String> {
    let g = GroupParams::new(p, n, m, r).map_err(to_py)?;
    Ok(report_for(&g, method)?.text())
}

/// Rational counts by degree straight from the oracle, for cross-checks.
#[pyfunction]
fn oracle_rational_counts(p: u64, n: u32, m: u32, r: i64) -> PyResult<BTreeMap<u64, u64>> {
    let g = GroupParams::new(p, n, m, r).map_err(to_py)?;
    Ok(oracle(&g).map_err(to_py)?.rational_counts.by_degree())
}

#[pymodule]
fn pywedderburn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_class::<PyCharacter>()?;
    m.add_function(wrap_pyfunction!(multiplicative_order, m)?)?;
    m.add_function(wrap_pyfunction!(split_r, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_rational_counts, m)?)?;
    let py = m.py();
    m.add("ValidationError", py.get_type::<ValidationError>())?;
    m.add("SizeBoundError", py.get_type::<SizeBoundError>())?;
    m.add("InconsistencyError", py.get_type::<InconsistencyError>())?;
    Ok(())
}

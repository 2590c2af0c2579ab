//! Python bindings: `import pyrigidity`.
//!
//! Indices are zero-based, as in the Rust API. Big integers map to Python
//! `int`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rigidity_core::classifier::{self, Pruning, SearchConfig, DEFAULT_CEILING};
use rigidity_core::{self as core, Error};

create_exception!(pyrigidity, SearchSpaceTooLarge, PyValueError);
create_exception!(pyrigidity, NotAutomorphism, PyValueError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::SearchSpaceTooLarge { .. } => SearchSpaceTooLarge::new_err(e.to_string()),
        Error::NotAutomorphism(_) => NotAutomorphism::new_err(e.to_string()),
        Error::InternalInconsistency(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "RingSpec", frozen, from_py_object, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyRingSpec(core::RingSpec);

#[pymethods]
impl PyRingSpec {
    #[new]
    fn new(exponents: Vec<u32>) -> PyResult<Self> {
        core::RingSpec::new(exponents).map(Self).map_err(to_py)
    }

    #[getter]
    fn exponents(&self) -> Vec<u32> {
        self.0.exponents().to_vec()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn zero(&self) -> PyRingElement {
        PyRingElement(self.0.zero())
    }

    fn one(&self) -> PyRingElement {
        PyRingElement(self.0.one())
    }

    fn generator(&self, i: usize) -> PyResult<PyRingElement> {
        self.0.generator(i).map(PyRingElement).map_err(to_py)
    }

    /// Evaluates an expression such as `"(x1 + x2)^2"`.
    fn parse(&self, expr: &str) -> PyResult<PyRingElement> {
        core::parse_element(expr, &self.0).map(PyRingElement).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("RingSpec({:?})", self.0.exponents())
    }
}

#[pyclass(name = "RingElement", frozen, from_py_object, eq)]
#[derive(Clone, PartialEq, Eq)]
struct PyRingElement(core::RingElement);

#[derive(FromPyObject)]
enum Operand {
    Element(PyRingElement),
    Int(BigInt),
}

impl PyRingElement {
    fn lift(&self, other: Operand) -> core::RingElement {
        match other {
            Operand::Element(e) => e.0,
            Operand::Int(c) => self.0.spec().constant(c),
        }
    }
}

#[pymethods]
impl PyRingElement {
    #[getter]
    fn spec(&self) -> PyRingSpec {
        PyRingSpec(self.0.spec().clone())
    }

    /// `[(exponents, coefficient), ...]` in ascending graded-lex order.
    fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        self.0
            .terms()
            .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn homogeneous_degree(&self) -> Option<u32> {
        self.0.homogeneous_degree()
    }

    fn nilpotency_order(&self) -> PyResult<u32> {
        self.0.nilpotency_order().map_err(to_py)
    }

    fn to_json(&self) -> String {
        core::serial::to_json(&core::serial::ElementDoc::from(&self.0))
    }

    fn __add__(&self, other: Operand) -> PyResult<Self> {
        self.0.try_add(&self.lift(other)).map(Self).map_err(to_py)
    }

    fn __radd__(&self, other: Operand) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: Operand) -> PyResult<Self> {
        self.0.try_sub(&self.lift(other)).map(Self).map_err(to_py)
    }

    fn __rsub__(&self, other: Operand) -> PyResult<Self> {
        self.lift(other).try_sub(&self.0).map(Self).map_err(to_py)
    }

    fn __mul__(&self, other: Operand) -> PyResult<Self> {
        self.0.try_mul(&self.lift(other)).map(Self).map_err(to_py)
    }

    fn __rmul__(&self, other: Operand) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __neg__(&self) -> Self {
        Self(self.0.neg())
    }

    fn __pow__(&self, exponent: u32, modulo: Option<Py<PyAny>>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular pow is not supported"));
        }
        Ok(Self(self.0.pow(exponent)))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RingElement({}, spec={})", self.0, self.0.spec())
    }
}

#[pyclass(name = "LinearSubstitution", frozen, from_py_object, eq)]
#[derive(Clone, PartialEq, Eq)]
struct PyLinearSubstitution(core::LinearSubstitution);

#[pymethods]
impl PyLinearSubstitution {
    /// Row `i` lists the coefficients of the image of `x_{i+1}`.
    #[new]
    fn new(spec: &PyRingSpec, rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        core::LinearSubstitution::new(&spec.0, rows).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn identity(spec: &PyRingSpec) -> Self {
        Self(core::LinearSubstitution::identity(&spec.0))
    }

    #[getter]
    fn spec(&self) -> PyRingSpec {
        PyRingSpec(self.0.spec().clone())
    }

    #[getter]
    fn matrix(&self) -> Vec<Vec<BigInt>> {
        self.0.matrix().clone()
    }

    fn apply(&self, element: &PyRingElement) -> PyResult<PyRingElement> {
        self.0.apply(&element.0).map(PyRingElement).map_err(to_py)
    }

    /// `(True, None)` or `(False, "psi(x1)^2 = x2^2")`.
    fn check_endomorphism(&self) -> (bool, Option<String>) {
        match self.0.check_endomorphism().witness() {
            None => (true, None),
            Some(w) => (false, Some(w.to_string())),
        }
    }

    fn determinant(&self) -> BigInt {
        self.0.determinant()
    }

    fn is_graded_automorphism(&self) -> bool {
        self.0.is_graded_automorphism()
    }

    /// `self` after `inner`.
    fn after(&self, inner: &PyLinearSubstitution) -> PyResult<Self> {
        core::compose(&self.0, &inner.0).map(Self).map_err(to_py)
    }

    /// `(SignedPermutation, None)`, or `(None, failure_code)` when absent.
    fn normal_form(&self) -> (Option<PySignedPermutation>, Option<String>) {
        match classifier::as_signed_permutation(&self.0) {
            Ok(p) => (Some(PySignedPermutation(p)), None),
            Err(why) => (None, Some(why.code().to_string())),
        }
    }

    fn __repr__(&self) -> String {
        format!("LinearSubstitution({}, spec={})", self.0, self.0.spec())
    }
}

#[pyclass(name = "SignedPermutation", frozen, from_py_object, eq)]
#[derive(Clone, PartialEq, Eq)]
struct PySignedPermutation(core::SignedPermutation);

#[pymethods]
impl PySignedPermutation {
    #[new]
    fn new(spec: &PyRingSpec, sigma: Vec<usize>, signs: Vec<i64>) -> PyResult<Self> {
        let signs = signs
            .into_iter()
            .map(|s| match s {
                1 => Ok(core::Sign::Plus),
                -1 => Ok(core::Sign::Minus),
                other => Err(PyValueError::new_err(format!("sign must be +1 or -1, got {other}"))),
            })
            .collect::<PyResult<Vec<_>>>()?;
        core::SignedPermutation::new(&spec.0, sigma, signs)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn sigma(&self) -> Vec<usize> {
        self.0.sigma().to_vec()
    }

    #[getter]
    fn signs(&self) -> Vec<i64> {
        self.0.signs().iter().map(|s| s.to_int()).collect()
    }

    fn to_substitution(&self) -> PyLinearSubstitution {
        PyLinearSubstitution(self.0.to_substitution())
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    /// Realization recipe: `{"permutation", "conjugate", "description"}`.
    fn realize<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = core::realize(&self.0);
        let d = PyDict::new(py);
        d.set_item("permutation", r.recipe.permutation().to_vec())?;
        d.set_item("conjugate", r.recipe.conjugate().to_vec())?;
        d.set_item("description", r.recipe.to_string())?;
        d.set_item("induced", PyLinearSubstitution(r.induced))?;
        Ok(d)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SignedPermutation({})", self.0)
    }
}

#[pyfunction]
fn reduce(terms: Vec<(Vec<u32>, BigInt)>, spec: &PyRingSpec) -> PyResult<PyRingElement> {
    core::reduce(terms, &spec.0).map(PyRingElement).map_err(to_py)
}

#[pyfunction]
fn degree_one_element(coeffs: Vec<BigInt>, spec: &PyRingSpec) -> PyResult<PyRingElement> {
    core::degree_one_element(coeffs, &spec.0)
        .map(PyRingElement)
        .map_err(to_py)
}

/// `[(index, exponent, nonzero), ...]` for every index with a nonzero coefficient.
#[pyfunction]
fn verify_nonvanishing_powers(coeffs: Vec<BigInt>, spec: &PyRingSpec) -> PyResult<Vec<(usize, u32, bool)>> {
    let report = core::verify_nonvanishing_powers(coeffs, &spec.0).map_err(to_py)?;
    Ok(report
        .into_iter()
        .map(|c| (c.index, c.exponent, c.nonzero))
        .collect())
}

/// `(distinct_exponents, blocks)`.
#[pyfunction]
fn degree_profile(spec: &PyRingSpec) -> (Vec<u32>, Vec<Vec<usize>>) {
    let p = core::degree_profile(&spec.0);
    (p.distinct_exponents().to_vec(), p.blocks().to_vec())
}

#[pyfunction]
fn automorphism_group_order(spec: &PyRingSpec) -> BigInt {
    BigInt::from(core::automorphism_group_order(&spec.0))
}

fn search_config(bound: u32, pruning: bool, ceiling: u128) -> SearchConfig {
    SearchConfig {
        bound,
        pruning: if pruning { Pruning::On } else { Pruning::Off },
        ceiling,
    }
}

#[pyfunction]
#[pyo3(signature = (spec, bound = 1, pruning = true, ceiling = DEFAULT_CEILING))]
fn enumerate_automorphisms(
    py: Python<'_>,
    spec: &PyRingSpec,
    bound: u32,
    pruning: bool,
    ceiling: u128,
) -> PyResult<Vec<PyLinearSubstitution>> {
    let config = search_config(bound, pruning, ceiling);
    let spec = spec.0.clone();
    let found = py
        .detach(move || classifier::enumerate_automorphisms(&spec, &config))
        .map_err(to_py)?;
    Ok(found.into_iter().map(PyLinearSubstitution).collect())
}

/// Report dict with the keys of the CLI's classify output.
#[pyfunction]
#[pyo3(signature = (spec, bound = 1, pruning = false, ceiling = DEFAULT_CEILING))]
fn verify_structure_theorem<'py>(
    py: Python<'py>,
    spec: &PyRingSpec,
    bound: u32,
    pruning: bool,
    ceiling: u128,
) -> PyResult<Bound<'py, PyDict>> {
    let config = search_config(bound, pruning, ceiling);
    let s = spec.0.clone();
    let report = py
        .detach(move || classifier::verify_structure_theorem(&s, &config))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("spec", spec.0.exponents().to_vec())?;
    d.set_item("bound", report.bound)?;
    d.set_item("candidates_scanned", report.candidates_scanned)?;
    d.set_item("automorphisms_found", report.automorphisms_found)?;
    d.set_item("predicted_order", BigInt::from(report.predicted_order.clone()))?;
    d.set_item("biconditional_holds", report.biconditional_holds)?;
    let counterexamples: Vec<Vec<Vec<BigInt>>> = report
        .counterexamples
        .iter()
        .map(|c| c.matrix.matrix().clone())
        .collect();
    d.set_item("counterexamples", counterexamples)?;
    Ok(d)
}

/// `{"order", "conjugate", "block_sizes", "block_upper_triangular"}`.
#[pyfunction]
fn block_triangular_witness<'py>(
    py: Python<'py>,
    psi: &PyLinearSubstitution,
) -> PyResult<Bound<'py, PyDict>> {
    let w = classifier::block_triangular_witness(&psi.0).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("order", w.order)?;
    d.set_item("conjugate", PyLinearSubstitution(w.conjugate))?;
    d.set_item("block_sizes", w.block_sizes)?;
    d.set_item("block_upper_triangular", w.block_upper_triangular)?;
    Ok(d)
}

/// Factors `phi` through `h_star` (identity when omitted).
#[pyfunction]
#[pyo3(signature = (phi, h_star = None))]
fn factor_isomorphism<'py>(
    py: Python<'py>,
    phi: &PyLinearSubstitution,
    h_star: Option<&PyLinearSubstitution>,
) -> PyResult<Bound<'py, PyDict>> {
    let h = h_star
        .map(|h| h.0.clone())
        .unwrap_or_else(|| core::LinearSubstitution::identity(phi.0.spec()));
    let f = core::factor_isomorphism(&phi.0, &h).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("g", PyLinearSubstitution(f.g))?;
    d.set_item("g_normal_form", PySignedPermutation(f.g_normal_form))?;
    d.set_item("recipe", f.recipe.to_string())?;
    d.set_item("f_star", PyLinearSubstitution(f.f_star))?;
    d.set_item("verified", f.certificate.verified())?;
    Ok(d)
}

#[pymodule]
fn pyrigidity(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRingSpec>()?;
    m.add_class::<PyRingElement>()?;
    m.add_class::<PyLinearSubstitution>()?;
    m.add_class::<PySignedPermutation>()?;
    m.add("SearchSpaceTooLarge", m.py().get_type::<SearchSpaceTooLarge>())?;
    m.add("NotAutomorphism", m.py().get_type::<NotAutomorphism>())?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(degree_one_element, m)?)?;
    m.add_function(wrap_pyfunction!(verify_nonvanishing_powers, m)?)?;
    m.add_function(wrap_pyfunction!(degree_profile, m)?)?;
    m.add_function(wrap_pyfunction!(automorphism_group_order, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_automorphisms, m)?)?;
    m.add_function(wrap_pyfunction!(verify_structure_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(block_triangular_witness, m)?)?;
    m.add_function(wrap_pyfunction!(factor_isomorphism, m)?)?;
    Ok(())
}

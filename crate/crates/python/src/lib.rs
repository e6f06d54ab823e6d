use std::hash::{DefaultHasher, Hash, Hasher};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::pyclass::CompareOp;
use pyo3::types::PyDict;

use shard_order::export::{hasse_dot, hasse_json, preorder_from_json, preorder_to_json};
use shard_order::lattice::{build_lattice_capped, DEFAULT_CAP};
use shard_order::sortable::noncrossing_preorders;
use shard_order::verify::{run_suite, Suite};
use shard_order::{
    count_decreasing_chains, increasing_chain, join, leq, meet, mu, noncrossing_order_of_partition,
    CoxeterElement, Error,
};

fn value_error(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A permutation in one-line notation, e.g. `Permutation("3142")` or
/// `Permutation([3, 1, 4, 2])`.
#[pyclass(
    name = "Permutation",
    module = "shard_order",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPermutation(shard_order::Permutation);

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(word: &Bound<'_, PyAny>) -> PyResult<Self> {
        let p = if let Ok(s) = word.extract::<String>() {
            s.parse().map_err(value_error)?
        } else {
            shard_order::Permutation::new(word.extract::<Vec<usize>>()?).map_err(value_error)?
        };
        Ok(Self(p))
    }

    #[staticmethod]
    fn all(n: usize) -> Vec<Self> {
        shard_order::Permutation::all(n).map(Self).collect()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn word(&self) -> Vec<usize> {
        self.0.word().to_vec()
    }

    fn descending_runs(&self) -> Vec<Vec<usize>> {
        self.0
            .descending_runs()
            .into_iter()
            .map(|r| r.values)
            .collect()
    }

    fn inversions(&self) -> Vec<(usize, usize)> {
        self.0.inversions()
    }

    fn is_c_sortable(&self, coxeter: Vec<usize>) -> PyResult<bool> {
        let c = coxeter_element(coxeter)?;
        shard_order::is_c_sortable(&self.0, &c).map_err(value_error)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}')", self.0)
    }
}

/// A permutation pre-order, ordered by containment of relations.
#[pyclass(name = "Preorder", module = "shard_order", frozen, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPreorder(shard_order::PermutationPreorder);

#[pymethods]
impl PyPreorder {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        preorder_from_json(s).map(Self).map_err(value_error)
    }

    fn to_json(&self) -> String {
        preorder_to_json(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    /// Blocks in placement order, members ascending.
    #[getter]
    fn blocks(&self) -> Vec<Vec<usize>> {
        let bo = self.0.block_order();
        self.0
            .block_sequence()
            .into_iter()
            .map(|b| bo.blocks[b].members.clone())
            .collect()
    }

    /// Whether `a ⪯ b` holds, for entries `a`, `b` of `[n]`.
    fn relates(&self, a: usize, b: usize) -> PyResult<bool> {
        let n = self.0.n();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(PyValueError::new_err(format!(
                "entries must lie in 1..={n}"
            )));
        }
        Ok(self.0.as_preorder().le(a, b))
    }

    fn to_permutation(&self) -> PyPermutation {
        PyPermutation(self.0.to_permutation())
    }

    fn covers_up(&self) -> Vec<Self> {
        shard_order::covers_up(&self.0)
            .into_iter()
            .map(Self)
            .collect()
    }

    fn join(&self, other: &Self) -> PyResult<Self> {
        same_n(self, other)?;
        Ok(Self(join(&self.0, &other.0)))
    }

    fn meet(&self, other: &Self) -> PyResult<Self> {
        same_n(self, other)?;
        check_lattice_cap(self.0.n())?;
        Ok(Self(meet(&self.0, &other.0)))
    }

    /// `==` is equality of relations; `<=` is the lattice order.
    fn __richcmp__(&self, other: &Self, op: CompareOp) -> bool {
        let le = |a: &Self, b: &Self| a.0.n() == b.0.n() && leq(&a.0, &b.0);
        match op {
            CompareOp::Eq => self.0 == other.0,
            CompareOp::Ne => self.0 != other.0,
            CompareOp::Le => le(self, other),
            CompareOp::Ge => le(other, self),
            CompareOp::Lt => self.0 != other.0 && le(self, other),
            CompareOp::Gt => self.0 != other.0 && le(other, self),
        }
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.as_preorder().to_string()
    }

    fn __repr__(&self) -> String {
        format!("mu('{}')", self.0)
    }
}

fn same_n(a: &PyPreorder, b: &PyPreorder) -> PyResult<()> {
    if a.0.n() != b.0.n() {
        return Err(value_error(Error::SizeMismatch {
            expected: a.0.n(),
            found: b.0.n(),
        }));
    }
    Ok(())
}

fn check_lattice_cap(n: usize) -> PyResult<()> {
    if n > DEFAULT_CAP {
        return Err(value_error(Error::SizeCap {
            n,
            cap: DEFAULT_CAP,
        }));
    }
    Ok(())
}

fn coxeter_element(word: Vec<usize>) -> PyResult<CoxeterElement> {
    CoxeterElement::new(word.len() + 1, word).map_err(value_error)
}

fn interval(bottom: &PyPreorder, top: &PyPreorder) -> PyResult<()> {
    same_n(bottom, top)?;
    check_lattice_cap(bottom.0.n())?;
    if !leq(&bottom.0, &top.0) {
        return Err(value_error(Error::NotComparable(
            bottom.0.to_string(),
            top.0.to_string(),
        )));
    }
    Ok(())
}

#[pyfunction]
fn mu_of(p: &PyPermutation) -> PyPreorder {
    PyPreorder(mu(&p.0))
}

#[pyfunction]
fn lambda_of(w: &PyPreorder) -> PyPermutation {
    PyPermutation(w.0.to_permutation())
}

/// Hasse diagram of the whole lattice as JSON or DOT text.
#[pyfunction]
#[pyo3(signature = (n, format = "json"))]
fn hasse(n: usize, format: &str) -> PyResult<String> {
    let lattice = build_lattice_capped(n, DEFAULT_CAP).map_err(value_error)?;
    match format {
        "json" => Ok(hasse_json(&lattice)),
        "dot" => Ok(hasse_dot(&lattice)),
        other => Err(PyValueError::new_err(format!("unknown format {other:?}"))),
    }
}

#[pyfunction]
fn mobius(bottom: &PyPreorder, top: &PyPreorder) -> PyResult<i64> {
    interval(bottom, top)?;
    shard_order::mobius(&bottom.0, &top.0).map_err(value_error)
}

/// The increasing chain's labels and the decreasing-chain count.
#[pyfunction]
fn chains<'py>(
    py: Python<'py>,
    bottom: &PyPreorder,
    top: &PyPreorder,
) -> PyResult<Bound<'py, PyDict>> {
    interval(bottom, top)?;
    let chain = increasing_chain(&bottom.0, &top.0).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("increasing", chain.label_word())?;
    out.set_item(
        "elements",
        chain
            .elements
            .into_iter()
            .map(PyPreorder)
            .collect::<Vec<_>>(),
    )?;
    out.set_item(
        "decreasing_count",
        count_decreasing_chains(&bottom.0, &top.0).map_err(value_error)?,
    )?;
    Ok(out)
}

#[pyfunction]
fn noncrossing(coxeter: Vec<usize>) -> PyResult<Vec<PyPreorder>> {
    let c = coxeter_element(coxeter)?;
    check_lattice_cap(c.n())?;
    Ok(noncrossing_preorders(&c)
        .map_err(value_error)?
        .into_iter()
        .map(PyPreorder)
        .collect())
}

#[pyfunction]
fn noncrossing_order(blocks: Vec<Vec<usize>>, coxeter: Vec<usize>) -> PyResult<PyPreorder> {
    let c = coxeter_element(coxeter)?;
    noncrossing_order_of_partition(&blocks, &c)
        .map(PyPreorder)
        .map_err(value_error)
}

/// Runs a self-check suite; returns `(passed, checks)`.
#[pyfunction]
fn verify(suite: &str, n: usize) -> PyResult<(bool, u64)> {
    let suite: Suite = suite.parse().map_err(value_error)?;
    let report = run_suite(suite, n, false).map_err(value_error)?;
    Ok((report.passed, report.checks))
}

#[pymodule]
#[pyo3(name = "shard_order")]
fn shard_order_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyPreorder>()?;
    m.add("mu", wrap_pyfunction!(mu_of, m)?)?;
    m.add("lam", wrap_pyfunction!(lambda_of, m)?)?;
    m.add_function(wrap_pyfunction!(hasse, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(chains, m)?)?;
    m.add_function(wrap_pyfunction!(noncrossing, m)?)?;
    m.add_function(wrap_pyfunction!(noncrossing_order, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

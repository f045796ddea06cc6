use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use spin_springer_core as core;
use spin_springer_core::map::{self, InverseRoute};
use spin_springer_core::{order, verify, Convention, Settings};

fn to_py(err: core::Error) -> PyErr {
    match err {
        core::Error::InvariantViolation { .. }
        | core::Error::Ambiguous { .. }
        | core::Error::Antisymmetry { .. } => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn convention(name: &str) -> PyResult<Convention> {
    match name {
        "t0-swap" => Ok(Convention::SwapAtZero),
        "t0-keep" => Ok(Convention::KeepAtZero),
        other => Err(PyValueError::new_err(format!("unknown convention {other:?}"))),
    }
}

fn settings(cap: u64, conv: &str, workers: usize) -> PyResult<Settings> {
    Ok(Settings::default()
        .with_cap(cap)
        .with_convention(convention(conv)?)
        .with_workers(workers))
}

#[pyclass(name = "Partition", module = "spin_springer", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyPartition {
    inner: core::Partition,
}

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: Vec<u64>) -> Self {
        PyPartition { inner: core::Partition::new(parts) }
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyPartition { inner: text.parse().map_err(to_py)? })
    }

    #[getter]
    fn parts(&self) -> Vec<u64> {
        self.inner.parts().to_vec()
    }

    #[getter]
    fn weight(&self) -> u64 {
        self.inner.weight()
    }

    fn part(&self, i: usize) -> u64 {
        self.inner.part(i)
    }

    fn is_in_xn(&self) -> bool {
        self.inner.is_in_xn()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.inner.parts())
    }
}

#[pyclass(name = "Bipartition", module = "spin_springer", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyBipartition {
    inner: core::Bipartition,
}

#[pymethods]
impl PyBipartition {
    #[new]
    fn new(first: Vec<u64>, second: Vec<u64>) -> Self {
        PyBipartition {
            inner: core::Bipartition::new(core::Partition::new(first), core::Partition::new(second)),
        }
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyBipartition { inner: text.parse().map_err(to_py)? })
    }

    #[getter]
    fn first(&self) -> PyPartition {
        PyPartition { inner: self.inner.first().clone() }
    }

    #[getter]
    fn second(&self) -> PyPartition {
        PyPartition { inner: self.inner.second().clone() }
    }

    #[getter]
    fn weight(&self) -> u64 {
        self.inner.weight()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Bipartition({:?}, {:?})",
            self.inner.first().parts(),
            self.inner.second().parts()
        )
    }
}

#[pyclass(name = "SpringerImage", module = "spin_springer", frozen, get_all)]
pub struct PySpringerImage {
    t: i64,
    bipartition: PyBipartition,
    alpha_raw: Vec<u64>,
    beta_raw: Vec<u64>,
}

#[pymethods]
impl PySpringerImage {
    fn __repr__(&self) -> String {
        format!("SpringerImage(t={}, bipartition={})", self.t, self.bipartition.inner)
    }
}

fn xn(p: &PyPartition) -> PyResult<core::XnElement> {
    core::XnElement::new(p.inner.clone()).map_err(to_py)
}

#[pyfunction]
fn delta(part: u64) -> i64 {
    map::delta(part)
}

#[pyfunction]
fn delta_profile(p: &PyPartition) -> (Vec<i64>, Vec<i64>, i64) {
    let profile = map::delta_profile(&p.inner);
    (profile.deltas, profile.tail_sums, profile.total)
}

#[pyfunction]
#[pyo3(signature = (p, convention = "t0-swap"))]
fn forward_map(p: &PyPartition, convention: &str) -> PyResult<PySpringerImage> {
    let image = map::forward_map(&xn(p)?, self::convention(convention)?).map_err(to_py)?;
    Ok(PySpringerImage {
        t: image.t,
        bipartition: PyBipartition { inner: image.bipartition },
        alpha_raw: image.alpha_raw,
        beta_raw: image.beta_raw,
    })
}

#[pyfunction]
fn odd_even_split(p: &PyPartition) -> (Vec<u64>, Vec<u64>) {
    let split = map::odd_even_split(&p.inner);
    (split.odd_parts, split.even_parts)
}

#[pyfunction]
fn closed_form_inverse(bp: &PyBipartition, t: i64) -> PyResult<PyPartition> {
    let lambda = map::closed_form_inverse(&bp.inner, t).map_err(to_py)?;
    Ok(PyPartition { inner: lambda.into_partition() })
}

#[pyfunction]
#[pyo3(signature = (bp, t, cap = core::DEFAULT_CAP, convention = "t0-swap"))]
fn brute_force_inverse(bp: &PyBipartition, t: i64, cap: u64, convention: &str) -> PyResult<Option<PyPartition>> {
    let found = map::brute_force_inverse(&bp.inner, t, &settings(cap, convention, 1)?).map_err(to_py)?;
    Ok(found.map(|x| PyPartition { inner: x.into_partition() }))
}

#[pyfunction]
#[pyo3(signature = (n, cap = core::DEFAULT_CAP))]
fn enumerate_partitions(n: u64, cap: u64) -> PyResult<Vec<PyPartition>> {
    Ok(core::enumerate_partitions(n, cap)
        .map_err(to_py)?
        .map(|inner| PyPartition { inner })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (n, cap = core::DEFAULT_CAP))]
fn enumerate_xn(n: u64, cap: u64) -> PyResult<Vec<PyPartition>> {
    Ok(core::enumerate_xn(n, cap)
        .map_err(to_py)?
        .map(|x| PyPartition { inner: x.into_partition() })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (m, cap = core::DEFAULT_CAP))]
fn enumerate_bipartitions(m: u64, cap: u64) -> PyResult<Vec<PyBipartition>> {
    Ok(core::enumerate_bipartitions(m, cap)
        .map_err(to_py)?
        .map(|inner| PyBipartition { inner })
        .collect())
}

#[pyfunction]
fn dominance_leq(a: &PyPartition, b: &PyPartition) -> PyResult<bool> {
    order::dominance_leq(&a.inner, &b.inner).map_err(to_py)
}

#[pyfunction]
fn djm_leq(a: &PyBipartition, b: &PyBipartition) -> PyResult<bool> {
    order::djm_leq(&a.inner, &b.inner).map_err(to_py)
}

/// `"LESS"`, `"GREATER"`, `"EQUAL"` or `"INCOMPARABLE"` under dominance.
#[pyfunction]
fn compare_partitions(a: &PyPartition, b: &PyPartition) -> PyResult<String> {
    Ok(order::compare(&a.inner, &b.inner, order::dominance_leq)
        .map_err(to_py)?
        .to_string())
}

#[pyfunction]
fn compare_bipartitions(a: &PyBipartition, b: &PyBipartition) -> PyResult<String> {
    Ok(order::compare(&a.inner, &b.inner, order::djm_leq)
        .map_err(to_py)?
        .to_string())
}

#[pyfunction]
#[pyo3(signature = (a, b, t, cap = core::DEFAULT_CAP))]
fn induced_leq(a: &PyBipartition, b: &PyBipartition, t: i64, cap: u64) -> PyResult<bool> {
    order::induced_leq(&a.inner, &b.inner, t, &settings(cap, "t0-swap", 1)?).map_err(to_py)
}

/// Cover pairs `(lower, upper)` of the dominance order on `X_n`, indices into
/// `enumerate_xn(n)`.
#[pyfunction]
#[pyo3(signature = (n, cap = core::DEFAULT_CAP))]
fn hasse_xn(n: u64, cap: u64) -> PyResult<Vec<(usize, usize)>> {
    let all: Vec<core::Partition> = core::enumerate_xn(n, cap)
        .map_err(to_py)?
        .map(core::XnElement::into_partition)
        .collect();
    Ok(order::hasse_edges(&all, order::dominance_leq).map_err(to_py)?.cover_pairs)
}

/// Runs one named check and returns its report as JSON text.
#[pyfunction]
#[pyo3(signature = (check, n = None, m = None, t = None, cap = core::DEFAULT_CAP, convention = "t0-swap", workers = 1))]
#[allow(clippy::too_many_arguments)]
fn verify_json(
    check: &str,
    n: Option<u64>,
    m: Option<u64>,
    t: Option<i64>,
    cap: u64,
    convention: &str,
    workers: usize,
) -> PyResult<String> {
    let s = settings(cap, convention, workers)?;
    let need = |name: &str| PyValueError::new_err(format!("check {check:?} needs {name}"));
    let report = match check {
        "bijection" => verify::verify_bijection(n.ok_or_else(|| need("n"))?, &s),
        "forward_structure" => verify::verify_forward_structure(n.ok_or_else(|| need("n"))?, &s),
        "lemma1" => verify::verify_lemma1(m.ok_or_else(|| need("m"))?, t.ok_or_else(|| need("t"))?, &s),
        "lemma2" => verify::verify_lemma2(m.ok_or_else(|| need("m"))?, t.ok_or_else(|| need("t"))?, &s),
        "theorem" => verify::verify_theorem(m.ok_or_else(|| need("m"))?, t.ok_or_else(|| need("t"))?, &s),
        "counterexample" => verify::reproduce_counterexample(t.ok_or_else(|| need("t"))?, &s),
        "dominance_axioms" => verify::verify_dominance_axioms(n.ok_or_else(|| need("n"))?, &s),
        "djm_axioms" => verify::verify_djm_axioms(m.ok_or_else(|| need("m"))?, &s),
        other => return Err(PyValueError::new_err(format!("unknown check {other:?}"))),
    }
    .map_err(to_py)?;
    Ok(report.to_json())
}

#[pyfunction]
#[pyo3(signature = (m, t_min, t_max, cap = core::DEFAULT_CAP))]
fn scan_threshold(m: u64, t_min: i64, t_max: i64, cap: u64) -> PyResult<Vec<(i64, usize)>> {
    verify::scan_threshold(m, t_min, t_max, &settings(cap, "t0-swap", 1)?).map_err(to_py)
}

/// `f_{m,t}` on every bipartition of `m`, in enumeration order.
#[pyfunction]
#[pyo3(signature = (m, t, cap = core::DEFAULT_CAP))]
fn fiber_images(m: u64, t: i64, cap: u64) -> PyResult<Vec<(PyBipartition, PyPartition)>> {
    let s = settings(cap, "t0-swap", 1)?;
    let bps: Vec<core::Bipartition> = core::enumerate_bipartitions(m, cap).map_err(to_py)?.collect();
    let images = map::fiber_images(&bps, m, t, InverseRoute::Auto, &s).map_err(to_py)?;
    Ok(bps
        .into_iter()
        .zip(images)
        .map(|(b, x)| (PyBipartition { inner: b }, PyPartition { inner: x.into_partition() }))
        .collect())
}

#[pymodule]
fn spin_springer(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyBipartition>()?;
    m.add_class::<PySpringerImage>()?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(delta_profile, m)?)?;
    m.add_function(wrap_pyfunction!(forward_map, m)?)?;
    m.add_function(wrap_pyfunction!(odd_even_split, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_xn, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_bipartitions, m)?)?;
    m.add_function(wrap_pyfunction!(dominance_leq, m)?)?;
    m.add_function(wrap_pyfunction!(djm_leq, m)?)?;
    m.add_function(wrap_pyfunction!(compare_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(compare_bipartitions, m)?)?;
    m.add_function(wrap_pyfunction!(induced_leq, m)?)?;
    m.add_function(wrap_pyfunction!(hasse_xn, m)?)?;
    m.add_function(wrap_pyfunction!(verify_json, m)?)?;
    m.add_function(wrap_pyfunction!(scan_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_images, m)?)?;
    m.add("DEFAULT_CAP", core::DEFAULT_CAP)?;
    Ok(())
}

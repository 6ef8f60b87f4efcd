//! Python bindings. Structured results come back as plain dicts and lists
//! (built from the same JSON the command-line reports use); series
//! coefficients are `fractions.Fraction`.

use std::sync::Arc;

use artin_malcev::coxeter::CoxeterGraph as CoreCoxeter;
use artin_malcev::crg::{self, ExceptionalTable, ReflectionGroupSpec};
use artin_malcev::dlhomology;
use artin_malcev::fpnilq;
use artin_malcev::pclie::{self, CommutationGraph, TruncatedSeries};
use artin_malcev::word::GroupPresentation;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(x).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.to_string(),))
}

#[pyclass(name = "CoxeterGraph", module = "pymalcev", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCoxeterGraph {
    inner: CoreCoxeter,
}

#[pymethods]
impl PyCoxeterGraph {
    /// Parses the text format (vertex line, then upper-triangular label rows) or JSON.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        CoreCoxeter::parse(text)
            .map(|inner| PyCoxeterGraph { inner })
            .map_err(value_err)
    }

    #[staticmethod]
    fn dihedral(m: u32) -> PyResult<Self> {
        CoreCoxeter::dihedral(m)
            .map(|inner| PyCoxeterGraph { inner })
            .map_err(value_err)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    fn odd_partition(&self) -> Vec<Vec<String>> {
        self.inner.odd_partition().labelled_blocks(&self.inner)
    }

    fn ab_rank(&self) -> usize {
        self.inner.ab_rank()
    }

    fn quotient_graph(&self) -> Self {
        PyCoxeterGraph {
            inner: self.inner.quotient_graph(),
        }
    }

    fn is_right_angled(&self) -> bool {
        self.inner.is_right_angled()
    }

    /// Artin presentation in the presentation text format.
    fn artin_presentation(&self) -> String {
        self.inner.artin_presentation().to_text()
    }

    /// `{"gr1": ..., "gr2": ...}` of the Artin group.
    fn lower_central<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &fpnilq::gr2(&self.inner.artin_presentation()))
    }

    /// Whether every braid relator maps to 1 in the completed algebra of the quotient graph.
    fn relators_map_to_one(&self, degree: usize) -> PyResult<bool> {
        let phi = pclie::PhiMap::new(&self.inner, degree).map_err(value_err)?;
        for (s, t, label) in self.inner.pairs() {
            if let Some(m) = label.finite() {
                let image = phi.image(&CoreCoxeter::braid_relator(s, t, m)).map_err(value_err)?;
                if !image.is_one() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("CoxeterGraph({:?})", self.inner.to_text())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Completed partially commutative algebra on a graph, truncated at `degree`.
#[pyclass(name = "RaagAlgebra", module = "pymalcev", frozen)]
struct PyRaagAlgebra {
    graph: Arc<CommutationGraph>,
    degree: usize,
}

#[pymethods]
impl PyRaagAlgebra {
    #[new]
    #[pyo3(signature = (vertices, edges, degree = 8))]
    fn new(vertices: Vec<String>, edges: Vec<(String, String)>, degree: usize) -> PyResult<Self> {
        let graph = CommutationGraph::new(vertices, &edges).map_err(value_err)?;
        Ok(PyRaagAlgebra {
            graph: Arc::new(graph),
            degree,
        })
    }

    /// Commutation graph of a right-angled Coxeter graph.
    #[staticmethod]
    #[pyo3(signature = (graph, degree = 8))]
    fn from_coxeter(graph: &PyCoxeterGraph, degree: usize) -> PyResult<Self> {
        let graph = CommutationGraph::from_coxeter(&graph.inner).map_err(value_err)?;
        Ok(PyRaagAlgebra {
            graph: Arc::new(graph),
            degree,
        })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.degree
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.graph.vertices().to_vec()
    }

    fn generator(&self, name: &str) -> PyResult<PySeries> {
        TruncatedSeries::generator_named(self.graph.clone(), self.degree, name)
            .map(PySeries)
            .map_err(value_err)
    }

    fn one(&self) -> PySeries {
        PySeries(TruncatedSeries::one(self.graph.clone(), self.degree))
    }

    fn zero(&self) -> PySeries {
        PySeries(TruncatedSeries::zero(self.graph.clone(), self.degree))
    }

    fn hilbert_series(&self) -> Vec<String> {
        pclie::hilbert_series(&self.graph, self.degree)
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn lie_dimensions(&self) -> PyResult<Vec<String>> {
        pclie::lie_dimensions(&self.graph, self.degree)
            .map(|d| d.iter().map(ToString::to_string).collect())
            .map_err(value_err)
    }

    fn count_traces(&self, length: usize) -> PyResult<u64> {
        pclie::count_traces_bfs(&self.graph, length).map_err(value_err)
    }
}

#[pyclass(name = "Series", module = "pymalcev", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries(TruncatedSeries);

#[pymethods]
impl PySeries {
    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_add(&other.0).map(PySeries).map_err(value_err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(PySeries).map_err(value_err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(PySeries).map_err(value_err)
    }

    fn __neg__(&self) -> Self {
        PySeries(self.0.scale(&-BigRational::from_integer(1.into())))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    /// Multiplies by `numerator / denominator`.
    #[pyo3(signature = (numerator, denominator = 1))]
    fn scale(&self, numerator: i64, denominator: i64) -> PyResult<Self> {
        if denominator == 0 {
            return Err(PyValueError::new_err("zero denominator"));
        }
        let c = BigRational::new(numerator.into(), denominator.into());
        Ok(PySeries(self.0.scale(&c)))
    }

    fn bracket(&self, other: &Self) -> PyResult<Self> {
        self.0.bracket(&other.0).map(PySeries).map_err(value_err)
    }

    fn exp(&self) -> PyResult<Self> {
        self.0.exp().map(PySeries).map_err(value_err)
    }

    fn log(&self) -> PyResult<Self> {
        self.0.log().map(PySeries).map_err(value_err)
    }

    fn is_grouplike(&self) -> bool {
        self.0.is_grouplike()
    }

    fn is_primitive(&self) -> bool {
        self.0.is_primitive()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `[(word, Fraction)]` in graded lexicographic order; words are space-separated labels.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let items = self
            .0
            .terms()
            .iter()
            .map(|(t, c)| Ok((self.0.graph().render_trace(t), fraction(py, c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    fn coefficient<'py>(&self, py: Python<'py>, word: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
        let t = self.0.graph().trace_normal_form(&word).map_err(value_err)?;
        fraction(py, &self.0.coefficient(&t))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Series({})", self.0)
    }
}

/// `log(exp(u) exp(v))` for primitive `u`, `v`.
#[pyfunction]
fn bch(u: &PySeries, v: &PySeries) -> PyResult<PySeries> {
    pclie::bch(&u.0, &v.0).map(PySeries).map_err(value_err)
}

/// gr1 and gr2 of a presentation given in the text format.
#[pyfunction]
fn lower_central<'py>(py: Python<'py>, presentation: &str) -> PyResult<Bound<'py, PyAny>> {
    let p = GroupPresentation::parse(presentation).map_err(value_err)?;
    to_py(py, &fpnilq::gr2(&p))
}

/// Full homological computation for the dihedral Artin group with even label `e`.
#[pyfunction]
fn dihedral<'py>(py: Python<'py>, e: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &dlhomology::dihedral_summary(e).map_err(value_err)?)
}

fn table(text: Option<&str>) -> PyResult<ExceptionalTable> {
    match text {
        Some(t) => ExceptionalTable::parse(t).map_err(value_err),
        None => Ok(ExceptionalTable::builtin()),
    }
}

/// Orbit count, abelianization and completion descriptor of `G(m,p,n)` or `Gk`.
#[pyfunction]
#[pyo3(signature = (spec, table_text = None))]
fn classify<'py>(py: Python<'py>, spec: &str, table_text: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let spec: ReflectionGroupSpec = spec.parse().map_err(value_err)?;
    let cl = crg::classify(&spec, &table(table_text)?).map_err(value_err)?;
    let mut v = serde_json::to_value(&cl).map_err(value_err)?;
    v["oracle_agrees"] = cl.oracle_agrees().into();
    to_py(py, &v)
}

/// Hyperplanes of `G(m,p,n)` grouped into orbits.
#[pyfunction]
fn hyperplane_orbits(spec: &str) -> PyResult<Vec<Vec<String>>> {
    let spec: ReflectionGroupSpec = spec.parse().map_err(value_err)?;
    let orbits = crg::hyperplane_orbits(&spec).map_err(value_err)?;
    Ok(orbits
        .orbits
        .iter()
        .map(|o| o.iter().map(ToString::to_string).collect())
        .collect())
}

#[pymodule]
fn pymalcev(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCoxeterGraph>()?;
    m.add_class::<PyRaagAlgebra>()?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(bch, m)?)?;
    m.add_function(wrap_pyfunction!(lower_central, m)?)?;
    m.add_function(wrap_pyfunction!(dihedral, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(hyperplane_orbits, m)?)?;
    Ok(())
}

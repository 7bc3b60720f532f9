//! Python bindings: gluings, glued maps, colouring oracles, coefficients,
//! closed forms and the census.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use num_bigint::BigInt;
use num_rational::BigRational;
use zk::engine::{EngineConfig, Tally};

fn to_py_err(e: zk::Error) -> PyErr {
    match e {
        zk::Error::Usage(_) | zk::Error::LimitExceeded { .. } => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn config(threads: Option<usize>) -> EngineConfig {
    threads.map_or_else(EngineConfig::default, EngineConfig::with_threads)
}

fn fraction<'py>(py: Python<'py>, value: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    PyModule::import(py, "fractions")?
        .getattr("Fraction")?
        .call1((value.numer().clone(), value.denom().clone()))
}

fn parts_tuple<'py>(py: Python<'py>, mu: &zk::Partition) -> PyResult<Bound<'py, PyTuple>> {
    PyTuple::new(py, mu.parts())
}

fn parse_json<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    PyModule::import(py, "json")?
        .getattr("loads")?
        .call1((v.to_string(),))
}

/// A pairing of the 2n polygon sides.
#[pyclass(name = "Gluing", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGluing(zk::Gluing);

#[pymethods]
impl PyGluing {
    #[new]
    fn new(n: usize, pairs: Vec<(usize, usize)>) -> PyResult<Self> {
        zk::Gluing::from_pairs(n, &pairs)
            .map(Self)
            .map_err(to_py_err)
    }

    /// Gluing with an explicit twist flag per pair.
    #[staticmethod]
    fn twisted(n: usize, pairs: Vec<(usize, usize, bool)>) -> PyResult<Self> {
        let pairs: Vec<_> = pairs
            .into_iter()
            .map(|(i, j, t)| {
                (
                    i,
                    j,
                    if t {
                        zk::Twist::Twisted
                    } else {
                        zk::Twist::Straight
                    },
                )
            })
            .collect();
        zk::Gluing::from_twisted_pairs(n, &pairs)
            .map(Self)
            .map_err(to_py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        self.0.pairs()
    }

    fn rotate(&self, r: usize) -> PyResult<Self> {
        self.0.rotate(r).map(Self).map_err(to_py_err)
    }

    fn stabilizer_order(&self) -> usize {
        zk::stabilizer_order(&self.0)
    }

    fn glue(&self) -> PyGluedMap {
        PyGluedMap(zk::GluedMap::new(&self.0))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Gluing({})", self.0)
    }
}

/// The one-face map of a gluing.
#[pyclass(name = "GluedMap", frozen)]
struct PyGluedMap(zk::GluedMap);

#[pymethods]
impl PyGluedMap {
    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    #[getter]
    fn doubled_genus(&self) -> u32 {
        self.0.doubled_genus()
    }

    #[getter]
    fn euler_char(&self) -> i64 {
        self.0.euler_char()
    }

    fn degrees(&self) -> Vec<usize> {
        self.0.degrees().to_vec()
    }

    fn vertex_ids(&self) -> Vec<usize> {
        self.0.vertex_ids().to_vec()
    }

    fn is_bipartite(&self) -> bool {
        self.0.is_bipartite()
    }

    fn black_vertices(&self) -> Vec<usize> {
        self.0
            .black_vertices()
            .iter()
            .map(|&v| self.0.vertex_id(v))
            .collect()
    }

    fn white_vertices(&self) -> Vec<usize> {
        self.0
            .white_vertices()
            .iter()
            .map(|&v| self.0.vertex_id(v))
            .collect()
    }

    fn is_reduced(&self) -> bool {
        zk::is_reduced(&self.0)
    }

    /// Admissible colourings as `(assignment by vertex id, monomial parts)`.
    fn admissible_colorings<'py>(
        &self,
        py: Python<'py>,
    ) -> PyResult<Vec<(Bound<'py, PyDict>, Bound<'py, PyTuple>)>> {
        zk::enumerate_q(&self.0)
            .into_iter()
            .map(|(q, mu)| {
                let d = PyDict::new(py);
                for (v, c) in q.assignment() {
                    d.set_item(v, c)?;
                }
                Ok((d, parts_tuple(py, &mu)?))
            })
            .collect()
    }

    /// Hall-type admissibility test for colours given per black vertex id.
    fn hall_condition(&self, q: std::collections::BTreeMap<usize, u32>) -> PyResult<bool> {
        let q = zk::QColoring::new(q).map_err(to_py_err)?;
        zk::hall_condition(&self.0, &q).map_err(to_py_err)
    }

    fn orientation_walk_condition(
        &self,
        q: std::collections::BTreeMap<usize, u32>,
    ) -> PyResult<bool> {
        let q = zk::QColoring::new(q).map_err(to_py_err)?;
        zk::orientation_walk_condition(&self.0, &q).map_err(to_py_err)
    }
}

/// Number of gluings of the 2n-gon, `(2n-1)!!`.
#[pyfunction]
fn gluing_count(n: usize) -> u128 {
    zk::polygon::double_factorial_odd(n)
}

#[pyfunction]
fn enumerate_gluings(n: usize) -> PyResult<Vec<PyGluing>> {
    if n > 7 {
        return Err(PyValueError::new_err(
            "listing gluings is limited to n <= 7",
        ));
    }
    Ok(zk::enumerate_gluings(n)
        .map_err(to_py_err)?
        .map(PyGluing)
        .collect())
}

/// `(rawCount, coefficient)` for one monomial; the coefficient is a Fraction.
#[pyfunction]
#[pyo3(signature = (n, mu, threads=None))]
fn coefficient<'py>(
    py: Python<'py>,
    n: usize,
    mu: Vec<u32>,
    threads: Option<usize>,
) -> PyResult<(BigInt, Bound<'py, PyAny>)> {
    let mu = zk::Partition::new(mu).map_err(to_py_err)?;
    let c = py
        .detach(|| zk::coefficient(n, &mu, &config(threads)))
        .map_err(to_py_err)?;
    Ok((BigInt::from(c.raw.clone()), fraction(py, &c.value)?))
}

/// `{doubled_genus: {parts: Fraction}}` for all of `Z_n`.
#[pyfunction]
#[pyo3(signature = (n, threads=None))]
fn expand<'py>(py: Python<'py>, n: usize, threads: Option<usize>) -> PyResult<Bound<'py, PyDict>> {
    let t: Tally = py
        .detach(|| zk::tally(n, None, &config(threads)))
        .map_err(to_py_err)?;
    let out = PyDict::new(py);
    for poly in t.by_genus() {
        let terms = PyDict::new(py);
        for (mu, c) in &poly.terms {
            terms.set_item(parts_tuple(py, mu)?, fraction(py, &c.value)?)?;
        }
        out.set_item(poly.doubled_genus, terms)?;
    }
    Ok(out)
}

/// Closed-form genus-one part: `{parts: int}`.
#[pyfunction]
fn genus1<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let r = zk::genus1::three_way_check(n).map_err(to_py_err)?;
    let out = PyDict::new(py);
    for (mu, c) in &r.terms {
        out.set_item(parts_tuple(py, mu)?, c.clone())?;
    }
    Ok(out)
}

/// Census classes as dictionaries (same fields as the command-line JSON).
#[pyfunction]
#[pyo3(signature = (n, doubled_genus=Some(2), reduced=false, bipartite=false, contributing=false, twisted=false))]
fn census<'py>(
    py: Python<'py>,
    n: usize,
    doubled_genus: Option<u32>,
    reduced: bool,
    bipartite: bool,
    contributing: bool,
    twisted: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let filter = zk::CensusFilter {
        doubled_genus,
        reduced_only: reduced,
        bipartite_only: bipartite,
        contributing_only: contributing,
        twisted,
        group: if twisted {
            zk::SymmetryGroup::DIHEDRAL
        } else {
            zk::SymmetryGroup::ROTATIONS
        },
    };
    let classes = py
        .detach(|| zk::census_classes(n, &filter))
        .map_err(to_py_err)?;
    let doc = zk::report::census_json(&[n], &filter, &classes);
    parse_json(py, &doc["classes"])
}

/// Acceptance checks as `(id, title, passed, detail)` tuples.
#[pyfunction]
#[pyo3(signature = (max_n=6))]
fn selftest(py: Python<'_>, max_n: usize) -> Vec<(u8, String, bool, String)> {
    let opts = zk::acceptance::SuiteOptions {
        max_n,
        ..Default::default()
    };
    py.detach(|| zk::acceptance::run_suite(&opts))
        .into_iter()
        .map(|r| (r.id, r.title.to_string(), r.passed, r.detail))
        .collect()
}

#[pymodule]
#[pyo3(name = "zkerov")]
fn zkerov_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGluing>()?;
    m.add_class::<PyGluedMap>()?;
    m.add_function(wrap_pyfunction!(gluing_count, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_gluings, m)?)?;
    m.add_function(wrap_pyfunction!(coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(genus1, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}

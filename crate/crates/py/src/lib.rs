//! Python bindings for the `nbpoly` core.

use std::path::PathBuf;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use nbpoly::adjacency::is_2neighborly_bruteforce;
use nbpoly::canon;
use nbpoly::combclass::{canonical_incidence, same_combinatorial_type};
use nbpoly::gale;
use nbpoly::hull::facets_with_incidence;
use nbpoly::lattice::{enumerate_faces, f_vector, is_2simple};
use nbpoly::pipeline::{self, EnumerationConfig, StopReason};
use nbpoly::ratlin::affine_rank;
use nbpoly::{special, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A 0/1-polytope given by its vertices, each encoded as an integer whose
/// most significant of `dim` bits is the first coordinate.
#[pyclass(
    name = "Polytope",
    module = "pynbpoly",
    frozen,
    eq,
    hash,
    from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPolytope(nbpoly::Polytope);

#[pymethods]
impl PyPolytope {
    #[new]
    fn new(dim: usize, vertices: Vec<u16>) -> PyResult<Self> {
        nbpoly::Polytope::from_points(dim, vertices)
            .map(Self)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_coordinates(rows: Vec<Vec<u8>>) -> PyResult<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        nbpoly::Polytope::from_coordinates(dim, &rows)
            .map(Self)
            .map_err(py_err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn vertices(&self) -> Vec<u16> {
        self.0.vertices().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Polytope({}, {:?})", self.0.dim(), self.0.vertices())
    }

    fn coordinates(&self) -> Vec<Vec<u8>> {
        self.0.coordinates()
    }

    fn is_2neighborly(&self) -> bool {
        is_2neighborly_bruteforce(&self.0)
    }

    fn affine_rank(&self) -> PyResult<usize> {
        affine_rank(self.0.vertices(), self.0.dim()).map_err(py_err)
    }

    fn representative(&self) -> Self {
        Self(canon::representative(&self.0))
    }

    fn is_representative(&self) -> bool {
        canon::is_representative(&self.0)
    }

    /// Facet inequalities `a . x <= b` as `(a, b)` pairs.
    fn facets(&self) -> PyResult<Vec<(Vec<i64>, i64)>> {
        let (facets, _) = facets_with_incidence(&self.0).map_err(py_err)?;
        Ok(facets.into_iter().map(|f| (f.a, f.b)).collect())
    }

    /// Facet-vertex incidences, one list of 0/1 entries per facet.
    fn incidence(&self) -> PyResult<Vec<Vec<u8>>> {
        let (_, m) = facets_with_incidence(&self.0).map_err(py_err)?;
        Ok((0..m.num_facets())
            .map(|i| {
                (0..m.num_vertices())
                    .map(|j| u8::from(m.get(i, j)))
                    .collect()
            })
            .collect())
    }

    fn f_vector(&self) -> PyResult<Vec<u64>> {
        let (_, m) = facets_with_incidence(&self.0).map_err(py_err)?;
        f_vector(&m, &self.0).map(|f| f.0).map_err(py_err)
    }

    fn is_2simple(&self) -> PyResult<bool> {
        let (_, m) = facets_with_incidence(&self.0).map_err(py_err)?;
        let faces = enumerate_faces(&m, &self.0).map_err(py_err)?;
        is_2simple(&faces, self.0.dim()).map_err(py_err)
    }

    /// Canonical form of the facet-vertex incidence matrix; equal for two
    /// polytopes exactly when they are combinatorially equivalent.
    fn certificate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyBytes>> {
        let (_, m) = facets_with_incidence(&self.0).map_err(py_err)?;
        let c = canonical_incidence(&m).map_err(py_err)?;
        Ok(PyBytes::new(py, c.as_bytes()))
    }

    fn certificate_digest(&self) -> PyResult<String> {
        let (_, m) = facets_with_incidence(&self.0).map_err(py_err)?;
        canonical_incidence(&m)
            .map(|c| c.digest_hex())
            .map_err(py_err)
    }

    fn combinatorially_equivalent(&self, other: &Self) -> PyResult<bool> {
        let (_, a) = facets_with_incidence(&self.0).map_err(py_err)?;
        let (_, b) = facets_with_incidence(&other.0).map_err(py_err)?;
        same_combinatorial_type(&a, &b).map_err(py_err)
    }
}

#[pyfunction]
fn p14_16() -> PyPolytope {
    PyPolytope(special::p14_16())
}

#[pyfunction]
fn standard_simplex(dim: usize) -> PyPolytope {
    PyPolytope(special::standard_simplex(dim))
}

#[pyfunction]
fn full_cube(dim: usize) -> PyPolytope {
    PyPolytope(special::full_cube(dim))
}

/// `(m0, m1, m_minus1)` for every type of d-polytope with d+2 vertices.
#[pyfunction]
fn gale_tuples(dim: usize) -> PyResult<Vec<(usize, usize, usize)>> {
    Ok(gale::enumerate_d_plus_2(dim)
        .map_err(py_err)?
        .into_iter()
        .map(|t| (t.m0, t.m1, t.m_minus1))
        .collect())
}

#[pyfunction]
fn count_2neighborly_d_plus_2(dim: usize) -> PyResult<usize> {
    gale::count_2neighborly_d_plus_2(dim).map_err(py_err)
}

/// Representatives with one more vertex, from a complete sorted level.
#[pyfunction]
fn extend_level(dim: usize, level: Vec<PyPolytope>) -> PyResult<Vec<PyPolytope>> {
    let level: Vec<_> = level.into_iter().map(|p| p.0).collect();
    Ok(pipeline::extend_level(dim, &level)
        .map_err(py_err)?
        .into_iter()
        .map(PyPolytope)
        .collect())
}

/// Writes level files to `out_dir` and returns `(n, classes,
/// full_dimensional)` per level.
#[pyfunction]
#[pyo3(signature = (dim, out_dir, max_level=None, workers=0))]
fn enumerate(
    py: Python<'_>,
    dim: usize,
    out_dir: PathBuf,
    max_level: Option<usize>,
    workers: usize,
) -> PyResult<Vec<(usize, u64, u64)>> {
    let mut cfg = EnumerationConfig::new(dim, out_dir);
    cfg.max_level = max_level;
    cfg.workers = workers;
    let run = py
        .detach(|| pipeline::run_enumeration(&cfg))
        .map_err(py_err)?;
    if let StopReason::CandidateCap { level, .. } = run.stop {
        return Err(PyValueError::new_err(format!(
            "level {level} hit the candidate cap"
        )));
    }
    Ok(run
        .levels
        .iter()
        .map(|l| (l.n, l.class_count, l.full_dim_count))
        .collect())
}

#[pymodule]
fn pynbpoly(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolytope>()?;
    m.add_function(wrap_pyfunction!(p14_16, m)?)?;
    m.add_function(wrap_pyfunction!(standard_simplex, m)?)?;
    m.add_function(wrap_pyfunction!(full_cube, m)?)?;
    m.add_function(wrap_pyfunction!(gale_tuples, m)?)?;
    m.add_function(wrap_pyfunction!(count_2neighborly_d_plus_2, m)?)?;
    m.add_function(wrap_pyfunction!(extend_level, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    Ok(())
}

//! Python bindings.
//!
//! ```python
//! import perimeter_guard_py as pg
//! b = pg.Boundary([6, 6, 1.5, 1.5], [2, 2, 3, 2])
//! sol = pg.solve(pg.Instance([b], 3))
//! assert abs(sol.ell_star - 6.0) < 1e-9
//! ```

use std::path::PathBuf;

use perimeter_guard as core;
use perimeter_guard::deploy::euclidean;
use perimeter_guard::generate::GenParams;
use perimeter_guard::io::{InstanceDoc, SolutionDoc};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

/// `(region, offset, (x, y))` as handed to Python.
type StationTuple = (usize, f64, Option<(f64, f64)>);

create_exception!(perimeter_guard_py, InfeasibleError, PyValueError);
create_exception!(perimeter_guard_py, BudgetExceededError, PyRuntimeError);

fn py_err(e: core::Error) -> PyErr {
    match e {
        core::Error::Infeasible { .. } => InfeasibleError::new_err(e.to_string()),
        core::Error::BudgetExceeded { .. } => BudgetExceededError::new_err(e.to_string()),
        core::Error::Unsupported(_) => PyRuntimeError::new_err(e.to_string()),
        core::Error::InvalidInput(_) => PyValueError::new_err(e.to_string()),
    }
}

fn tol(epsilon: f64) -> PyResult<core::Tolerance> {
    if epsilon.is_finite() && (0.0..0.1).contains(&epsilon) {
        Ok(core::Tolerance::new(epsilon))
    } else {
        Err(PyValueError::new_err(format!("epsilon must lie in [0, 0.1), got {epsilon}")))
    }
}

/// One region boundary: alternating segment and gap lengths, clockwise.
#[pyclass(name = "Boundary", module = "perimeter_guard_py", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyBoundary {
    inner: core::Boundary,
}

#[pymethods]
impl PyBoundary {
    #[new]
    #[pyo3(signature = (segments, gaps = Vec::new()))]
    fn new(segments: Vec<f64>, gaps: Vec<f64>) -> PyResult<Self> {
        let inner = core::Boundary::from_lengths(&segments, &gaps).map_err(py_err)?;
        Ok(PyBoundary { inner })
    }

    /// Boundary of a polygon with gaps given as `(start, end)` arc-length
    /// intervals measured clockwise from vertex 0.
    #[staticmethod]
    #[pyo3(signature = (vertices, gaps = Vec::new()))]
    fn from_polygon(vertices: Vec<(f64, f64)>, gaps: Vec<(f64, f64)>) -> PyResult<Self> {
        let polygon = core::Polygon::new(vertices.into_iter().map(|(x, y)| core::Point::new(x, y)).collect())
            .map_err(py_err)?;
        let inner = core::build_boundary(polygon, &gaps).map_err(py_err)?;
        Ok(PyBoundary { inner })
    }

    #[getter]
    fn segments(&self) -> Vec<f64> {
        self.inner.segments().to_vec()
    }

    #[getter]
    fn gaps(&self) -> Vec<f64> {
        self.inner.gaps().to_vec()
    }

    #[getter]
    fn total_length(&self) -> f64 {
        self.inner.total_length()
    }

    #[getter]
    fn q(&self) -> usize {
        self.inner.q()
    }

    #[getter]
    fn is_closed_curve(&self) -> bool {
        self.inner.is_closed_curve()
    }

    /// 2D location of a boundary offset; needs polygon geometry.
    fn point_at(&self, offset: f64) -> PyResult<(f64, f64)> {
        let p = self.inner.point_at(offset).map_err(py_err)?;
        Ok((p.x, p.y))
    }

    fn __repr__(&self) -> String {
        format!("Boundary(segments={:?}, gaps={:?})", self.inner.segments(), self.inner.gaps())
    }
}

#[pyclass(name = "Instance", module = "perimeter_guard_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyInstance {
    inner: core::Instance,
}

#[pymethods]
impl PyInstance {
    #[new]
    fn new(boundaries: Vec<PyBoundary>, robots: u64) -> PyResult<Self> {
        let inner = core::Instance::new(boundaries.into_iter().map(|b| b.inner).collect(), robots).map_err(py_err)?;
        Ok(PyInstance { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = InstanceDoc::from_json(text)
            .and_then(|d| d.to_instance())
            .map_err(py_err)?;
        Ok(PyInstance { inner })
    }

    fn to_json(&self) -> String {
        InstanceDoc::from_instance(&self.inner).to_json()
    }

    #[getter]
    fn robots(&self) -> u64 {
        self.inner.robots()
    }

    #[getter]
    fn boundaries(&self) -> Vec<PyBoundary> {
        self.inner
            .boundaries()
            .iter()
            .map(|b| PyBoundary { inner: b.clone() })
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.regions()
    }

    fn __repr__(&self) -> String {
        format!("Instance(regions={}, robots={})", self.inner.regions(), self.inner.robots())
    }
}

#[pyclass(name = "Solution", module = "perimeter_guard_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PySolution {
    inner: core::Solution,
}

#[pymethods]
impl PySolution {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = SolutionDoc::from_json(text).map_err(py_err)?;
        Ok(PySolution { inner: doc.into() })
    }

    fn to_json(&self) -> String {
        SolutionDoc::from(&self.inner).to_json()
    }

    #[getter]
    fn ell_star(&self) -> f64 {
        self.inner.ell_star
    }

    /// `(region, k, k_prime, n_c)` of the evenly split span, or `None`.
    #[getter]
    fn witness(&self) -> Option<(usize, usize, usize, u64)> {
        self.inner.witness.map(|w| (w.region, w.k, w.k_prime, w.n_c))
    }

    #[getter]
    fn robots_per_region(&self) -> Vec<u64> {
        self.inner.robots_per_region.clone()
    }

    /// `(region, start, length)` per robot.
    #[getter]
    fn covers(&self) -> Vec<(usize, f64, f64)> {
        self.inner.covers.iter().map(|c| (c.region, c.start, c.length)).collect()
    }

    /// `(region, offset, point)` per robot; `point` is `None` without geometry.
    #[getter]
    fn stations(&self) -> Vec<StationTuple> {
        self.inner
            .stations
            .iter()
            .map(|s| (s.region, s.offset, s.point.map(|p| (p.x, p.y))))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Solution(ell_star={}, covers={})", self.inner.ell_star, self.inner.covers.len())
    }
}

#[pyfunction]
#[pyo3(signature = (instance, variant = "auto", epsilon = 1e-9))]
fn solve(py: Python<'_>, instance: &PyInstance, variant: &str, epsilon: f64) -> PyResult<PySolution> {
    let variant: core::Variant = variant.parse().map_err(py_err)?;
    let tol = tol(epsilon)?;
    let inner = py
        .detach(|| core::solve(&instance.inner, variant, tol))
        .map_err(py_err)?;
    Ok(PySolution { inner })
}

#[pyfunction]
fn bounds(boundary: &PyBoundary, n: u64) -> PyResult<(f64, f64)> {
    core::bounds(&boundary.inner, n).map_err(py_err)
}

/// Diagnostics as strings; empty when the solution is valid.
#[pyfunction]
#[pyo3(signature = (instance, solution, epsilon = 1e-9))]
fn validate(instance: &PyInstance, solution: &PySolution, epsilon: f64) -> PyResult<Vec<String>> {
    Ok(core::validate_solution(&instance.inner, &solution.inner, tol(epsilon)?)
        .iter()
        .map(|d| d.to_string())
        .collect())
}

/// Euclidean bottleneck assignment; returns `(pairs, bottleneck)` with
/// `(robot, station)` pairs.
#[pyfunction]
fn bottleneck_assign(robots: Vec<(f64, f64)>, stations: Vec<(f64, f64)>) -> PyResult<(Vec<(usize, usize)>, f64)> {
    let to_points = |v: Vec<(f64, f64)>| v.into_iter().map(|(x, y)| core::Point::new(x, y)).collect::<Vec<_>>();
    let plan = core::deploy::bottleneck_assign(&to_points(robots), &to_points(stations), euclidean).map_err(py_err)?;
    Ok((plan.pairs, plan.bottleneck))
}

#[pyfunction]
fn load_instance(path: PathBuf) -> PyResult<PyInstance> {
    let inner = core::io::read_instance(&path)
        .and_then(|d| d.to_instance())
        .map_err(py_err)?;
    Ok(PyInstance { inner })
}

#[pyfunction]
fn load_solution(path: PathBuf) -> PyResult<PySolution> {
    let doc = core::io::read_solution(&path).map_err(py_err)?;
    Ok(PySolution { inner: doc.into() })
}

#[pyfunction]
fn save_solution(solution: &PySolution, path: PathBuf) -> PyResult<()> {
    core::io::write_atomic(&path, solution.to_json().as_bytes()).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pyfunction]
fn save_instance(instance: &PyInstance, path: PathBuf) -> PyResult<()> {
    core::io::write_atomic(&path, instance.to_json().as_bytes()).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Seeded random polygon instance.
#[pyfunction]
#[pyo3(signature = (regions, components, robots, seed = 0))]
fn generate(regions: usize, components: usize, robots: u64, seed: u64) -> PyResult<PyInstance> {
    let inner = core::generate::generate_instance(GenParams {
        regions,
        components,
        robots,
        seed,
    })
    .and_then(|d| d.to_instance())
    .map_err(py_err)?;
    Ok(PyInstance { inner })
}

#[pyfunction]
#[pyo3(signature = (instance, solution = None))]
fn render_svg(instance: &PyInstance, solution: Option<&PySolution>) -> PyResult<String> {
    core::render::render_svg(&instance.inner, solution.map(|s| &s.inner)).map_err(py_err)
}

#[pymodule]
fn perimeter_guard_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBoundary>()?;
    m.add_class::<PyInstance>()?;
    m.add_class::<PySolution>()?;
    m.add("InfeasibleError", m.py().get_type::<InfeasibleError>())?;
    m.add("BudgetExceededError", m.py().get_type::<BudgetExceededError>())?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(bottleneck_assign, m)?)?;
    m.add_function(wrap_pyfunction!(load_instance, m)?)?;
    m.add_function(wrap_pyfunction!(load_solution, m)?)?;
    m.add_function(wrap_pyfunction!(save_instance, m)?)?;
    m.add_function(wrap_pyfunction!(save_solution, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    Ok(())
}

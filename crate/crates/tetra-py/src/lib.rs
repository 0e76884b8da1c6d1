//! Python bindings. Structures cross the boundary as JSON text; reports come
//! back as dictionaries.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde_json::Value;
use tetra::finrack::FinRack as RsFinRack;
use tetra::forge;
use tetra::leibniz2::{check_central, check_leibniz2, Leibniz2Algebra as RsLeibniz};
use tetra::rack2::{check_linear_2rack, Linear2Rack as RsRack};
use tetra::ratmat::{Mat, Rat};
use tetra::report::Report;
use tetra::split::{make_splitting, rack_from_splitting};
use tetra::zte::{decategorify_solution, from_central_leibniz, from_linear_2rack, verify_ybe, verify_zte, ZteSolution as RsZte};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(text: &str) -> PyResult<Value> {
    serde_json::from_str(text).map_err(err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    let json = py.import("json")?;
    json.call_method1("loads", (v.to_string(),))
}

fn report<'py>(py: Python<'py>, r: &Report) -> PyResult<Bound<'py, PyAny>> {
    let d = to_py(py, &r.to_json())?;
    d.cast::<PyDict>()?.set_item("passed", r.passed())?;
    Ok(d)
}

fn rats(xs: Vec<String>) -> PyResult<Vec<Rat>> {
    xs.iter().map(|s| s.parse::<Rat>().map_err(err)).collect()
}

fn mat(rows: Vec<Vec<String>>, cols: usize) -> PyResult<Mat> {
    let rows = rows.into_iter().map(rats).collect::<PyResult<Vec<_>>>()?;
    Mat::from_rows_with_cols(rows, cols).map_err(err)
}

/// A Leibniz 2-algebra, optionally with a central object.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Leibniz2Algebra {
    inner: RsLeibniz,
    central: Option<Vec<Rat>>,
}

#[pymethods]
impl Leibniz2Algebra {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let (inner, central) = RsLeibniz::from_json(&parse(text)?).map_err(err)?;
        Ok(Leibniz2Algebra { inner, central })
    }

    fn to_json(&self) -> String {
        self.inner.to_json(self.central.as_deref()).to_string()
    }

    #[getter]
    fn dims(&self) -> (usize, usize) {
        (self.inner.space().dim_obj(), self.inner.space().dim_arr())
    }

    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let mut r = check_leibniz2(&self.inner);
        if let Some(e) = &self.central {
            r.set("central", check_central(&self.inner, e));
        }
        report(py, &r)
    }

    /// The tetrahedron solution `B = τ + e⊗[,]`, `Y = ι_e⊗ι_e⊗J`.
    fn zte(&self) -> PyResult<ZteSolution> {
        let e = self.central.as_ref().ok_or_else(|| err("a central object is required"))?;
        Ok(ZteSolution { inner: from_central_leibniz(&self.inner, e).map_err(err)? })
    }

    /// The linear 2-rack of a splitting `sigma0` of `U -> U/⟨e⟩`.
    fn split_rack(&self, sigma0: Vec<Vec<String>>) -> PyResult<Linear2Rack> {
        let e = self.central.as_ref().ok_or_else(|| err("a central object is required"))?;
        let n = self.inner.space().dim_obj();
        let s = mat(sigma0, n.saturating_sub(1))?;
        let sp = make_splitting(&self.inner, e, &s).map_err(err)?;
        Ok(Linear2Rack { inner: rack_from_splitting(&sp).map_err(err)? })
    }
}

#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Linear2Rack {
    inner: RsRack,
}

#[pymethods]
impl Linear2Rack {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Linear2Rack { inner: RsRack::from_json(&parse(text)?).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &check_linear_2rack(&self.inner))
    }

    fn zte(&self) -> PyResult<ZteSolution> {
        Ok(ZteSolution { inner: from_linear_2rack(&self.inner).map_err(err)? })
    }
}

#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct ZteSolution {
    inner: RsZte,
}

#[pymethods]
impl ZteSolution {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(ZteSolution { inner: RsZte::from_json(&parse(text)?).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &verify_zte(&self.inner))
    }

    /// `(dim, Bbar)` with entries as `"p/q"` strings.
    fn decategorify(&self) -> (usize, Vec<Vec<String>>) {
        let (y, _) = decategorify_solution(&self.inner);
        let rows = y.bbar.to_dense().into_iter().map(|r| r.into_iter().map(|x| x.to_string()).collect()).collect();
        (y.dim, rows)
    }
}

#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct FinRack {
    inner: RsFinRack,
}

#[pymethods]
impl FinRack {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(FinRack { inner: RsFinRack::from_json(&parse(text)?).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &self.inner.check())
    }
}

/// A seeded central Leibniz 2-algebra.
#[pyfunction]
#[pyo3(signature = (dims, seed=0, bound=3))]
fn sample_leibniz2(dims: (usize, usize), seed: u64, bound: i64) -> PyResult<Leibniz2Algebra> {
    let (inner, e) = forge::sample_leibniz2(seed, dims, bound).map_err(err)?;
    Ok(Leibniz2Algebra { inner, central: Some(e) })
}

/// A seeded linear 2-rack.
#[pyfunction]
#[pyo3(signature = (dims, seed=0, bound=3))]
fn sample_rack(dims: (usize, usize), seed: u64, bound: i64) -> PyResult<Linear2Rack> {
    Ok(Linear2Rack { inner: forge::sample_rack(seed, dims, bound).map_err(err)? })
}

#[pyfunction]
fn ybe(matrix: Vec<Vec<String>>, dim: usize) -> PyResult<bool> {
    verify_ybe(&mat(matrix, dim * dim)?, dim).map_err(err)
}

/// The conjugation 2-rack of the Z/2-Z/3 crossed module acting on itself.
#[pyfunction]
fn z2_z3_rack() -> FinRack {
    let (cat, lhd) = forge::fix_f();
    FinRack { inner: RsFinRack::strict(cat, lhd) }
}

/// Runs the command-line front end; returns `(exit_code, stdout)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String) {
    tetra::cli::run(std::iter::once("tetra".to_string()).chain(args))
}

#[pymodule]
fn pytetra(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Leibniz2Algebra>()?;
    m.add_class::<Linear2Rack>()?;
    m.add_class::<ZteSolution>()?;
    m.add_class::<FinRack>()?;
    m.add_function(wrap_pyfunction!(sample_leibniz2, m)?)?;
    m.add_function(wrap_pyfunction!(sample_rack, m)?)?;
    m.add_function(wrap_pyfunction!(ybe, m)?)?;
    m.add_function(wrap_pyfunction!(z2_z3_rack, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}

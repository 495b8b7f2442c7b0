//! Python bindings.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use relkort_core::profile::{self, Direction};
use relkort_core::{jump, nonbaro, tensor, Tolerances};

create_exception!(relkort, RelkortError, PyException);

fn err(e: relkort_core::Error) -> PyErr {
    RelkortError::new_err(e.to_string())
}

fn direction(s: &str) -> PyResult<Direction> {
    s.parse().map_err(err)
}

/// Barotropic equation of state.
#[pyclass(name = "Eos", frozen)]
struct PyEos {
    inner: relkort_core::Eos,
}

#[pymethods]
impl PyEos {
    /// The canonical cubic van der Waals law.
    #[staticmethod]
    fn cubic_vdw() -> PyResult<Self> {
        let inner = relkort_core::Eos::cubic_vdw().with_spinodal(&Tolerances::default()).map_err(err)?;
        Ok(PyEos { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let eos = relkort_core::Eos::from_json(text).map_err(err)?;
        let inner = eos.clone().with_spinodal(&Tolerances::default()).unwrap_or(eos);
        Ok(PyEos { inner })
    }

    fn domain(&self) -> (f64, f64) {
        self.inner.domain()
    }

    fn r(&self, nu: f64) -> PyResult<f64> {
        Ok(self.inner.eval(nu).map_err(err)?.r)
    }

    fn pressure(&self, nu: f64) -> PyResult<f64> {
        Ok(self.inner.eval(nu).map_err(err)?.pressure)
    }

    fn spinodal(&self) -> PyResult<(f64, f64)> {
        let s = self.inner.spinodal(&Tolerances::default()).map_err(err)?;
        Ok((s.nu_a, s.nu_b))
    }
}

#[pyclass(name = "FamilyRow", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyFamilyRow {
    m: f64,
    nu_minus: f64,
    nu_plus: f64,
    c: f64,
    q1: f64,
    q0: f64,
}

impl From<jump::FamilyRow> for PyFamilyRow {
    fn from(r: jump::FamilyRow) -> Self {
        PyFamilyRow { m: r.m, nu_minus: r.nu_minus, nu_plus: r.nu_plus, c: r.c, q1: r.q1, q0: r.q0 }
    }
}

#[pymethods]
impl PyFamilyRow {
    fn __repr__(&self) -> String {
        format!("FamilyRow(m={}, nu_minus={}, nu_plus={}, c={}, q1={})", self.m, self.nu_minus, self.nu_plus, self.c, self.q1)
    }
}

/// Sampled heteroclinic profile.
#[pyclass(name = "Profile", frozen)]
struct PyProfile {
    eos: relkort_core::Eos,
    inner: relkort_core::ProfileSolution,
}

#[pymethods]
impl PyProfile {
    #[getter]
    fn x1(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|s| s.x1).collect()
    }

    #[getter]
    fn nu(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|s| s.nu).collect()
    }

    #[getter]
    fn omega(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|s| s.omega).collect()
    }

    #[getter]
    fn endpoint_gap(&self) -> f64 {
        self.inner.endpoint_gap
    }

    fn first_integral_drift(&self) -> PyResult<f64> {
        self.inner.first_integral_drift(&self.eos).map_err(err)
    }

    /// `(dev01, dev11)`
    fn flux_constancy(&self) -> PyResult<(f64, f64)> {
        let d = tensor::flux_constancy(&self.eos, &self.inner).map_err(err)?;
        Ok((d.dev01, d.dev11))
    }

    fn residual(&self) -> PyResult<f64> {
        profile::profile_residual(&self.eos, &self.inner, self.inner.m, self.inner.c).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.samples.len()
    }
}

#[pyfunction]
fn maxwell<'py>(py: Python<'py>, eos: &PyEos) -> PyResult<Bound<'py, PyDict>> {
    let m = jump::maxwell(&eos.inner, &Tolerances::default()).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("pi_star", m.pi_star)?;
    d.set_item("c", m.c)?;
    d.set_item("nu_minus0", m.nu_minus0)?;
    d.set_item("nu_plus0", m.nu_plus0)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (eos, dm=0.01, m_max=None))]
fn continue_family(eos: &PyEos, dm: f64, m_max: Option<f64>) -> PyResult<Vec<PyFamilyRow>> {
    let f = jump::continue_family(&eos.inner, dm, m_max, &Tolerances::default()).map_err(err)?;
    Ok(f.rows.into_iter().map(Into::into).collect())
}

#[pyfunction]
#[pyo3(signature = (eos, m, direction="fwd", samples=4001, dm=0.01, method="quadrature"))]
fn heteroclinic_profile(eos: &PyEos, m: f64, direction: &str, samples: usize, dm: f64, method: &str) -> PyResult<PyProfile> {
    let tol = Tolerances::default();
    let row = jump::family_row_at(&eos.inner, m, dm, &tol).map_err(err)?;
    let dir = self::direction(direction)?;
    let inner = match method {
        "quadrature" => profile::heteroclinic_quadrature(&eos.inner, &row, dir, samples, &tol),
        "shoot" => profile::heteroclinic_shoot(&eos.inner, &row, dir, &tol),
        other => return Err(RelkortError::new_err(format!("unknown method {other:?}"))),
    }
    .map_err(err)?;
    Ok(PyProfile { eos: eos.inner.clone(), inner })
}

#[pyfunction]
#[pyo3(signature = (eos2d_json, s_star, m, direction="fwd", samples=4001, dm=0.01))]
fn nonbaro_profile(eos2d_json: &str, s_star: f64, m: f64, direction: &str, samples: usize, dm: f64) -> PyResult<PyProfile> {
    let e2 = nonbaro::Eos2d::from_json(eos2d_json).map_err(err)?;
    let out = nonbaro::nonbaro_profile(&e2, s_star, m, self::direction(direction)?, samples, dm, &Tolerances::default()).map_err(err)?;
    Ok(PyProfile { eos: out.slice, inner: out.profile })
}

#[pymodule]
fn relkort(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RelkortError", m.py().get_type::<RelkortError>())?;
    m.add_class::<PyEos>()?;
    m.add_class::<PyFamilyRow>()?;
    m.add_class::<PyProfile>()?;
    m.add_function(wrap_pyfunction!(maxwell, m)?)?;
    m.add_function(wrap_pyfunction!(continue_family, m)?)?;
    m.add_function(wrap_pyfunction!(heteroclinic_profile, m)?)?;
    m.add_function(wrap_pyfunction!(nonbaro_profile, m)?)?;
    Ok(())
}

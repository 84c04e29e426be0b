//! Python bindings: an `Algebra` handle plus element and polynomial wrappers.
//! Expressions go through the same parser as the command line.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qtorus::cli::{render_verify, Format};
use qtorus::hwv::{hwv_solve, irreducibility_report, weight_of, TruncationStatus};
use qtorus::parse::{parse_lie_expr, parse_poly_expr, parse_scalar};
use qtorus::verify::{run_verify, VerifySpec};
use qtorus::{AlgebraConfig, ExponentWindow, FieldMode, RepParams};

fn py_err(e: qtorus::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn window(s: &str) -> PyResult<ExponentWindow> {
    let w: ExponentWindow = s.parse().map_err(py_err)?;
    if w.is_empty() {
        return Err(PyValueError::new_err(format!("window `{s}` is empty")));
    }
    Ok(w)
}

fn windows(support: &str, test: Option<&str>) -> PyResult<(ExponentWindow, ExponentWindow)> {
    let s = window(support)?;
    let t = match test {
        Some(t) => window(t)?,
        None => s.dilate(1),
    };
    Ok((s, t))
}

/// An element of the Lie algebra.
#[pyclass(name = "LieElem", frozen)]
pub struct PyLieElem(qtorus::LieElem);

#[pymethods]
impl PyLieElem {
    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LieElem({})", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.add(&other.0).map(Self).map_err(py_err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.sub(&other.0).map(Self).map_err(py_err)
    }

    fn __neg__(&self) -> Self {
        Self(self.0.neg())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// A polynomial in the variables `x_i(m, n)`.
#[pyclass(name = "Poly", frozen)]
pub struct PyPoly(qtorus::Poly);

#[pymethods]
impl PyPoly {
    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(self.0.sub(&other.0))
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(self.0.mul(&other.0))
    }

    fn __neg__(&self) -> Self {
        Self(self.0.neg())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// The algebra for a given `l` and `q`, acting on polynomials with parameter `mu`.
#[pyclass(name = "Algebra", frozen)]
pub struct PyAlgebra {
    params: RepParams,
}

impl PyAlgebra {
    fn cfg(&self) -> &AlgebraConfig {
        self.params.cfg()
    }
}

#[pymethods]
impl PyAlgebra {
    #[new]
    #[pyo3(signature = (l = 2, q = "generic", mu = "1"))]
    fn new(l: usize, q: &str, mu: &str) -> PyResult<Self> {
        let field: FieldMode = q.parse().map_err(py_err)?;
        let cfg = AlgebraConfig::new(l, field).map_err(py_err)?;
        let mu = parse_scalar(mu, cfg.field()).map_err(py_err)?;
        let params = RepParams::new(cfg, mu).map_err(py_err)?;
        Ok(PyAlgebra { params })
    }

    #[getter]
    fn l(&self) -> usize {
        self.params.l()
    }

    #[getter]
    fn q(&self) -> String {
        self.params.field().to_string()
    }

    #[getter]
    fn mu(&self) -> String {
        self.params.mu().to_string()
    }

    fn lie(&self, expr: &str) -> PyResult<PyLieElem> {
        parse_lie_expr(expr, self.cfg()).map(PyLieElem).map_err(py_err)
    }

    fn poly(&self, expr: &str) -> PyResult<PyPoly> {
        parse_poly_expr(expr, self.cfg()).map(PyPoly).map_err(py_err)
    }

    fn bracket(&self, x: &PyLieElem, y: &PyLieElem) -> PyResult<PyLieElem> {
        x.0.bracket(&y.0).map(PyLieElem).map_err(py_err)
    }

    fn act(&self, x: &PyLieElem, p: &PyPoly) -> PyResult<PyPoly> {
        self.params.act(&x.0, &p.0).map(PyPoly).map_err(py_err)
    }

    /// True when `[φ(x), φ(y)] p == φ([x, y]) p`.
    fn check_commutator(&self, x: &PyLieElem, y: &PyLieElem, p: &PyPoly) -> PyResult<bool> {
        let r = self.params.check_commutator(&x.0, &y.0, &p.0).map_err(py_err)?;
        Ok(r.equal)
    }

    /// `(e11 eigenvalue, kvec, ds degree, dt degree)` of a single monomial.
    fn weight(&self, p: &PyPoly) -> PyResult<(String, Vec<u32>, i64, i64)> {
        let mut terms = p.0.terms();
        let (mono, _) = match (terms.next(), terms.next()) {
            (Some(t), None) => t,
            _ => return Err(PyValueError::new_err("weight needs a single term")),
        };
        let w = weight_of(mono, &self.params);
        Ok((w.e11_val.to_string(), w.kvec, w.ds_deg, w.dt_deg))
    }

    /// Nullspace basis of the windowed `n_+` in one weight space, with
    /// `"certified-empty"` or `"candidate"`.
    #[pyo3(signature = (kvec, ds = 0, dt = 0, window = "-1:1", test_window = None))]
    fn hwv(
        &self,
        kvec: Vec<u32>,
        ds: i64,
        dt: i64,
        window: &str,
        test_window: Option<&str>,
    ) -> PyResult<(Vec<PyPoly>, &'static str)> {
        let (s, t) = windows(window, test_window)?;
        let r = hwv_solve(&kvec, ds, dt, &s, &t, &self.params).map_err(py_err)?;
        let status = match r.caveat.status {
            TruncationStatus::CertifiedEmpty => "certified-empty",
            TruncationStatus::Candidate => "candidate",
        };
        Ok((r.basis.into_iter().map(PyPoly).collect(), status))
    }

    /// Irreducibility report as a JSON string.
    #[pyo3(signature = (window = "-1:1", test_window = None, max_k = 2, degree_cap = 2))]
    fn report(&self, window: &str, test_window: Option<&str>, max_k: u32, degree_cap: u32) -> PyResult<String> {
        let (s, t) = windows(window, test_window)?;
        let r = irreducibility_report(&self.params, &s, &t, max_k, degree_cap).map_err(py_err)?;
        Ok(r.to_json())
    }

    /// Axiom and homomorphism sweep; returns `(passed, json)`.
    #[pyo3(signature = (window = "-1:1", degree_cap = 2, samples = None, seed = 0))]
    fn verify(&self, window: &str, degree_cap: u32, samples: Option<usize>, seed: u64) -> PyResult<(bool, String)> {
        let w = self::window(window)?;
        let spec = match samples {
            Some(n) => VerifySpec::sampled(w, degree_cap, seed, n),
            None => VerifySpec::exhaustive(w, degree_cap),
        };
        let r = run_verify(&self.params, &spec).map_err(py_err)?;
        Ok((r.passed(), render_verify(&r, Format::Json)))
    }
}

#[pymodule]
fn pyqtorus(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyLieElem>()?;
    m.add_class::<PyPoly>()?;
    Ok(())
}

//! Python bindings: the mixed-polynomial type, the solver, the
//! classification tag, and the lens families.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lensroots::classify::classify_polynomial;
use lensroots::families;
use lensroots::mixedpoly::MixedPolynomial;
use lensroots::plot::{render_svg as render, PlotSpec};
use lensroots::solver::{self, Contour};

fn err(e: lensroots::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "MixedPolynomial", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoly {
    inner: MixedPolynomial,
}

#[pymethods]
impl PyPoly {
    /// Build from (nu, mu, coefficient) triples; duplicates accumulate.
    #[new]
    fn new(terms: Vec<(u32, u32, Complex64)>) -> Self {
        PyPoly { inner: MixedPolynomial::new(terms) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPoly { inner: MixedPolynomial::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn terms(&self) -> Vec<(u32, u32, Complex64)> {
        self.inner.terms()
    }

    fn evaluate(&self, z: Complex64) -> Complex64 {
        self.inner.evaluate(z)
    }

    /// (holomorphic degree, antiholomorphic degree, mixed degree)
    fn degrees(&self) -> PyResult<(u32, u32, u32)> {
        let p = self.inner.degrees().map_err(err)?;
        Ok((p.holo, p.antiholo, p.mixed))
    }

    /// Class tag like "L(4;3,1)".
    fn classify(&self) -> PyResult<String> {
        Ok(classify_polynomial(&self.inner).map_err(err)?.to_string())
    }

    fn __repr__(&self) -> String {
        format!("MixedPolynomial({} terms)", self.inner.terms().len())
    }
}

#[pyclass(name = "Root", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRoot {
    #[pyo3(get)]
    location: Complex64,
    /// "+", "-", or "0"
    #[pyo3(get)]
    sign: String,
    #[pyo3(get)]
    jacobian: f64,
    #[pyo3(get)]
    residual: f64,
}

#[pymethods]
impl PyRoot {
    fn __repr__(&self) -> String {
        format!("Root({}, sign={:?})", self.location, self.sign)
    }
}

#[pyclass(name = "RootReport", frozen)]
struct PyReport {
    #[pyo3(get)]
    rho: usize,
    #[pyo3(get)]
    beta: i64,
    #[pyo3(get)]
    winding_certified: bool,
    #[pyo3(get)]
    degenerate_found: bool,
    #[pyo3(get)]
    class_tag: String,
    #[pyo3(get)]
    roots: Vec<PyRoot>,
    json: String,
}

#[pymethods]
impl PyReport {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!("RootReport(rho={}, beta={}, class={})", self.rho, self.beta, self.class_tag)
    }
}

fn wrap_report(report: solver::RootReport) -> PyReport {
    PyReport {
        rho: report.rho,
        beta: report.beta,
        winding_certified: report.winding_certified,
        degenerate_found: report.degenerate_found,
        class_tag: report.class.to_string(),
        roots: report
            .roots
            .iter()
            .map(|r| PyRoot {
                location: r.location,
                sign: r.sign.as_str().to_string(),
                jacobian: r.jacobian,
                residual: r.residual,
            })
            .collect(),
        json: report.to_json(),
    }
}

/// All isolated roots of f, signed, counted, and winding-certified.
#[pyfunction]
fn solve_all(f: &PyPoly) -> PyResult<PyReport> {
    Ok(wrap_report(solver::solve_all(&f.inner).map_err(err)?))
}

#[pyfunction]
fn rhie3() -> PyPoly {
    PyPoly { inner: families::rhie3() }
}

#[pyfunction]
fn example() -> PyPoly {
    PyPoly { inner: families::example_f() }
}

#[pyfunction]
fn power_lens(n: u32, m: u32) -> PyResult<PyPoly> {
    Ok(PyPoly { inner: families::power_lens(n, m).map_err(err)? })
}

#[pyfunction]
fn rhie_family(n: u32, epsilon: f64, a: f64) -> PyResult<PyPoly> {
    Ok(PyPoly { inner: families::rhie_family(n, epsilon, a).map_err(err)? })
}

#[pyfunction]
fn lens_numerator(masses: Vec<Complex64>, positions: Vec<Complex64>) -> PyResult<PyPoly> {
    let sys = families::LensSystem { masses, positions };
    Ok(PyPoly { inner: families::lens_numerator(&sys).map_err(err)? })
}

fn bifurcation(
    base: &PyPoly,
    m: u32,
    t: Option<Complex64>,
    variant: families::Variant,
) -> PyResult<PyPoly> {
    let mut spec =
        families::BifurcationSpec::new(base.inner.clone(), m, Complex64::ZERO, variant)
            .map_err(err)?;
    spec.t = t.unwrap_or_else(|| spec.default_t());
    let f = match variant {
        families::Variant::Phi => families::phi_t(&spec),
        families::Variant::Psi => families::psi_t(&spec),
    };
    Ok(PyPoly { inner: f.map_err(err)? })
}

/// phi_t deformation of an L-class base with m = 1; t defaults to
/// 1e-3 |gamma|.
#[pyfunction]
#[pyo3(signature = (base, m, t = None))]
fn phi(base: &PyPoly, m: u32, t: Option<Complex64>) -> PyResult<PyPoly> {
    bifurcation(base, m, t, families::Variant::Phi)
}

/// psi_t deformation; same contract as phi.
#[pyfunction]
#[pyo3(signature = (base, m, t = None))]
fn psi(base: &PyPoly, m: u32, t: Option<Complex64>) -> PyResult<PyPoly> {
    bifurcation(base, m, t, families::Variant::Psi)
}

#[pyfunction]
fn predict_infinity_roots(gamma: Complex64, m: u32, t: Complex64) -> PyResult<Vec<Complex64>> {
    families::predict_infinity_roots(gamma, m, t).map_err(err)
}

#[pyfunction]
fn winding_number(f: &PyPoly, center: Complex64, radius: f64) -> PyResult<i64> {
    solver::winding_number(&f.inner, &Contour::circle(center, radius)).map_err(err)
}

/// SVG of the zero curves of Re f (green) and Im f (red); pass a report
/// to mark its roots.
#[pyfunction]
#[pyo3(signature = (f, window, samples = 600, report = None))]
fn render_svg(
    f: &PyPoly,
    window: (f64, f64, f64, f64),
    samples: u32,
    report: Option<&PyReport>,
) -> PyResult<String> {
    let spec = PlotSpec { window, samples, show_roots: report.is_some() };
    let roots = report.map(|r| {
        r.roots
            .iter()
            .map(|pr| solver::Root {
                location: pr.location,
                jacobian: pr.jacobian,
                sign: match pr.sign.as_str() {
                    "+" => solver::Sign::Positive,
                    "-" => solver::Sign::Negative,
                    _ => solver::Sign::Degenerate,
                },
                residual: pr.residual,
                newton_iterations: 0,
            })
            .collect::<Vec<_>>()
    });
    render(&f.inner, &spec, roots.as_deref()).map_err(err)
}

#[pymodule]
fn lensroots_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyRoot>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(solve_all, m)?)?;
    m.add_function(wrap_pyfunction!(rhie3, m)?)?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add_function(wrap_pyfunction!(power_lens, m)?)?;
    m.add_function(wrap_pyfunction!(rhie_family, m)?)?;
    m.add_function(wrap_pyfunction!(lens_numerator, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(predict_infinity_roots, m)?)?;
    m.add_function(wrap_pyfunction!(winding_number, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    Ok(())
}

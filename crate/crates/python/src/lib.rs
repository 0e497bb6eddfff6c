//! Python module `pychordwig`.

use chordwig::chords::{diameter_locus, ChordRealization};
use chordwig::evaluators::{self as ev, ChordValue, EvalOptions};
use chordwig::fock::{self, FockState};
use chordwig::{centres, special, wigner, wkb, ChordVector, ConvexCurve, PhasePoint};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict};

create_exception!(pychordwig, ChordwigError, PyException);

fn err(e: chordwig::Error) -> PyErr {
    ChordwigError::new_err(format!("{}: {e}", e.tag()))
}

fn opts(n_squared: Option<f64>) -> EvalOptions {
    n_squared.map_or_else(EvalOptions::default, EvalOptions::with_n_squared)
}

type LocusRow = (f64, f64, f64, f64, f64, f64);

fn complex<'py>(py: Python<'py>, v: ChordValue) -> Bound<'py, PyComplex> {
    PyComplex::from_doubles(py, v.re, v.im)
}

/// Quantized convex curve {H = E} with enclosed area 2πℏ(n + ½).
#[pyclass(frozen, name = "Curve")]
struct Curve {
    inner: ConvexCurve,
}

#[pymethods]
impl Curve {
    #[new]
    #[pyo3(signature = (family, params = Vec::new(), n = 0, hbar = 1.0))]
    fn new(family: &str, params: Vec<f64>, n: u32, hbar: f64) -> PyResult<Self> {
        Ok(Curve { inner: chordwig::build_curve(family, &params, n, hbar).map_err(err)? })
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family.name()
    }

    #[getter]
    fn params(&self) -> Vec<f64> {
        self.inner.family.params()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }

    #[getter]
    fn hbar(&self) -> f64 {
        self.inner.hbar
    }

    #[getter]
    fn energy(&self) -> f64 {
        self.inner.energy
    }

    #[getter]
    fn action(&self) -> f64 {
        self.inner.action
    }

    #[getter]
    fn angle_rescale(&self) -> f64 {
        self.inner.angle_rescale
    }

    fn enclosed_area(&self) -> f64 {
        self.inner.enclosed_area()
    }

    fn point_at(&self, theta: f64) -> (f64, f64) {
        let x = self.inner.point_at(theta);
        (x.p, x.q)
    }

    fn velocity(&self, p: f64, q: f64) -> PyResult<(f64, f64)> {
        let v = self.inner.velocity(PhasePoint::new(p, q)).map_err(err)?;
        Ok((v.xi_p, v.xi_q))
    }

    fn hessian_form(&self, p: f64, q: f64, vp: f64, vq: f64) -> PyResult<f64> {
        self.inner.hessian_form(PhasePoint::new(p, q), ChordVector::new(vp, vq)).map_err(err)
    }

    /// Rows (theta_a, theta_b, xi_p, xi_q, xD_p, xD_q).
    #[pyo3(signature = (m = 64))]
    fn diameter_locus(&self, m: usize) -> PyResult<Vec<LocusRow>> {
        let locus = diameter_locus(&self.inner, m).map_err(err)?;
        Ok(locus
            .samples
            .iter()
            .map(|s| (s.theta_a, s.theta_b, s.xi_d.xi_p, s.xi_d.xi_q, s.x_d.p, s.x_d.q))
            .collect())
    }

    /// The two realizations of ξ and the derived pair quantities.
    fn chord_geometry<'py>(&self, py: Python<'py>, xi_p: f64, xi_q: f64) -> PyResult<Bound<'py, PyDict>> {
        let g = chordwig::find_chord_realizations(&self.inner, ChordVector::new(xi_p, xi_q)).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("r1", realization(py, &g.r1)?)?;
        d.set_item("r2", realization(py, &g.r2)?)?;
        d.set_item("eta", (g.eta.xi_p, g.eta.xi_q))?;
        d.set_item("area_sum", g.area_sum)?;
        d.set_item("area_diff", g.area_diff)?;
        d.set_item("zeta", g.zeta)?;
        d.set_item("sigma_i", g.sigma_i)?;
        d.set_item("delta_i", g.delta_i)?;
        Ok(d)
    }

    /// Chords centred on x: list of (xi_p, xi_q, area, bracket), coalescing pair first.
    fn centre_chords(&self, p: f64, q: f64) -> PyResult<Vec<(f64, f64, f64, f64)>> {
        let g = centres::find_centre_chords(&self.inner, PhasePoint::new(p, q)).map_err(err)?;
        Ok(g.chords.iter().map(|c| (c.xi.xi_p, c.xi.xi_q, c.area, c.bracket)).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Curve(family={:?}, params={:?}, n={}, hbar={})",
            self.inner.family.name(),
            self.inner.family.params(),
            self.inner.n,
            self.inner.hbar
        )
    }
}

fn realization<'py>(py: Python<'py>, r: &ChordRealization) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("x_minus", (r.x_minus.p, r.x_minus.q))?;
    d.set_item("x_plus", (r.x_plus.p, r.x_plus.q))?;
    d.set_item("centre", (r.centre.p, r.centre.q))?;
    d.set_item("bracket", r.bracket)?;
    d.set_item("area", r.area)?;
    d.set_item("phase", r.phase)?;
    Ok(d)
}

macro_rules! chord_fn {
    ($name:ident, $inner:path) => {
        #[pyfunction]
        #[pyo3(signature = (curve, xi_p, xi_q, n_squared = None))]
        fn $name<'py>(
            py: Python<'py>,
            curve: &Curve,
            xi_p: f64,
            xi_q: f64,
            n_squared: Option<f64>,
        ) -> PyResult<Bound<'py, PyComplex>> {
            let v = $inner(&curve.inner, ChordVector::new(xi_p, xi_q), &opts(n_squared)).map_err(err)?;
            Ok(complex(py, v))
        }
    };
}

chord_fn!(chord_uniform, ev::chord_uniform_with);
chord_fn!(chord_asymptotic, ev::chord_asymptotic_with);
chord_fn!(chord_transitional, ev::chord_transitional_with);
chord_fn!(chord_evaluate, ev::chord_evaluate_with);

macro_rules! wigner_fn {
    ($name:ident, $inner:path) => {
        #[pyfunction]
        #[pyo3(signature = (curve, p, q, n_squared = None))]
        fn $name(curve: &Curve, p: f64, q: f64, n_squared: Option<f64>) -> PyResult<f64> {
            Ok($inner(&curve.inner, PhasePoint::new(p, q), &opts(n_squared)).map_err(err)?.value)
        }
    };
}

wigner_fn!(wigner_uniform, wigner::wigner_uniform_with);
wigner_fn!(wigner_asymptotic, wigner::wigner_asymptotic_with);
wigner_fn!(wigner_transitional, wigner::wigner_transitional_with);
wigner_fn!(wigner_evaluate, wigner::wigner_evaluate_with);

#[pyfunction]
fn select_regime(curve: &Curve, xi_p: f64, xi_q: f64) -> PyResult<&'static str> {
    Ok(ev::select_regime(&curve.inner, ChordVector::new(xi_p, xi_q)).map_err(err)?.tag())
}

#[pyfunction]
#[pyo3(signature = (curve, xi_p, xi_q, n_squared = None))]
fn correlation_semiclassical(curve: &Curve, xi_p: f64, xi_q: f64, n_squared: Option<f64>) -> PyResult<f64> {
    ev::correlation_semiclassical_with(&curve.inner, ChordVector::new(xi_p, xi_q), &opts(n_squared)).map_err(err)
}

/// Numeric chord function from the WKB wave function, with its error estimate.
#[pyfunction]
fn chord_integral_numeric<'py>(
    py: Python<'py>,
    curve: &Curve,
    xi_p: f64,
    xi_q: f64,
) -> PyResult<(Bound<'py, PyComplex>, f64)> {
    let v = wkb::chord_integral_numeric(&curve.inner, ChordVector::new(xi_p, xi_q)).map_err(err)?;
    Ok((PyComplex::from_doubles(py, v.value.re, v.value.im), v.error))
}

#[pyfunction]
fn wigner_integral_numeric(curve: &Curve, p: f64, q: f64) -> PyResult<f64> {
    Ok(wkb::wigner_integral_numeric(&curve.inner, PhasePoint::new(p, q)).map_err(err)?.value)
}

fn state(n: u32, hbar: f64) -> PyResult<FockState> {
    FockState::new(n, hbar).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, xi_abs, hbar = 1.0))]
fn fock_chord_exact(n: u32, xi_abs: f64, hbar: f64) -> PyResult<f64> {
    Ok(fock::fock_chord_exact(&state(n, hbar)?, ChordVector::new(xi_abs, 0.0)))
}

#[pyfunction]
#[pyo3(signature = (n, xi_abs, hbar = 1.0))]
fn fock_chord_uniform(n: u32, xi_abs: f64, hbar: f64) -> PyResult<f64> {
    fock::fock_chord_uniform(&state(n, hbar)?, ChordVector::new(xi_abs, 0.0)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, hbar = 1.0))]
fn purity_check(n: u32, hbar: f64) -> PyResult<f64> {
    fock::purity_check(&state(n, hbar)?).map_err(err)
}

#[pyfunction]
fn airy_ai(x: f64) -> PyResult<f64> {
    special::airy_ai(x).map_err(err)
}

#[pyfunction]
fn airy_ai_prime(x: f64) -> PyResult<f64> {
    special::airy_ai_prime(x).map_err(err)
}

#[pyfunction]
fn bessel_j0(x: f64) -> f64 {
    special::bessel_j0(x)
}

#[pyfunction]
fn laguerre(n: u32, x: f64) -> f64 {
    special::laguerre(n, x)
}

#[pymodule]
fn pychordwig(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ChordwigError", m.py().get_type::<ChordwigError>())?;
    m.add_class::<Curve>()?;
    m.add_function(wrap_pyfunction!(chord_uniform, m)?)?;
    m.add_function(wrap_pyfunction!(chord_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(chord_transitional, m)?)?;
    m.add_function(wrap_pyfunction!(chord_evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(select_regime, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_uniform, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_transitional, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(correlation_semiclassical, m)?)?;
    m.add_function(wrap_pyfunction!(chord_integral_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_integral_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(fock_chord_exact, m)?)?;
    m.add_function(wrap_pyfunction!(fock_chord_uniform, m)?)?;
    m.add_function(wrap_pyfunction!(purity_check, m)?)?;
    m.add_function(wrap_pyfunction!(airy_ai, m)?)?;
    m.add_function(wrap_pyfunction!(airy_ai_prime, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j0, m)?)?;
    m.add_function(wrap_pyfunction!(laguerre, m)?)?;
    Ok(())
}

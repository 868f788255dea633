//! Python bindings. Complex arguments take Python `complex`; errors from the
//! core library surface as `ValueError`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use isoq_core::figures::{wigner_slice as slice, WignerSliceParams, XiConvention};
use isoq_core::radial::{eigenfunction as radial_state, OscillatorConfig};
use isoq_core::states::{build_state, ModeParams, ModeState, ThreeModeParams, DEFAULT_TRUNCATION_CAP};
use isoq_core::wigner::WignerMode;

fn err(e: isoq_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyfunction]
fn hermite_eval(n: usize, z: Complex64) -> Complex64 {
    isoq_core::special_fn::hermite_eval(n, z)
}

#[pyfunction]
fn laguerre_assoc_eval(n: usize, k: f64, x: f64) -> f64 {
    isoq_core::special_fn::laguerre_assoc_eval(n, k, x)
}

/// Ascending coefficients of the X₁-Laguerre polynomial L̂^k_ν.
#[pyfunction]
fn x1_laguerre(nu: usize, k: f64) -> PyResult<Vec<f64>> {
    Ok(isoq_core::special_fn::x1_laguerre(nu, &k)
        .map_err(err)?
        .coeffs()
        .to_vec())
}

#[pyfunction]
fn energy(n: usize, omega: f64, l: u32) -> PyResult<f64> {
    let cfg = OscillatorConfig::new(omega, l).map_err(err)?;
    Ok(isoq_core::radial::energy(n, &cfg))
}

/// Φ_{n,l} sampled at each radius.
#[pyfunction]
fn eigenfunction(n: usize, omega: f64, l: u32, r: Vec<f64>) -> PyResult<Vec<f64>> {
    let cfg = OscillatorConfig::new(omega, l).map_err(err)?;
    let s = radial_state(n, &cfg);
    Ok(r.into_iter().map(|x| s.eval(x)).collect())
}

fn mode(xi: Complex64, alpha0: Complex64) -> PyResult<ModeParams> {
    ModeParams::from_xi(xi, alpha0).map_err(err)
}

/// Normalized Fock amplitudes N c_n, truncated once the tail mass is below `eps`.
#[pyfunction]
#[pyo3(signature = (xi, alpha0, eps = 1e-12))]
fn amplitudes(xi: Complex64, alpha0: Complex64, eps: f64) -> PyResult<Vec<Complex64>> {
    let s = ModeState::build(&mode(xi, alpha0)?, eps, DEFAULT_TRUNCATION_CAP).map_err(err)?;
    Ok((0..=s.n_max()).map(|n| s.amplitude(n)).collect())
}

#[pyfunction]
fn mandel_q(xi: Complex64, alpha0: Complex64) -> PyResult<f64> {
    let m = mode(xi, alpha0)?;
    isoq_core::stats::mandel_q(m.xi(), m.alpha()).map_err(err)
}

/// (I₁, I₂).
#[pyfunction]
fn squeeze_indicators(xi: Complex64, alpha0: Complex64) -> PyResult<(f64, f64)> {
    let m = mode(xi, alpha0)?;
    let s = isoq_core::stats::squeeze_indicators(m.xi(), m.alpha()).map_err(err)?;
    Ok((s.i1, s.i2))
}

/// (S_Lx, S_Ly) for the ± modes.
#[pyfunction]
fn spin_squeezing(
    xi_plus: Complex64,
    alpha0_plus: Complex64,
    xi_minus: Complex64,
    alpha0_minus: Complex64,
) -> PyResult<(f64, f64)> {
    let plus = mode(xi_plus, alpha0_plus)?;
    let p = ThreeModeParams {
        r: plus,
        plus,
        minus: mode(xi_minus, alpha0_minus)?,
    };
    let s = isoq_core::stats::spin_squeeze_indicators(&p).map_err(err)?;
    Ok((s.s_lx, s.s_ly))
}

fn three(modes: [(Complex64, Complex64); 3]) -> PyResult<ThreeModeParams> {
    Ok(ThreeModeParams {
        r: mode(modes[0].0, modes[0].1)?,
        plus: mode(modes[1].0, modes[1].1)?,
        minus: mode(modes[2].0, modes[2].1)?,
    })
}

/// Closed-form W for modes [(ξ, α₀)] × 3 at ζ = [ζ_r, ζ₊, ζ₋].
#[pyfunction]
fn wigner_closed(modes: [(Complex64, Complex64); 3], zeta: [Complex64; 3]) -> PyResult<f64> {
    isoq_core::wigner::wigner_closed(&three(modes)?, zeta).map_err(err)
}

/// Fock-series W, normalized to the closed form's convention.
#[pyfunction]
#[pyo3(signature = (modes, zeta, eps = 1e-12))]
fn wigner_series(modes: [(Complex64, Complex64); 3], zeta: [Complex64; 3], eps: f64) -> PyResult<f64> {
    let s = build_state(&three(modes)?, eps).map_err(err)?;
    isoq_core::wigner::wigner_series(&s, zeta).map_err(err)
}

/// (x axis, p axis, values[x][p]) for the diagonal slice of equal modes.
#[pyfunction]
#[pyo3(signature = (r = 0.7, phi = 0.0, alpha0 = Complex64::new(0.5, 0.0), half_width = 3.0, res = 128, series = false, half_convention = false))]
#[allow(clippy::type_complexity, clippy::too_many_arguments)]
fn wigner_slice(
    r: f64,
    phi: f64,
    alpha0: Complex64,
    half_width: f64,
    res: usize,
    series: bool,
    half_convention: bool,
) -> PyResult<(Vec<f64>, Vec<f64>, Vec<Vec<f64>>)> {
    let p = WignerSliceParams {
        r,
        phi,
        alpha0,
        half_width,
        resolution: res,
        mode: if series { WignerMode::Series } else { WignerMode::Closed },
        convention: if half_convention {
            XiConvention::Half
        } else {
            XiConvention::Standard
        },
        ..Default::default()
    };
    let g = slice(&p).map_err(err)?;
    Ok((g.x_axis, g.p_axis, g.values))
}

/// Runs the invariant suites; returns (all passed, report text).
#[pyfunction]
#[pyo3(signature = (suites = Vec::new()))]
fn validate(suites: Vec<String>) -> PyResult<(bool, String)> {
    let names: Vec<&str> = suites.iter().map(String::as_str).collect();
    let r = isoq_core::validate::run(&names).map_err(|n| PyValueError::new_err(format!("unknown suite `{n}`")))?;
    Ok((r.passed(), r.render()))
}

#[pymodule]
fn isoq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(hermite_eval, m)?)?;
    m.add_function(wrap_pyfunction!(laguerre_assoc_eval, m)?)?;
    m.add_function(wrap_pyfunction!(x1_laguerre, m)?)?;
    m.add_function(wrap_pyfunction!(energy, m)?)?;
    m.add_function(wrap_pyfunction!(eigenfunction, m)?)?;
    m.add_function(wrap_pyfunction!(amplitudes, m)?)?;
    m.add_function(wrap_pyfunction!(mandel_q, m)?)?;
    m.add_function(wrap_pyfunction!(squeeze_indicators, m)?)?;
    m.add_function(wrap_pyfunction!(spin_squeezing, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_closed, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_series, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_slice, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add("SUITES", isoq_core::validate::SUITES.to_vec())?;
    Ok(())
}

//! Wigner function of the three-mode state.
//!
//! The series form sums N² c*_{n'} c_n ⟨n'|T̂(ζ)|n⟩ per mode, with
//!
//! ⟨n'|T̂(ζ)|n⟩ = e^{−2|ζ|²} (n'!/n!)^{1/2} 2^{n−n'+1} (−1)^{n'} (ζ*)^{n−n'} L^{n−n'}_{n'}(4|ζ|²)
//!
//! for n ≥ n' and the Hermitian conjugate otherwise. Each raw per-mode factor
//! peaks at 2, so the series is divided by [`SERIES_CONSTANT_PER_MODE`] to
//! match the unit-peak closed Gaussian. [`calibrate_series_constant`] measures
//! that constant against the closed form and checks it is the same at every
//! phase-space point.

use nalgebra::{Matrix6, Vector6};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::special_fn::ln_factorial;
use crate::states::{ModeParams, ModeState, ThreeModeParams, TruncatedState};
use crate::{Error, Result};

pub const SERIES_CONSTANT_PER_MODE: f64 = 2.0;
pub const MAX_GRID_RESOLUTION: usize = 2048;
const IMAG_TOL: f64 = 1e-10;

/// ⟨n'|T̂(ζ, 0)|n⟩.
pub fn t_matrix_element(n_prime: usize, n: usize, zeta: Complex64) -> Complex64 {
    if n_prime > n {
        return t_matrix_element(n, n_prime, zeta).conj();
    }
    let d = n - n_prime;
    let x = 4.0 * zeta.norm_sqr();
    let lag = crate::special_fn::laguerre_assoc_eval(n_prime, d as f64, x);
    let mut ln_mag = -0.5 * x + std::f64::consts::LN_2 + 0.5 * (ln_factorial(n_prime) - ln_factorial(n));
    if d > 0 {
        ln_mag += d as f64 * (2.0 * zeta.norm()).ln();
    }
    let sign = if n_prime.is_multiple_of(2) { 1.0 } else { -1.0 };
    Complex64::from_polar(sign * lag * ln_mag.exp(), -(d as f64) * zeta.arg())
}

/// Upper-triangular table T[n'][d] = ⟨n'|T̂|n'+d⟩ for n'+d ≤ n_max, built by
/// the Laguerre recurrence in n' along each diagonal d.
fn t_table(n_max: usize, zeta: Complex64, ln_fact: &[f64]) -> Vec<Vec<Complex64>> {
    let x = 4.0 * zeta.norm_sqr();
    let ln_2z = (2.0 * zeta.norm()).ln();
    let arg = -zeta.arg();
    let mut table: Vec<Vec<Complex64>> = (0..=n_max)
        .map(|np| vec![Complex64::default(); n_max - np + 1])
        .collect();
    for d in 0..=n_max {
        let k = d as f64;
        let (mut prev, mut cur) = (0.0, 1.0);
        let phase = Complex64::from_polar(1.0, k * arg);
        for np in 0..=(n_max - d) {
            if np == 1 {
                prev = 1.0;
                cur = 1.0 + k - x;
            } else if np >= 2 {
                let m = (np - 1) as f64;
                let next = ((2.0 * m + 1.0 + k - x) * cur - (m + k) * prev) / (m + 1.0);
                prev = cur;
                cur = next;
            }
            let mut ln_mag = -0.5 * x + std::f64::consts::LN_2 + 0.5 * (ln_fact[np] - ln_fact[np + d]);
            if d > 0 {
                ln_mag += k * ln_2z;
            }
            let sign = if np % 2 == 0 { 1.0 } else { -1.0 };
            table[np][d] = phase * (sign * cur * ln_mag.exp());
        }
    }
    table
}

fn ln_factorials(n: usize) -> Vec<f64> {
    (0..=n).map(ln_factorial).collect()
}

/// Raw per-mode series N² Σ_{n,n'} c*_{n'} c_n ⟨n'|T̂|n⟩, summed over
/// ascending n' and then diagonal offset.
fn mode_series_raw(state: &ModeState, table: &[Vec<Complex64>]) -> Result<f64> {
    let c = &state.coeffs;
    let mut acc = Complex64::default();
    for np in 0..c.len() {
        acc += c[np].conj() * c[np] * table[np][0];
        for d in 1..(c.len() - np) {
            let t = table[np][d];
            acc += c[np].conj() * c[np + d] * t + c[np + d].conj() * c[np] * t.conj();
        }
    }
    let acc = acc * (state.norm * state.norm);
    if !acc.re.is_finite() {
        return Err(Error::domain(
            "Wigner series",
            acc.re,
            "finite (truncation too deep for the T table)",
        ));
    }
    if acc.im.abs() > IMAG_TOL * (1.0 + acc.re.abs()) {
        return Err(Error::NonReal {
            what: "Wigner series",
            residue: acc.im.abs(),
        });
    }
    Ok(acc.re)
}

/// Normalized single-mode Wigner value from the series.
pub fn wigner_mode_series(state: &ModeState, zeta: Complex64) -> Result<f64> {
    let n = state.n_max();
    let table = t_table(n, zeta, &ln_factorials(n));
    Ok(mode_series_raw(state, &table)? / SERIES_CONSTANT_PER_MODE)
}

fn raw_three_mode(state: &TruncatedState, zetas: [Complex64; 3], ln_fact: &[f64]) -> Result<f64> {
    let modes = [&state.r, &state.plus, &state.minus];
    let mut out = 1.0;
    let mut cache: Option<(Complex64, usize, Vec<Vec<Complex64>>)> = None;
    for (m, z) in modes.iter().zip(zetas) {
        let n = m.n_max();
        let reuse = matches!(&cache, Some((cz, cn, _)) if *cz == z && *cn >= n);
        if !reuse {
            cache = Some((z, n, t_table(n, z, ln_fact)));
        }
        let table = &cache.as_ref().expect("filled above").2;
        out *= mode_series_raw(m, table)?;
    }
    Ok(out)
}

/// Three-mode Wigner function from the truncated series, normalized to the
/// closed-form convention.
pub fn wigner_series(state: &TruncatedState, zetas: [Complex64; 3]) -> Result<f64> {
    let n = [&state.r, &state.plus, &state.minus]
        .iter()
        .map(|m| m.n_max())
        .max()
        .unwrap_or(0);
    let raw = raw_three_mode(state, zetas, &ln_factorials(n))?;
    Ok(raw / SERIES_CONSTANT_PER_MODE.powi(3))
}

/// One mode's closed-form Gaussian, unit peak at ζ = α₀.
pub fn wigner_mode_closed(mode: &ModeParams, zeta: Complex64) -> Result<f64> {
    let (xi, alpha) = (mode.xi(), mode.alpha());
    let s = xi.norm_sqr();
    if !(s < 1.0) {
        return Err(Error::domain("|xi|", xi.norm(), "|xi| < 1"));
    }
    let r = (1.0 - s).sqrt();
    let zc = zeta.conj();
    let e = (-2.0 * zeta.norm_sqr() * (s + 1.0) + 2.0 * (xi * zc * zc + xi.conj() * zeta * zeta)) / (1.0 - s)
        - 2.0 * alpha.norm_sqr()
        + 2.0 * (alpha * zc + alpha.conj() * zeta) / r
        - 2.0 * (xi.conj() * alpha * zeta + xi * alpha.conj() * zc) / r;
    Ok(e.re.exp())
}

pub fn wigner_closed(p: &ThreeModeParams, zetas: [Complex64; 3]) -> Result<f64> {
    let mut out = 1.0;
    for (m, z) in p.modes().into_iter().zip(zetas) {
        out *= wigner_mode_closed(m, z)?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Calibration {
    /// raw series / closed form, the three-mode constant (ideally 8).
    pub constant: f64,
    /// (max − min)/mean of the ratio over the sample points.
    pub spread: f64,
}

/// Measures raw-series/closed over `points` (skipping points where the closed
/// value is below 1e−3 of its peak) and fails if the ratio varies by more than
/// `tol` relative.
pub fn calibrate_series_constant(
    p: &ThreeModeParams,
    state: &TruncatedState,
    points: &[[Complex64; 3]],
    tol: f64,
) -> Result<Calibration> {
    let n = [&state.r, &state.plus, &state.minus]
        .iter()
        .map(|m| m.n_max())
        .max()
        .unwrap_or(0);
    let lf = ln_factorials(n);
    let mut ratios = Vec::new();
    for z in points {
        let closed = wigner_closed(p, *z)?;
        if closed < 1e-3 {
            continue;
        }
        ratios.push(raw_three_mode(state, *z, &lf)? / closed);
    }
    if ratios.is_empty() {
        return Err(Error::domain(
            "points",
            "all below 1e-3 of peak",
            "at least one usable point",
        ));
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &r| (a.min(r), b.max(r)));
    let spread = (hi - lo) / mean;
    if spread > tol {
        return Err(Error::Calibration { spread });
    }
    Ok(Calibration { constant: mean, spread })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WignerMode {
    Series,
    Closed,
}

/// Values on an x × p grid; `values[i][j]` sits at (x_axis[i], p_axis[j]).
#[derive(Clone, Debug, PartialEq)]
pub struct WignerGrid {
    pub x_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

fn axis(range: (f64, f64), n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (range.0 + range.1)];
    }
    (0..n)
        .map(|i| range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64)
        .collect()
}

fn grid_from(
    x_range: (f64, f64),
    p_range: (f64, f64),
    resolution: usize,
    f: impl Fn(Complex64) -> Result<f64> + Sync,
) -> Result<WignerGrid> {
    if resolution == 0 || resolution > MAX_GRID_RESOLUTION {
        return Err(Error::domain("resolution", resolution, "1 <= resolution <= 2048"));
    }
    let x_axis = axis(x_range, resolution);
    let p_axis = axis(p_range, resolution);
    let values = x_axis
        .par_iter()
        .map(|&x| {
            p_axis
                .iter()
                .map(|&pp| f(Complex64::new(x, pp)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WignerGrid { x_axis, p_axis, values })
}

/// The diagonal slice ζ_r = ζ₊ = ζ₋ = x + ip.
pub fn wigner_grid(
    p: &ThreeModeParams,
    x_range: (f64, f64),
    p_range: (f64, f64),
    resolution: usize,
    mode: WignerMode,
    eps_tail: f64,
) -> Result<WignerGrid> {
    match mode {
        WignerMode::Closed => grid_from(x_range, p_range, resolution, |z| wigner_closed(p, [z; 3])),
        WignerMode::Series => {
            let state = crate::states::build_state(p, eps_tail)?;
            let n = [&state.r, &state.plus, &state.minus]
                .iter()
                .map(|m| m.n_max())
                .max()
                .unwrap_or(0);
            let lf = ln_factorials(n);
            grid_from(x_range, p_range, resolution, |z| {
                Ok(raw_three_mode(&state, [z; 3], &lf)? / SERIES_CONSTANT_PER_MODE.powi(3))
            })
        }
    }
}

/// Single-mode grid.
pub fn wigner_grid_mode(
    mode_params: &ModeParams,
    x_range: (f64, f64),
    p_range: (f64, f64),
    resolution: usize,
) -> Result<WignerGrid> {
    grid_from(x_range, p_range, resolution, |z| wigner_mode_closed(mode_params, z))
}

/// Fit of ln W = c + b·ζ + ζᵀ Q ζ over grid points above `floor` · max.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianFit {
    pub center: (f64, f64),
    /// Covariance [[σ_xx, σ_xp], [σ_xp, σ_pp]] of the fitted Gaussian.
    pub covariance: [[f64; 2]; 2],
}

impl GaussianFit {
    /// Eigenvalues of the covariance, ascending.
    pub fn principal_variances(&self) -> (f64, f64) {
        let [[a, b], [_, d]] = self.covariance;
        let m = 0.5 * (a + d);
        let r = (0.25 * (a - d).powi(2) + b * b).sqrt();
        (m - r, m + r)
    }
}

impl WignerGrid {
    pub fn max(&self) -> (usize, usize, f64) {
        let mut best = (0, 0, f64::NEG_INFINITY);
        for (i, row) in self.values.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        best
    }

    /// Local maxima over the 8-neighbourhood, boundary excluded. Ties are
    /// broken in scan order so a flat top spanning two points counts once.
    pub fn local_maxima(&self) -> usize {
        let (nx, np) = (self.x_axis.len(), self.p_axis.len());
        let mut count = 0;
        for i in 1..nx.saturating_sub(1) {
            for j in 1..np.saturating_sub(1) {
                let v = self.values[i][j];
                let is_max = (-1i64..=1).all(|di| {
                    (-1i64..=1).all(|dj| {
                        let n = self.values[(i as i64 + di) as usize][(j as i64 + dj) as usize];
                        match (di, dj).cmp(&(0, 0)) {
                            std::cmp::Ordering::Less => v > n,
                            std::cmp::Ordering::Equal => true,
                            std::cmp::Ordering::Greater => v >= n,
                        }
                    })
                });
                if is_max {
                    count += 1;
                }
            }
        }
        count
    }

    /// Riemann sum of W over the grid.
    pub fn integral(&self) -> f64 {
        let dx = (self.x_axis.last().unwrap() - self.x_axis[0]) / (self.x_axis.len() - 1) as f64;
        let dp = (self.p_axis.last().unwrap() - self.p_axis[0]) / (self.p_axis.len() - 1) as f64;
        self.values.iter().flatten().sum::<f64>() * dx * dp
    }

    pub fn max_abs_diff(&self, other: &WignerGrid) -> f64 {
        self.values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Least-squares quadratic fit of ln W.
    pub fn fit_gaussian(&self, floor: f64) -> Result<GaussianFit> {
        let peak = self.max().2;
        let mut ata = Matrix6::<f64>::zeros();
        let mut atb = Vector6::<f64>::zeros();
        for (i, &x) in self.x_axis.iter().enumerate() {
            for (j, &p) in self.p_axis.iter().enumerate() {
                let w = self.values[i][j];
                if !(w > floor * peak) {
                    continue;
                }
                let row = Vector6::new(1.0, x, p, x * x, x * p, p * p);
                ata += row * row.transpose();
                atb += row * w.ln();
            }
        }
        let coef = ata
            .lu()
            .solve(&atb)
            .ok_or(Error::domain("grid", "degenerate", "enough points above floor"))?;
        // ln W = c + b·v − ½ vᵀ P v with P = −[[2q_xx, q_xp], [q_xp, 2q_pp]]
        let (pxx, pxp, ppp) = (-2.0 * coef[3], -coef[4], -2.0 * coef[5]);
        let det = pxx * ppp - pxp * pxp;
        if !(det > 0.0 && pxx > 0.0) {
            return Err(Error::domain(
                "fit",
                "not a bounded Gaussian",
                "positive-definite precision",
            ));
        }
        let cov = [[ppp / det, -pxp / det], [-pxp / det, pxx / det]];
        let center = (
            cov[0][0] * coef[1] + cov[0][1] * coef[2],
            cov[1][0] * coef[1] + cov[1][1] * coef[2],
        );
        Ok(GaussianFit {
            center,
            covariance: cov,
        })
    }
}

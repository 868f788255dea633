//! The radial generalized isotonic oscillator.
//!
//! Ĥ = −d²/dr² + V(r) with
//! V = ω²r² + l(l+1)/r² + 8ω/(2ωr²+2l+1) − 16ω(2l+1)/(2ωr²+2l+1)².
//!
//! Eigenfunctions carry an X₁-Laguerre factor in x = ωr². Their first and
//! second derivatives are computed in closed form so that the intertwiners
//! A± = ±d/dr + W and the Schrödinger residual are exact up to rounding.
//!
//! The ladder operators a_r, a_r† keep l fixed. They are A∓ followed by the
//! l-shift T(l) = e^{±∂_l}, realized by expanding the intermediate function
//! in the eigenbasis of the shifted sector (coefficients found by quadrature)
//! and re-instantiating that expansion at the original l.

use statrs::function::gamma::ln_gamma;

use crate::quadrature::{converge, radial_cutoff, Converged};
use crate::special_fn::{ln_factorial, rational, x1_laguerre, BigRational, Poly};
use crate::{Error, Result};

const PROJECTION_TOL: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatorConfig {
    pub omega: f64,
    pub l: u32,
}

impl OscillatorConfig {
    pub fn new(omega: f64, l: u32) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::domain("omega", omega, "omega > 0"));
        }
        Ok(OscillatorConfig { omega, l })
    }

    pub fn with_l(&self, l: u32) -> Self {
        OscillatorConfig { omega: self.omega, l }
    }

    fn lf(&self) -> f64 {
        self.l as f64
    }
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("r", r, "r > 0"))
    }
}

/// V(r) for the given ω and l.
pub fn potential_v(r: f64, cfg: &OscillatorConfig) -> Result<f64> {
    check_r(r)?;
    Ok(potential_unchecked(r, cfg))
}

fn potential_unchecked(r: f64, cfg: &OscillatorConfig) -> f64 {
    let (w, l) = (cfg.omega, cfg.lf());
    let d = 2.0 * w * r * r + 2.0 * l + 1.0;
    w * w * r * r + l * (l + 1.0) / (r * r) + 8.0 * w / d - 16.0 * w * (2.0 * l + 1.0) / (d * d)
}

/// E_{n,l} = 2ω(2n + l + 3/2).
pub fn energy(n: usize, cfg: &OscillatorConfig) -> f64 {
    2.0 * cfg.omega * (2.0 * n as f64 + cfg.lf() + 1.5)
}

/// W(r) = ωr − (l+1)/r + 4ωr/(2ωr²+2l+1) − 4ωr/(2ωr²+2l+3).
pub fn superpotential(r: f64, cfg: &OscillatorConfig) -> Result<f64> {
    check_r(r)?;
    Ok(superpotential_unchecked(r, cfg))
}

fn superpotential_unchecked(r: f64, cfg: &OscillatorConfig) -> f64 {
    let (w, l) = (cfg.omega, cfg.lf());
    let x2 = 2.0 * w * r * r;
    w * r - (l + 1.0) / r + 4.0 * w * r / (x2 + 2.0 * l + 1.0) - 4.0 * w * r / (x2 + 2.0 * l + 3.0)
}

/// W'(r).
pub fn superpotential_derivative(r: f64, cfg: &OscillatorConfig) -> Result<f64> {
    check_r(r)?;
    let (w, l) = (cfg.omega, cfg.lf());
    let x2 = 2.0 * w * r * r;
    let term = |d: f64| 4.0 * w * (d - 2.0 * x2) / (d * d);
    Ok(w + (l + 1.0) / (r * r) + term(x2 + 2.0 * l + 1.0) - term(x2 + 2.0 * l + 3.0))
}

/// Partner potentials (V₁, V₂) = (W² − W', W² + W').
///
/// V₁ = V − ω(2l+3), and shape invariance reads V₂(r; l) = V₁(r; l+1) + 4ω.
pub fn partner_potentials(r: f64, cfg: &OscillatorConfig) -> Result<(f64, f64)> {
    let w = superpotential(r, cfg)?;
    let dw = superpotential_derivative(r, cfg)?;
    Ok((w * w - dw, w * w + dw))
}

/// Φ_{n,l} with its normalization and the exact X₁-Laguerre factor
/// L̂^{(l+1/2)}_{n+1}(x).
#[derive(Clone, Debug)]
pub struct RadialEigenstate {
    pub config: OscillatorConfig,
    pub n: usize,
    pub norm_const: f64,
    pub poly: Poly<BigRational>,
    poly_f: Poly<f64>,
    dpoly_f: Poly<f64>,
    d2poly_f: Poly<f64>,
}

/// N_{n,l} = (8 ω^{l+3/2} n! / ((n+l+3/2) Γ(n+l+1/2)))^{1/2}.
pub fn norm_const(n: usize, cfg: &OscillatorConfig) -> f64 {
    let (nf, l) = (n as f64, cfg.lf());
    let ln = 8f64.ln() + (l + 1.5) * cfg.omega.ln() + ln_factorial(n) - (nf + l + 1.5).ln() - ln_gamma(nf + l + 0.5);
    (0.5 * ln).exp()
}

pub fn eigenfunction(n: usize, cfg: &OscillatorConfig) -> RadialEigenstate {
    let k = rational(2 * cfg.l as i64 + 1, 2);
    let poly = x1_laguerre(n + 1, &k).expect("nu = n+1 >= 1 and k > 0");
    let poly_f = poly.to_f64();
    let dpoly_f = poly_f.derivative();
    let d2poly_f = dpoly_f.derivative();
    RadialEigenstate {
        config: *cfg,
        n,
        norm_const: norm_const(n, cfg),
        poly,
        poly_f,
        dpoly_f,
        d2poly_f,
    }
}

impl RadialEigenstate {
    pub fn energy(&self) -> f64 {
        energy(self.n, &self.config)
    }

    /// Φ_{n,l}(r); zero at r = 0.
    pub fn eval(&self, r: f64) -> f64 {
        let (w, l) = (self.config.omega, self.config.l);
        let x = w * r * r;
        let d = 2.0 * x + 2.0 * l as f64 + 1.0;
        self.norm_const * r.powi(l as i32 + 1) / d * self.poly_f.eval_f64(x) * (-0.5 * x).exp()
    }

    /// (Φ, Φ', Φ'') at r > 0.
    ///
    /// With Φ = N e^{h(r)} P(ωr²) and h = (l+1) ln r − ωr²/2 − ln(2ωr²+2l+1):
    /// Φ' = N e^h (h'P + dP/dr), Φ'' = N e^h ((h'' + h'²)P + 2h' dP/dr + d²P/dr²).
    pub fn eval_derivatives(&self, r: f64) -> Result<[f64; 3]> {
        check_r(r)?;
        Ok(self.derivs_unchecked(r))
    }

    fn derivs_unchecked(&self, r: f64) -> [f64; 3] {
        let (w, l) = (self.config.omega, self.config.lf());
        let x = w * r * r;
        let d = 2.0 * x + 2.0 * l + 1.0;
        let u = self.norm_const * r.powi(self.config.l as i32 + 1) / d * (-0.5 * x).exp();
        let h1 = (l + 1.0) / r - w * r - 4.0 * w * r / d;
        let h2 = -(l + 1.0) / (r * r) - w - 4.0 * w / d + 16.0 * w * w * r * r / (d * d);
        let p = self.poly_f.eval_f64(x);
        let dp = self.dpoly_f.eval_f64(x);
        let d2p = self.d2poly_f.eval_f64(x);
        let q1 = dp * 2.0 * w * r;
        let q2 = d2p * 4.0 * w * w * r * r + dp * 2.0 * w;
        [u * p, u * (h1 * p + q1), u * ((h2 + h1 * h1) * p + 2.0 * h1 * q1 + q2)]
    }

    /// −Φ'' + VΦ − EΦ at r > 0.
    pub fn schrodinger_residual(&self, r: f64) -> Result<f64> {
        let [f, _, f2] = self.eval_derivatives(r)?;
        Ok(-f2 + potential_unchecked(r, &self.config) * f - self.energy() * f)
    }

    /// (A⁻Φ)(r) = Φ' + W(r; l) Φ.
    pub fn a_minus_at(&self, r: f64) -> f64 {
        let [f, f1, _] = self.derivs_unchecked(r);
        f1 + superpotential_unchecked(r, &self.config) * f
    }

    /// (A⁺Φ)(r) = −Φ' + W(r; l−1) Φ, the intertwiner from sector l to l−1.
    /// Undefined for l = 0.
    pub fn a_plus_at(&self, r: f64) -> Result<f64> {
        if self.config.l == 0 {
            return Err(Error::domain("l", 0, "l >= 1 for A+ (maps sector l to l-1)"));
        }
        check_r(r)?;
        let [f, f1, _] = self.derivs_unchecked(r);
        Ok(-f1 + superpotential_unchecked(r, &self.config.with_l(self.config.l - 1)) * f)
    }

    pub fn sample(&self, grid: &[f64]) -> Result<SampledFn> {
        SampledFn::new(grid.to_vec(), grid.iter().map(|&r| self.eval(r)).collect())
    }
}

/// A function tabulated on a strictly increasing grid of radii r > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFn {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl SampledFn {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::domain("values.len()", values.len(), "equal to grid length"));
        }
        if grid.first().is_some_and(|&r| r <= 0.0) {
            return Err(Error::domain("grid[0]", grid[0], "r > 0"));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain("grid", "non-monotone", "strictly increasing"));
        }
        Ok(SampledFn { grid, values })
    }

    /// `n` equally spaced radii on [a, b].
    pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &SampledFn) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn scaled(&self, s: f64) -> SampledFn {
        SampledFn {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }
}

/// A⁻Φ_{n,l} sampled on `grid`; lands in sector l+1 (∝ Φ_{n−1,l+1}).
pub fn apply_a_minus(state: &RadialEigenstate, grid: &[f64]) -> Result<SampledFn> {
    SampledFn::new(grid.to_vec(), grid.iter().map(|&r| state.a_minus_at(r)).collect())
}

/// A⁺Φ_{n,l} sampled on `grid`; lands in sector l−1 (∝ Φ_{n+1,l−1}).
pub fn apply_a_plus(state: &RadialEigenstate, grid: &[f64]) -> Result<SampledFn> {
    let values = grid.iter().map(|&r| state.a_plus_at(r)).collect::<Result<Vec<_>>>()?;
    SampledFn::new(grid.to_vec(), values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderDirection {
    Lower,
    Raise,
}

/// Σ_k coeffs[k] Φ_{k,l} for a fixed sector.
#[derive(Clone, Debug)]
pub struct RadialExpansion {
    pub config: OscillatorConfig,
    pub coeffs: Vec<f64>,
}

impl RadialExpansion {
    pub fn basis(n: usize, cfg: &OscillatorConfig) -> Self {
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = 1.0;
        RadialExpansion { config: *cfg, coeffs }
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, c)| c * eigenfunction(k, &self.config).eval(r))
            .sum()
    }

    pub fn sample(&self, grid: &[f64]) -> Result<SampledFn> {
        let states: Vec<_> = (0..self.coeffs.len()).map(|k| eigenfunction(k, &self.config)).collect();
        let values = grid
            .iter()
            .map(|&r| states.iter().zip(&self.coeffs).map(|(s, c)| c * s.eval(r)).sum())
            .collect();
        SampledFn::new(grid.to_vec(), values)
    }

    pub fn scaled(&self, s: f64) -> Self {
        RadialExpansion {
            config: self.config,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `self − other`, padding the shorter coefficient list with zeros.
    pub fn sub(&self, other: &RadialExpansion) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        RadialExpansion {
            config: self.config,
            coeffs: (0..n).map(|i| get(&self.coeffs, i) - get(&other.coeffs, i)).collect(),
        }
    }

    /// a_r (lower) or a_r† (raise) applied to the expansion.
    ///
    /// Lower: A⁻ maps sector l to l+1; the image is projected onto
    /// {Φ_{j,l+1}}, T(l)⁻¹ re-instantiates the coefficients at l, and the
    /// result is scaled by −1/√(4ω).
    /// Raise: T(l) lifts each Φ_{k,l} to Φ_{k,l+1}, A⁺ maps back to sector l,
    /// the image is projected onto {Φ_{j,l}}, then scaled by −1/√(4ω).
    pub fn ladder(&self, dir: LadderDirection) -> Result<RadialExpansion> {
        let cfg = self.config;
        let up = cfg.with_l(cfg.l + 1);
        let kmax = self.coeffs.len().saturating_sub(1);
        let (target_cfg, target_len) = match dir {
            LadderDirection::Lower => (up, kmax.max(1)),
            LadderDirection::Raise => (cfg, kmax + 2),
        };
        let sources: Vec<RadialEigenstate> = match dir {
            LadderDirection::Lower => (0..=kmax).map(|k| eigenfunction(k, &cfg)).collect(),
            LadderDirection::Raise => (0..=kmax).map(|k| eigenfunction(k, &up)).collect(),
        };
        let targets: Vec<RadialEigenstate> = (0..target_len).map(|j| eigenfunction(j, &target_cfg)).collect();
        let image = |s: &RadialEigenstate, r: f64| match dir {
            LadderDirection::Lower => s.a_minus_at(r),
            LadderDirection::Raise => s.a_plus_at(r).expect("r > 0 and l >= 1"),
        };

        let deg = (cfg.l + 2) as f64 + 2.0 * (kmax + 2) as f64;
        let rc = radial_cutoff(cfg.omega, deg);
        let active: Vec<usize> = (0..=kmax).filter(|&k| self.coeffs[k] != 0.0).collect();
        let proj = converge(0.0, rc, PROJECTION_TOL, |rule| {
            let mut out = vec![0.0; target_len];
            for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
                let f: f64 = active.iter().map(|&k| self.coeffs[k] * image(&sources[k], r)).sum();
                if f == 0.0 {
                    continue;
                }
                for (j, t) in targets.iter().enumerate() {
                    out[j] += w * f * t.eval(r);
                }
            }
            out
        })?;
        let scale = -1.0 / (4.0 * cfg.omega).sqrt();
        Ok(RadialExpansion {
            config: cfg,
            coeffs: proj.value.iter().map(|c| c * scale).collect(),
        })
    }
}

/// a_r or a_r† applied to Φ_{n,l}, sampled on `grid`. The sector l is unchanged.
pub fn apply_ladder(state: &RadialEigenstate, dir: LadderDirection, grid: &[f64]) -> Result<SampledFn> {
    RadialExpansion::basis(state.n, &state.config).ladder(dir)?.sample(grid)
}

/// Gram matrix G_{nn'} = ∫₀^∞ Φ_{n,l}Φ_{n',l} dr for n, n' ≤ n_max.
pub fn orthonormality_matrix(cfg: &OscillatorConfig, n_max: usize) -> Result<Converged<Vec<Vec<f64>>>> {
    if n_max > 12 {
        return Err(Error::domain("n_max", n_max, "n_max <= 12"));
    }
    let states: Vec<_> = (0..=n_max).map(|n| eigenfunction(n, cfg)).collect();
    let rc = radial_cutoff(cfg.omega, (cfg.l + 1) as f64 + 2.0 * n_max as f64 + 2.0);
    let m = n_max + 1;
    let flat = converge(0.0, rc, 1e-10, |rule| {
        let mut g = vec![0.0; m * m];
        let mut vals = vec![0.0; m];
        for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
            for (v, s) in vals.iter_mut().zip(&states) {
                *v = s.eval(r);
            }
            for i in 0..m {
                for j in i..m {
                    g[i * m + j] += w * vals[i] * vals[j];
                }
            }
        }
        for i in 0..m {
            for j in 0..i {
                g[i * m + j] = g[j * m + i];
            }
        }
        g
    })?;
    Ok(Converged {
        value: flat.value.chunks(m).map(|row| row.to_vec()).collect(),
        error_estimate: flat.error_estimate,
        panels: flat.panels,
    })
}

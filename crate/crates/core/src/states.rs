//! Squeezed coherent states of the three modes r, +, −.
//!
//! Each mode is D(α₀)S(z)|0⟩ with ξ = −e^{iφ} tanh R. In the Fock basis
//!
//! c_n = H_n(α√(1−|ξ|²)/√(−2ξ)) (−ξ/2)^{n/2} / √n!,
//! N = (1−|ξ|²)^{1/4} exp[−¼(α²ξ* + α*²ξ + 2|α|²)],
//!
//! where α = α₀ cosh R + α₀* e^{iφ} sinh R. The angular modes are combined in
//! the Schwinger labelling n₊ = l + m, n₋ = l − m, with l running over
//! half-integers so that every (n₊, n₋) pair is reached.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::special_fn::{hermite_sequence, ln_factorial};
use crate::{Error, Result};

/// Below this |ξ| the Hermite argument is numerically meaningless and the
/// coefficients come from the ξ-recurrence instead.
pub const XI_FALLBACK: f64 = 1e-8;
pub const MAX_SQUEEZE_R: f64 = 20.0;
pub const DEFAULT_TRUNCATION_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeParam {
    pub r: f64,
    pub phi: f64,
    pub xi: Complex64,
}

/// ξ = −e^{iφ} tanh R. Rejects R < 0 and R > 20.
pub fn make_squeeze(r: f64, phi: f64) -> Result<SqueezeParam> {
    if !(0.0..=MAX_SQUEEZE_R).contains(&r) {
        return Err(Error::domain("R", r, "0 <= R <= 20"));
    }
    if !phi.is_finite() {
        return Err(Error::domain("phi", phi, "finite"));
    }
    Ok(SqueezeParam {
        r,
        phi,
        xi: -Complex64::from_polar(r.tanh(), phi),
    })
}

impl SqueezeParam {
    /// Inverse of [`make_squeeze`]: R = artanh|ξ|, φ = arg(−ξ).
    pub fn from_xi(xi: Complex64) -> Result<Self> {
        let a = xi.norm();
        if !(a < 1.0) {
            return Err(Error::domain("|xi|", a, "|xi| < 1"));
        }
        let phi = if a == 0.0 { 0.0 } else { (-xi).arg() };
        Ok(SqueezeParam { r: a.atanh(), phi, xi })
    }

    /// ξ = −e^{iφ}|ξ|.
    pub fn from_abs_phase(abs_xi: f64, phi: f64) -> Result<Self> {
        Self::from_xi(-Complex64::from_polar(abs_xi, phi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentParam {
    pub alpha0: Complex64,
    pub alpha: Complex64,
}

impl CoherentParam {
    /// α = α₀ cosh R + α₀* e^{iφ} sinh R.
    pub fn new(alpha0: Complex64, sq: &SqueezeParam) -> Self {
        let alpha = alpha0 * sq.r.cosh() + alpha0.conj() * Complex64::from_polar(sq.r.sinh(), sq.phi);
        CoherentParam { alpha0, alpha }
    }
}

/// α = (α₀ − ξα₀*)/√(1−|ξ|²), the ξ-only form of the same parameter.
pub fn alpha_from_xi(alpha0: Complex64, xi: Complex64) -> Complex64 {
    (alpha0 - xi * alpha0.conj()) / (1.0 - xi.norm_sqr()).sqrt()
}

/// Inverse map α → α₀ = (α + ξα*)/√(1−|ξ|²).
pub fn alpha0_from_alpha(alpha: Complex64, xi: Complex64) -> Complex64 {
    (alpha + xi * alpha.conj()) / (1.0 - xi.norm_sqr()).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeParams {
    pub squeeze: SqueezeParam,
    pub coherent: CoherentParam,
}

impl ModeParams {
    pub fn new(squeeze: SqueezeParam, alpha0: Complex64) -> Self {
        ModeParams {
            squeeze,
            coherent: CoherentParam::new(alpha0, &squeeze),
        }
    }

    pub fn from_xi(xi: Complex64, alpha0: Complex64) -> Result<Self> {
        Ok(Self::new(SqueezeParam::from_xi(xi)?, alpha0))
    }

    pub fn xi(&self) -> Complex64 {
        self.squeeze.xi
    }

    pub fn alpha(&self) -> Complex64 {
        self.coherent.alpha
    }

    pub fn alpha0(&self) -> Complex64 {
        self.coherent.alpha0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThreeModeParams {
    pub r: ModeParams,
    pub plus: ModeParams,
    pub minus: ModeParams,
}

impl ThreeModeParams {
    pub fn uniform(mode: ModeParams) -> Self {
        ThreeModeParams {
            r: mode,
            plus: mode,
            minus: mode,
        }
    }

    pub fn modes(&self) -> [&ModeParams; 3] {
        [&self.r, &self.plus, &self.minus]
    }
}

/// Which square root of −2ξ enters the Hermite argument (and of −ξ/2 in the
/// power factor). The coefficients do not depend on the choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Principal,
    Flipped,
}

fn check_xi(xi: Complex64) -> Result<()> {
    if xi.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("|xi|", xi.norm(), "|xi| < 1"))
    }
}

/// c_0, …, c_{n_max} for one mode.
pub fn mode_coefficients(xi: Complex64, alpha: Complex64, n_max: usize) -> Result<Vec<Complex64>> {
    mode_coefficients_branch(xi, alpha, n_max, Branch::Principal)
}

pub fn mode_coefficients_branch(
    xi: Complex64,
    alpha: Complex64,
    n_max: usize,
    branch: Branch,
) -> Result<Vec<Complex64>> {
    check_xi(xi)?;
    if xi.norm() < XI_FALLBACK {
        return Ok(coefficients_by_recurrence(xi, alpha, n_max));
    }
    let sign = match branch {
        Branch::Principal => 1.0,
        Branch::Flipped => -1.0,
    };
    let root = sign * (-2.0 * xi).sqrt();
    let t = sign * (-xi / 2.0).sqrt();
    let z = alpha * (1.0 - xi.norm_sqr()).sqrt() / root;
    let (ln_t, arg_t) = (t.norm().ln(), t.arg());
    Ok(hermite_sequence(n_max, z)
        .iter()
        .enumerate()
        .map(|(n, h)| {
            if h.mantissa == Complex64::new(0.0, 0.0) {
                return h.mantissa;
            }
            let nf = n as f64;
            let ln_mag = h.log_scale + nf * ln_t - 0.5 * ln_factorial(n);
            h.mantissa * Complex64::from_polar(ln_mag.exp(), nf * arg_t)
        })
        .collect())
}

/// c_{n+1} = (β c_n + ξ√n c_{n−1})/√(n+1) with β = α√(1−|ξ|²), c_0 = 1.
///
/// Branch-free and valid for every |ξ| < 1; at ξ = 0 it gives the Glauber
/// coefficients βⁿ/√n!.
pub fn coefficients_by_recurrence(xi: Complex64, alpha: Complex64, n_max: usize) -> Vec<Complex64> {
    let beta = alpha * (1.0 - xi.norm_sqr()).sqrt();
    let mut c = Vec::with_capacity(n_max + 1);
    c.push(Complex64::new(1.0, 0.0));
    for n in 0..n_max {
        let nf = n as f64;
        let prev = if n > 0 { c[n - 1] } else { Complex64::new(0.0, 0.0) };
        let next = (beta * c[n] + xi * nf.sqrt() * prev) / (nf + 1.0).sqrt();
        c.push(next);
    }
    c
}

/// A single c_n.
pub fn radial_coeff(n: usize, xi: Complex64, alpha: Complex64) -> Result<Complex64> {
    Ok(mode_coefficients(xi, alpha, n)?[n])
}

/// N = (1−|ξ|²)^{1/4} exp[−¼(α²ξ* + α*²ξ + 2|α|²)].
///
/// Continuous at ξ = 0, where it reduces to the Glauber factor e^{−|α|²/2}.
pub fn norm_radial(xi: Complex64, alpha: Complex64) -> Result<f64> {
    check_xi(xi)?;
    let arg = alpha * alpha * xi.conj() + alpha.conj() * alpha.conj() * xi + 2.0 * alpha.norm_sqr();
    Ok((1.0 - xi.norm_sqr()).powf(0.25) * (-0.25 * arg.re).exp())
}

/// The half-integer pair (l, m) with n₊ = l + m, n₋ = l − m.
fn schwinger_occupations(l: f64, m: f64) -> Result<(usize, usize)> {
    let (two_l, two_m) = (2.0 * l, 2.0 * m);
    if two_l.fract() != 0.0 || two_m.fract() != 0.0 || l < 0.0 || (l - m).fract() != 0.0 {
        return Err(Error::domain(
            "(l, m)",
            format!("({l}, {m})"),
            "half-integers with l - m integral",
        ));
    }
    if m.abs() > l {
        return Err(Error::domain("|m|", m.abs(), "|m| <= l"));
    }
    Ok(((l + m) as usize, (l - m) as usize))
}

/// c_{l,m} = f₊(l+m) f₋(l−m), each factor a single-mode c_n.
pub fn angular_coeff(
    l: f64,
    m: f64,
    xi_plus: Complex64,
    alpha_plus: Complex64,
    xi_minus: Complex64,
    alpha_minus: Complex64,
) -> Result<Complex64> {
    let (np, nm) = schwinger_occupations(l, m)?;
    Ok(radial_coeff(np, xi_plus, alpha_plus)? * radial_coeff(nm, xi_minus, alpha_minus)?)
}

/// N_± = N(ξ₊, α₊) N(ξ₋, α₋).
pub fn norm_angular(plus: &ModeParams, minus: &ModeParams) -> Result<f64> {
    Ok(norm_radial(plus.xi(), plus.alpha())? * norm_radial(minus.xi(), minus.alpha())?)
}

/// Truncated Fock coefficients of one mode.
#[derive(Clone, Debug)]
pub struct ModeState {
    pub params: ModeParams,
    pub coeffs: Vec<Complex64>,
    pub norm: f64,
    /// 1 − N² Σ|c_n|² over the kept levels.
    pub tail: f64,
}

impl ModeState {
    /// Extends the coefficient list until both the missing mass and the
    /// last two populations fall below `eps_tail`.
    pub fn build(params: &ModeParams, eps_tail: f64, cap: usize) -> Result<Self> {
        if !(eps_tail > 0.0 && eps_tail <= 1e-3) {
            return Err(Error::domain("eps_tail", eps_tail, "0 < eps_tail <= 1e-3"));
        }
        let (xi, alpha) = (params.xi(), params.alpha());
        let norm = norm_radial(xi, alpha)?;
        let n2 = norm * norm;
        let mut n_max = 32usize.min(cap);
        loop {
            let coeffs = mode_coefficients(xi, alpha, n_max)?;
            let mut mass = 0.0;
            for (n, c) in coeffs.iter().enumerate() {
                mass += n2 * c.norm_sqr();
                let last = n2 * c.norm_sqr().max(if n > 0 { coeffs[n - 1].norm_sqr() } else { 0.0 });
                if n >= 1 && 1.0 - mass < eps_tail && last < eps_tail * 1e-2 {
                    let mut coeffs = coeffs;
                    coeffs.truncate(n + 1);
                    return Ok(ModeState {
                        params: *params,
                        coeffs,
                        norm,
                        tail: 1.0 - mass,
                    });
                }
            }
            if n_max >= cap {
                return Err(Error::TruncationCap { cap, tail: 1.0 - mass });
            }
            n_max = (2 * n_max).min(cap);
        }
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// N² Σ_{n ≤ k} |c_n|² for every cutoff k.
    pub fn cumulative_mass(&self) -> Vec<f64> {
        let n2 = self.norm * self.norm;
        self.coeffs
            .iter()
            .scan(0.0, |acc, c| {
                *acc += n2 * c.norm_sqr();
                Some(*acc)
            })
            .collect()
    }

    /// Normalized amplitude N c_n (zero beyond the truncation).
    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).map_or(Complex64::new(0.0, 0.0), |c| c * self.norm)
    }
}

/// The three-mode state in factorized storage.
#[derive(Clone, Debug)]
pub struct TruncatedState {
    pub r: ModeState,
    pub plus: ModeState,
    pub minus: ModeState,
}

impl TruncatedState {
    /// N_{ξ,α} = N_r N_±.
    pub fn norm(&self) -> f64 {
        self.r.norm * self.plus.norm * self.minus.norm
    }

    /// 1 − Π_j (1 − tail_j).
    pub fn tail_mass(&self) -> f64 {
        1.0 - (1.0 - self.r.tail) * (1.0 - self.plus.tail) * (1.0 - self.minus.tail)
    }

    /// Unnormalized coefficient of |n, n₊, n₋⟩.
    pub fn coefficient(&self, n: usize, n_plus: usize, n_minus: usize) -> Complex64 {
        let get = |m: &ModeState, k: usize| m.coeffs.get(k).copied().unwrap_or_default();
        get(&self.r, n) * get(&self.plus, n_plus) * get(&self.minus, n_minus)
    }

    /// Coefficient of the angular basis state |l, m⟩ (unnormalized).
    pub fn angular_coefficient(&self, l: f64, m: f64) -> Result<Complex64> {
        let (np, nm) = schwinger_occupations(l, m)?;
        let get = |s: &ModeState, k: usize| s.coeffs.get(k).copied().unwrap_or_default();
        Ok(get(&self.plus, np) * get(&self.minus, nm))
    }
}

pub fn build_state(p: &ThreeModeParams, eps_tail: f64) -> Result<TruncatedState> {
    build_state_with_cap(p, eps_tail, DEFAULT_TRUNCATION_CAP)
}

pub fn build_state_with_cap(p: &ThreeModeParams, eps_tail: f64, cap: usize) -> Result<TruncatedState> {
    Ok(TruncatedState {
        r: ModeState::build(&p.r, eps_tail, cap)?,
        plus: ModeState::build(&p.plus, eps_tail, cap)?,
        minus: ModeState::build(&p.minus, eps_tail, cap)?,
    })
}

/// Polar grid for the completeness integral over α₀.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub a_max: f64,
    pub n_radial: usize,
    pub n_angular: usize,
    /// When set, fail if the error estimate exceeds it.
    pub tol: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            a_max: 8.0,
            n_radial: 200,
            n_angular: 200,
            tol: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub matrix: Vec<Vec<Complex64>>,
    /// max |M − I|
    pub max_deviation: f64,
    /// max |M − M_half| against the grid with half the radial and angular points.
    pub error_estimate: f64,
}

fn completeness_matrix(
    xi: Complex64,
    n_max: usize,
    a_max: f64,
    n_radial: usize,
    n_angular: usize,
) -> Result<Vec<Complex64>> {
    let m = n_max + 1;
    let h = a_max / n_radial as f64;
    let dtheta = 2.0 * std::f64::consts::PI / n_angular as f64;
    let rings: Vec<Result<Vec<Complex64>>> = (0..n_radial)
        .into_par_iter()
        .map(|i| {
            let rho = (i as f64 + 0.5) * h;
            let mut acc = vec![Complex64::new(0.0, 0.0); m * m];
            for j in 0..n_angular {
                let alpha0 = Complex64::from_polar(rho, j as f64 * dtheta);
                let alpha = alpha_from_xi(alpha0, xi);
                let n = norm_radial(xi, alpha)?;
                let c = mode_coefficients(xi, alpha, n_max)?;
                let w = n * n * rho * h * dtheta;
                for a in 0..m {
                    let ca = c[a].conj() * w;
                    for b in 0..m {
                        acc[a * m + b] += ca * c[b];
                    }
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = vec![Complex64::new(0.0, 0.0); m * m];
    for ring in rings {
        for (t, v) in total.iter_mut().zip(ring?) {
            *t += v;
        }
    }
    Ok(total.into_iter().map(|v| v / std::f64::consts::PI).collect())
}

/// M_{n'n} = (1/π) ∫ N² c*_{n'} c_n d(Re α₀) d(Im α₀) at fixed ξ, which is
/// the identity matrix for an exact integral over the whole plane.
///
/// Radial direction: composite midpoint rule on [0, a_max]. Angular direction:
/// uniform trapezoid (spectrally accurate for periodic integrands). Rings are
/// evaluated in parallel and summed in ring order, so the result is
/// independent of the thread count.
pub fn identity_resolution_check(xi: Complex64, n_max: usize, quad: &QuadratureConfig) -> Result<IdentityCheck> {
    if n_max > 10 {
        return Err(Error::domain("n_max", n_max, "n_max <= 10"));
    }
    let a = xi.norm();
    if !(a > 0.0 && a <= 0.8) {
        return Err(Error::domain("|xi|", a, "0 < |xi| <= 0.8"));
    }
    let m = n_max + 1;
    let full = completeness_matrix(xi, n_max, quad.a_max, quad.n_radial, quad.n_angular)?;
    let half = completeness_matrix(
        xi,
        n_max,
        quad.a_max,
        (quad.n_radial / 2).max(1),
        (quad.n_angular / 2).max(1),
    )?;
    let error_estimate = full.iter().zip(&half).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    if let Some(tol) = quad.tol {
        if error_estimate > tol {
            return Err(Error::Quadrature {
                estimate: error_estimate,
                tolerance: tol,
            });
        }
    }
    let max_deviation = full
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let id = if k / m == k % m { 1.0 } else { 0.0 };
            (v - id).norm()
        })
        .fold(0.0, f64::max);
    Ok(IdentityCheck {
        matrix: full.chunks(m).map(|r| r.to_vec()).collect(),
        max_deviation,
        error_estimate,
    })
}

/// The statistics sweep: |ξ| ∈ {0.1, 0.3, 0.5, 0.7}, φ ∈ {0, π/3},
/// |α₀| ∈ {0, 1, 3}, arg α₀ ∈ {0, π/3}.
pub fn standard_sweep() -> Vec<ModeParams> {
    sweep(&[0.1, 0.3, 0.5, 0.7], &[0.0, std::f64::consts::FRAC_PI_3])
}

/// The normalization sweep: |ξ| ∈ {0.1, …, 0.8}, φ ∈ {0, π/3, π},
/// |α₀| ∈ {0, 1, 3}, arg α₀ ∈ {0, π/3}.
pub fn normalization_sweep() -> Vec<ModeParams> {
    let xis: Vec<f64> = (1..=8).map(|i| i as f64 / 10.0).collect();
    sweep(&xis, &[0.0, std::f64::consts::FRAC_PI_3, std::f64::consts::PI])
}

fn sweep(abs_xis: &[f64], phases: &[f64]) -> Vec<ModeParams> {
    let mut out = Vec::new();
    for &a in abs_xis {
        for &phi in phases {
            let sq = SqueezeParam::from_abs_phase(a, phi).expect("|xi| < 1");
            for &mag in &[0.0, 1.0, 3.0] {
                for &theta in &[0.0, std::f64::consts::FRAC_PI_3] {
                    if mag == 0.0 && theta != 0.0 {
                        continue;
                    }
                    out.push(ModeParams::new(sq, Complex64::from_polar(mag, theta)));
                }
            }
        }
    }
    out
}

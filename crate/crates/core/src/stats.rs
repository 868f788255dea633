//! Photon statistics and squeezing indicators.
//!
//! Every closed form here has a Fock-sum counterpart computed from the
//! truncated coefficients of [`crate::states`]; the two are compared in the
//! tests and in [`crate::validate`].
//!
//! Conventions settled by those comparisons:
//!
//! * ⟨a⟩ = (α + ξα*)/√(1−|ξ|²), which is α₀. The variant with |ξ| in place of
//!   ξ is kept as [`mean_a_as_printed`] and only agrees for ξ ≥ 0.
//! * ⟨a†a⟩ is the same expression as ⟨n̂⟩.
//! * Angular moments of the product state factorize over the + and − modes:
//!   ⟨L₊L₋⟩ = ⟨n₊⟩(⟨n₋⟩ + 1) and ⟨L₋L₊⟩ = (⟨n₊⟩ + 1)⟨n₋⟩.
//! * ΔL_x² and ΔL_y² are ⟨L²⟩ − ⟨L⟩² from first principles.

use num_complex::Complex64;

use crate::states::{ModeParams, ModeState, ThreeModeParams, DEFAULT_TRUNCATION_CAP};
use crate::{Error, Result};

/// Tail mass used by the Fock-sum oracles.
pub const ORACLE_EPS: f64 = 1e-13;
/// Below this |⟨L_z⟩| the spin-squeezing indicators are undefined.
pub const LZ_THRESHOLD: f64 = 1e-9;
const REALITY_TOL: f64 = 1e-12;

fn check_xi(xi: Complex64) -> Result<()> {
    if xi.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("|xi|", xi.norm(), "|xi| < 1"))
    }
}

fn real_part(what: &'static str, z: Complex64) -> Result<f64> {
    if z.im.abs() > REALITY_TOL * (1.0 + z.re.abs()) {
        return Err(Error::NonReal {
            what,
            residue: z.im.abs(),
        });
    }
    Ok(z.re)
}

/// ⟨n̂⟩ = [|α|²(1+|ξ|²) + ξα*² + ξ*α² + |ξ|²]/(1−|ξ|²).
pub fn mean_n_closed(xi: Complex64, alpha: Complex64) -> Result<f64> {
    check_xi(xi)?;
    let s = xi.norm_sqr();
    let a2 = alpha.norm_sqr();
    let x = 2.0 * (xi.conj() * alpha * alpha).re;
    Ok((a2 * (1.0 + s) + x + s) / (1.0 - s))
}

/// ⟨n̂²⟩ with X = ξ*α² + ξα*²:
/// [|α|⁴(1+|ξ|²)² + |ξ|²(2+|ξ|²) + X² + (2(1+|α|²)(1+|ξ|²) + 2|ξ|²)X
///  + |α|²(1+8|ξ|²+3|ξ|⁴)]/(1−|ξ|²)².
pub fn mean_n2_closed(xi: Complex64, alpha: Complex64) -> Result<f64> {
    check_xi(xi)?;
    let s = xi.norm_sqr();
    let a2 = alpha.norm_sqr();
    let x = 2.0 * (xi.conj() * alpha * alpha).re;
    let num = a2 * a2 * (1.0 + s).powi(2)
        + s * (2.0 + s)
        + x * x
        + (2.0 * (1.0 + a2) * (1.0 + s) + 2.0 * s) * x
        + a2 * (1.0 + 8.0 * s + 3.0 * s * s);
    Ok(num / (1.0 - s).powi(2))
}

fn oracle_state(xi: Complex64, alpha: Complex64, eps: f64) -> Result<ModeState> {
    let params = ModeParams::from_xi(xi, crate::states::alpha0_from_alpha(alpha, xi))?;
    ModeState::build(&params, eps, DEFAULT_TRUNCATION_CAP)
}

/// N² Σ n |c_n|² over a state truncated at tail mass `eps`.
pub fn mean_n_series(xi: Complex64, alpha: Complex64, eps: f64) -> Result<f64> {
    Ok(mode_moments_series(&oracle_state(xi, alpha, eps)?).mean_n)
}

/// N² Σ n² |c_n|².
pub fn mean_n2_series(xi: Complex64, alpha: Complex64, eps: f64) -> Result<f64> {
    Ok(mode_moments_series(&oracle_state(xi, alpha, eps)?).mean_n2)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeMoments {
    pub mean_n: f64,
    pub mean_n2: f64,
    /// Mandel Q; `None` when ⟨n̂⟩ = 0.
    pub q: Option<f64>,
}

fn with_q(mean_n: f64, mean_n2: f64) -> ModeMoments {
    let q = (mean_n != 0.0).then(|| mean_n2 / mean_n - mean_n - 1.0);
    ModeMoments { mean_n, mean_n2, q }
}

pub fn mode_moments(xi: Complex64, alpha: Complex64) -> Result<ModeMoments> {
    Ok(with_q(mean_n_closed(xi, alpha)?, mean_n2_closed(xi, alpha)?))
}

pub fn mode_moments_series(state: &ModeState) -> ModeMoments {
    let (mut m1, mut m2) = (0.0, 0.0);
    for n in 0..=state.n_max() {
        let p = state.amplitude(n).norm_sqr();
        let nf = n as f64;
        m1 += nf * p;
        m2 += nf * nf * p;
    }
    with_q(m1, m2)
}

/// Q = ⟨n̂²⟩/⟨n̂⟩ − ⟨n̂⟩ − 1.
pub fn mandel_q(xi: Complex64, alpha: Complex64) -> Result<f64> {
    let m = mode_moments(xi, alpha)?;
    m.q.ok_or(Error::UndefinedQ { mean_n: m.mean_n })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadExpectations {
    pub a: Complex64,
    pub a_dag: Complex64,
    pub a2: Complex64,
    pub a_dag2: Complex64,
    pub n: f64,
}

/// Closed-form ⟨a⟩, ⟨a†⟩, ⟨a²⟩, ⟨a†²⟩, ⟨a†a⟩.
pub fn quad_expectations(xi: Complex64, alpha: Complex64) -> Result<QuadExpectations> {
    check_xi(xi)?;
    let d = 1.0 - xi.norm_sqr();
    let a = (alpha + xi * alpha.conj()) / d.sqrt();
    let a2 = (xi + (alpha.conj() * xi + alpha).powu(2)) / d;
    Ok(QuadExpectations {
        a,
        a_dag: a.conj(),
        a2,
        a_dag2: a2.conj(),
        n: mean_n_closed(xi, alpha)?,
    })
}

/// ⟨a⟩ with |ξ| in place of ξ, as in the source text. Differs from the
/// Fock-sum value unless ξ is real and nonnegative.
pub fn mean_a_as_printed(xi: Complex64, alpha: Complex64) -> Complex64 {
    (alpha + xi.norm() * alpha.conj()) / (1.0 - xi.norm_sqr()).sqrt()
}

/// Fock-sum expectations Σ b*_n (O b)_n with b_n = N c_n.
pub fn quad_expectations_series(state: &ModeState) -> QuadExpectations {
    let b = |n: usize| state.amplitude(n);
    let (mut a, mut a2, mut n_mean) = (Complex64::default(), Complex64::default(), 0.0);
    for n in 0..=state.n_max() {
        let nf = n as f64;
        a += b(n).conj() * b(n + 1) * (nf + 1.0).sqrt();
        a2 += b(n).conj() * b(n + 2) * ((nf + 1.0) * (nf + 2.0)).sqrt();
        n_mean += nf * b(n).norm_sqr();
    }
    QuadExpectations {
        a,
        a_dag: a.conj(),
        a2,
        a_dag2: a2.conj(),
        n: n_mean,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeIndicators {
    pub i1: f64,
    pub i2: f64,
}

impl QuadExpectations {
    /// (I₁, I₂); I₁ < 0 signals squeezing in ŵ, I₂ < 0 in p̂.
    pub fn indicators(&self) -> Result<SqueezeIndicators> {
        let cross = self.a2 + self.a_dag2 - self.a * self.a - self.a_dag * self.a_dag;
        let common = -2.0 * self.a * self.a_dag + 2.0 * self.n;
        Ok(SqueezeIndicators {
            i1: real_part("I1", cross + common)?,
            i2: real_part("I2", -cross + common)?,
        })
    }

    /// (Δŵ², Δp̂²) for ŵ = (a† + a)/√2 and p̂ = i(a† − a)/√2.
    pub fn quadrature_variances(&self) -> Result<(f64, f64)> {
        let s = self.indicators()?;
        Ok((0.5 * (s.i1 + 1.0), 0.5 * (s.i2 + 1.0)))
    }
}

pub fn squeeze_indicators(xi: Complex64, alpha: Complex64) -> Result<SqueezeIndicators> {
    quad_expectations(xi, alpha)?.indicators()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngularExpectations {
    pub lp: Complex64,
    pub lm: Complex64,
    pub lp2: Complex64,
    pub lm2: Complex64,
    pub lplm: f64,
    pub lmlp: f64,
    pub lz: f64,
}

/// Closed forms for the Schwinger operators L₊ = a₊†a₋, L₋ = a₋†a₊,
/// L_z = (n̂₊ − n̂₋)/2 in the product state.
pub fn angular_expectations(p: &ThreeModeParams) -> Result<AngularExpectations> {
    let qp = quad_expectations(p.plus.xi(), p.plus.alpha())?;
    let qm = quad_expectations(p.minus.xi(), p.minus.alpha())?;
    let lp = qp.a_dag * qm.a;
    let lp2 = qp.a_dag2 * qm.a2;
    Ok(AngularExpectations {
        lp,
        lm: lp.conj(),
        lp2,
        lm2: lp2.conj(),
        lplm: qp.n * (qm.n + 1.0),
        lmlp: (qp.n + 1.0) * qm.n,
        lz: 0.5 * (qp.n - qm.n),
    })
}

/// Two-mode Fock-sum oracle: builds ψ(n₊, n₋) = b₊(n₊) b₋(n₋) and applies
/// L± as explicit ladder actions on the padded two-mode grid.
pub fn angular_expectations_series(plus: &ModeState, minus: &ModeState) -> Result<AngularExpectations> {
    let (dp, dm) = (plus.n_max() + 2, minus.n_max() + 2);
    let idx = |i: usize, j: usize| i * dm + j;
    let mut psi = vec![Complex64::default(); dp * dm];
    for i in 0..=plus.n_max() {
        for j in 0..=minus.n_max() {
            psi[idx(i, j)] = plus.amplitude(i) * minus.amplitude(j);
        }
    }
    // (L₊ψ)(i, j) = √i √(j+1) ψ(i−1, j+1);  (L₋ψ)(i, j) = √(i+1) √j ψ(i+1, j−1)
    let mut lp_psi = vec![Complex64::default(); dp * dm];
    let mut lm_psi = vec![Complex64::default(); dp * dm];
    for i in 0..dp {
        for j in 0..dm {
            if i >= 1 && j + 1 < dm {
                lp_psi[idx(i, j)] = psi[idx(i - 1, j + 1)] * ((i as f64) * (j as f64 + 1.0)).sqrt();
            }
            if j >= 1 && i + 1 < dp {
                lm_psi[idx(i, j)] = psi[idx(i + 1, j - 1)] * ((i as f64 + 1.0) * (j as f64)).sqrt();
            }
        }
    }
    let dot = |u: &[Complex64], v: &[Complex64]| -> Complex64 { u.iter().zip(v).map(|(a, b)| a.conj() * b).sum() };
    let lp = dot(&psi, &lp_psi);
    let lm = dot(&psi, &lm_psi);
    // ⟨L₊²⟩ = ⟨L₋ψ|L₊ψ⟩, ⟨L₊L₋⟩ = ‖L₋ψ‖², ⟨L₋L₊⟩ = ‖L₊ψ‖²
    let lp2 = dot(&lm_psi, &lp_psi);
    let lm2 = dot(&lp_psi, &lm_psi);
    let lplm = real_part("<L+L->", dot(&lm_psi, &lm_psi))?;
    let lmlp = real_part("<L-L+>", dot(&lp_psi, &lp_psi))?;
    let mut lz = 0.0;
    for i in 0..dp {
        for j in 0..dm {
            lz += 0.5 * (i as f64 - j as f64) * psi[idx(i, j)].norm_sqr();
        }
    }
    Ok(AngularExpectations {
        lp,
        lm,
        lp2,
        lm2,
        lplm,
        lmlp,
        lz,
    })
}

/// The seven angular expressions transcribed exactly as printed in the
/// source, square roots of negative numbers included. Kept only to document
/// how they differ from the Fock-sum values.
pub fn angular_expectations_as_printed(p: &ThreeModeParams) -> AngularExpectations {
    let one = Complex64::new(1.0, 0.0);
    let (xp, ap) = (p.plus.xi(), p.plus.alpha());
    let (xm, am) = (p.minus.xi(), p.minus.alpha());
    let (sp, sm) = (xp.norm_sqr(), xm.norm_sqr());
    let (rp, rm) = ((1.0 - sp).sqrt(), (1.0 - sm).sqrt());
    let lp = (ap.conj() - xp.conj() * ap) / rp * ((am - xm * ap.conj()) / rm);
    let lm = (ap - xp * ap.conj()) / rp * ((am.conj() - xm.conj() * ap) / rm);
    let lp2 = xp.conj() * xm / (rp * rm)
        * ((ap.conj() - xp.conj() * ap).powu(2) / xp + one)
        * ((am - xm * am.conj()).powu(2) / xm.conj() + one);
    let lm2 = xm.conj() * xp / (rp * rm)
        * ((ap - xp * ap.conj()).powu(2) / xp.conj() + one)
        * ((am.conj() - xm.conj() * am).powu(2) / xm + one);
    let abs2_over = |z: Complex64, s: f64| (z / Complex64::new(s - 1.0, 0.0).sqrt()).norm_sqr();
    let lplm = (abs2_over(ap.conj() - xp.conj() * ap, sp) + sp / (sp - 1.0))
        * (1.0 + abs2_over(am.conj() - xm.conj() * am, sm) + sm / (sm - 1.0));
    let lmlp = (abs2_over(ap - xp * ap, sp) + sp / (sp - 1.0) + 1.0) * (abs2_over(am - xm * am, sm) + sm / (sm - 1.0));
    let lz_part = |a: Complex64, x: Complex64, s: f64| {
        (((a - x * a.conj()) * (a.conj() - x.conj() * a)).re + x.norm()) / (2.0 * (s - 1.0))
    };
    AngularExpectations {
        lp,
        lm,
        lp2,
        lm2,
        lplm,
        lmlp,
        lz: lz_part(ap, xp, sp) - lz_part(am, xm, sm),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinVariances {
    pub var_lx: f64,
    pub var_ly: f64,
}

impl AngularExpectations {
    /// ΔL_x², ΔL_y² from L_x = (L₊ + L₋)/2, L_y = i(L₊ − L₋)/2.
    pub fn variances(&self) -> Result<SpinVariances> {
        let lx2 = 0.25 * (self.lp2 + self.lm2 + self.lplm + self.lmlp);
        let ly2 = -0.25 * (self.lp2 + self.lm2 - self.lplm - self.lmlp);
        let lx = 0.5 * (self.lp + self.lm);
        let ly = Complex64::new(0.0, 0.5) * (self.lp - self.lm);
        Ok(SpinVariances {
            var_lx: real_part("Var(Lx)", lx2 - lx * lx)?,
            var_ly: real_part("Var(Ly)", ly2 - ly * ly)?,
        })
    }

    /// The variance expressions as printed: the L_x one adds (⟨L₊⟩+⟨L₋⟩)²
    /// where the definition subtracts it, so it exceeds the true variance by
    /// 2⟨L_x⟩². The L_y one is correct.
    pub fn variances_as_printed(&self) -> SpinVariances {
        let base = self.lp2 + self.lm2;
        let pair = self.lplm + self.lmlp;
        SpinVariances {
            var_lx: (0.25 * (base + pair + (self.lp + self.lm).powu(2))).re,
            var_ly: (-0.25 * (base - pair - (self.lp - self.lm).powu(2))).re,
        }
    }

    /// (2ΔL² − |⟨L_z⟩|)/|⟨L_z⟩| for L_x and L_y.
    pub fn spin_squeezing(&self, threshold: f64) -> Result<SpinSqueezing> {
        let lz = self.lz.abs();
        if lz < threshold {
            return Err(Error::DegenerateLz { lz, threshold });
        }
        let v = self.variances()?;
        Ok(SpinSqueezing {
            s_lx: (2.0 * v.var_lx - lz) / lz,
            s_ly: (2.0 * v.var_ly - lz) / lz,
            variances: v,
            lz: self.lz,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinSqueezing {
    pub s_lx: f64,
    pub s_ly: f64,
    pub variances: SpinVariances,
    pub lz: f64,
}

pub fn spin_squeeze_indicators(p: &ThreeModeParams) -> Result<SpinSqueezing> {
    angular_expectations(p)?.spin_squeezing(LZ_THRESHOLD)
}

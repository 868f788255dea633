//! Data behind the four figures: Mandel Q sweep, quadrature indicators over
//! α₀, spin-squeezing map over (x₊, y₊) and the Wigner diagonal slice.
//!
//! Every `*Params` type defaults to the published parameter set.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::states::{make_squeeze, ModeParams, SqueezeParam, ThreeModeParams};
use crate::stats::{angular_expectations, mandel_q, squeeze_indicators, LZ_THRESHOLD};
use crate::wigner::{wigner_grid, WignerGrid, WignerMode};
use crate::{Error, Result};

/// Inclusive uniform grid of `steps + 1` points.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 0 {
        return vec![lo];
    }
    (0..=steps)
        .map(|i| (lo * (steps - i) as f64 + hi * i as f64) / steps as f64)
        .collect()
}

/// Q against |ξ| at fixed α₀ and squeeze phase, with ξ = −e^{iφ}|ξ|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MandelParams {
    pub alpha0: Complex64,
    pub phi: f64,
    pub xi_min: f64,
    pub xi_max: f64,
    pub steps: usize,
}

impl Default for MandelParams {
    fn default() -> Self {
        MandelParams {
            alpha0: Complex64::new(3.0, 0.0),
            phi: 0.0,
            xi_min: 0.05,
            xi_max: 0.95,
            steps: 90,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MandelPoint {
    pub xi_abs: f64,
    pub q: f64,
}

pub fn mandel_curve(p: &MandelParams) -> Result<Vec<MandelPoint>> {
    if !(0.0 <= p.xi_min && p.xi_min <= p.xi_max && p.xi_max < 1.0) {
        return Err(Error::domain(
            "xi range",
            format!("[{}, {}]", p.xi_min, p.xi_max),
            "0 <= xi_min <= xi_max < 1",
        ));
    }
    linspace(p.xi_min, p.xi_max, p.steps)
        .into_iter()
        .map(|a| {
            let m = ModeParams::new(SqueezeParam::from_abs_phase(a, p.phi)?, p.alpha0);
            Ok(MandelPoint {
                xi_abs: a,
                q: mandel_q(m.xi(), m.alpha())?,
            })
        })
        .collect()
}

/// I₁, I₂ over α₀ = |α₀| e^{iθ} at fixed ξ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureMapParams {
    pub xi: Complex64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
    /// θ runs over [0, 2π) in this many points.
    pub theta_points: usize,
}

impl Default for QuadratureMapParams {
    fn default() -> Self {
        QuadratureMapParams {
            xi: Complex64::new(0.3, 0.0),
            alpha_max: 3.0,
            alpha_steps: 30,
            theta_points: 36,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraturePoint {
    pub alpha_abs: f64,
    pub theta: f64,
    pub i1: f64,
    pub i2: f64,
}

pub fn quadrature_map(p: &QuadratureMapParams) -> Result<Vec<QuadraturePoint>> {
    let sq = SqueezeParam::from_xi(p.xi)?;
    if !(p.alpha_max >= 0.0 && p.theta_points > 0) {
        return Err(Error::domain(
            "grid",
            format!("alpha_max={} theta_points={}", p.alpha_max, p.theta_points),
            "alpha_max >= 0, theta_points >= 1",
        ));
    }
    let mut out = Vec::new();
    for a in linspace(0.0, p.alpha_max, p.alpha_steps) {
        for j in 0..p.theta_points {
            let theta = 2.0 * PI * j as f64 / p.theta_points as f64;
            let m = ModeParams::new(sq, Complex64::from_polar(a, theta));
            let s = squeeze_indicators(m.xi(), m.alpha())?;
            out.push(QuadraturePoint {
                alpha_abs: a,
                theta,
                i1: s.i1,
                i2: s.i2,
            });
        }
    }
    Ok(out)
}

/// S_Lx, S_Ly over α₀₊ = x₊ + i y₊ at fixed ξ± and α₀₋.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngularMapParams {
    pub xi_plus: Complex64,
    pub xi_minus: Complex64,
    pub alpha0_minus: Complex64,
    pub half_width: f64,
    /// Points per axis.
    pub resolution: usize,
}

impl Default for AngularMapParams {
    fn default() -> Self {
        AngularMapParams {
            xi_plus: Complex64::new(0.1, 0.0),
            xi_minus: Complex64::new(0.1, 0.0),
            alpha0_minus: Complex64::new(1.3, 0.0),
            half_width: 2.0,
            resolution: 41,
        }
    }
}

/// One grid point. `s_lx`/`s_ly` are `None` where |⟨L_z⟩| falls below the
/// degeneracy threshold and the indicator is undefined; there it diverges to
/// +∞ whenever the matching variance is positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngularPoint {
    pub x_plus: f64,
    pub y_plus: f64,
    pub lz: f64,
    pub var_lx: f64,
    pub var_ly: f64,
    pub s_lx: Option<f64>,
    pub s_ly: Option<f64>,
}

pub fn angular_map(p: &AngularMapParams) -> Result<Vec<AngularPoint>> {
    if !(p.half_width > 0.0 && p.resolution >= 2) {
        return Err(Error::domain(
            "grid",
            format!("half_width={} resolution={}", p.half_width, p.resolution),
            "half_width > 0, resolution >= 2",
        ));
    }
    let minus = ModeParams::from_xi(p.xi_minus, p.alpha0_minus)?;
    let sq_plus = SqueezeParam::from_xi(p.xi_plus)?;
    let axis = linspace(-p.half_width, p.half_width, p.resolution - 1);
    let mut out = Vec::with_capacity(axis.len() * axis.len());
    for &x in &axis {
        for &y in &axis {
            let plus = ModeParams::new(sq_plus, Complex64::new(x, y));
            // the radial mode does not enter the angular moments
            let modes = ThreeModeParams { r: plus, plus, minus };
            let e = angular_expectations(&modes)?;
            let v = e.variances()?;
            let (s_lx, s_ly) = match e.spin_squeezing(LZ_THRESHOLD) {
                Ok(s) => (Some(s.s_lx), Some(s.s_ly)),
                Err(Error::DegenerateLz { .. }) => (None, None),
                Err(e) => return Err(e),
            };
            out.push(AngularPoint {
                x_plus: x,
                y_plus: y,
                lz: e.lz,
                var_lx: v.var_lx,
                var_ly: v.var_ly,
                s_lx,
                s_ly,
            });
        }
    }
    Ok(out)
}

/// How (R, φ) maps to ξ for the Wigner slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum XiConvention {
    /// ξ = −e^{iφ} tanh R, used everywhere else in the crate.
    #[default]
    Standard,
    /// ξ = −½ e^{iφ} tanh R, the variant written in the Wigner section.
    Half,
}

/// Diagonal slice ζ_r = ζ₊ = ζ₋ = x + ip of a state with all three modes equal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WignerSliceParams {
    pub r: f64,
    pub phi: f64,
    pub alpha0: Complex64,
    pub half_width: f64,
    pub resolution: usize,
    pub mode: WignerMode,
    pub convention: XiConvention,
    pub eps_tail: f64,
}

impl Default for WignerSliceParams {
    fn default() -> Self {
        WignerSliceParams {
            r: 0.7,
            phi: 0.0,
            alpha0: Complex64::new(0.5, 0.0),
            half_width: 3.0,
            resolution: 128,
            mode: WignerMode::Closed,
            convention: XiConvention::Standard,
            eps_tail: 1e-12,
        }
    }
}

impl WignerSliceParams {
    pub fn mode_params(&self) -> Result<ModeParams> {
        let sq = make_squeeze(self.r, self.phi)?;
        let sq = match self.convention {
            XiConvention::Standard => sq,
            XiConvention::Half => SqueezeParam::from_xi(0.5 * sq.xi)?,
        };
        Ok(ModeParams::new(sq, self.alpha0))
    }
}

pub fn wigner_slice(p: &WignerSliceParams) -> Result<WignerGrid> {
    if !(p.half_width > 0.0) {
        return Err(Error::domain("half_width", p.half_width, "half_width > 0"));
    }
    let modes = ThreeModeParams::uniform(p.mode_params()?);
    let range = (-p.half_width, p.half_width);
    wigner_grid(&modes, range, range, p.resolution, p.mode, p.eps_tail)
}

/// Both signs of Q occur along the sweep.
pub fn mandel_has_both_signs(curve: &[MandelPoint]) -> (bool, bool) {
    (curve.iter().any(|p| p.q < 0.0), curve.iter().any(|p| p.q > 0.0))
}

/// Counts (points with I₁ > 0, points with I₂ < 0).
pub fn quadrature_sign_counts(map: &[QuadraturePoint]) -> (usize, usize) {
    (
        map.iter().filter(|p| p.i1 > 0.0).count(),
        map.iter().filter(|p| p.i2 < 0.0).count(),
    )
}

/// Counts (S_Lx > 0, S_Ly < 0). At ⟨L_z⟩ = 0 the indicator is +∞ when the
/// variance is positive, which counts as positive and never as negative.
pub fn angular_sign_counts(map: &[AngularPoint]) -> (usize, usize) {
    (
        map.iter()
            .filter(|p| p.s_lx.map_or(p.var_lx > 0.0, |s| s > 0.0))
            .count(),
        map.iter().filter(|p| p.s_ly.is_some_and(|s| s < 0.0)).count(),
    )
}

/// Variance of the diagonal slice of the three-mode vacuum along any axis:
/// one mode has 1/4, and the slice triples the precision.
pub const VACUUM_SLICE_VARIANCE: f64 = 1.0 / 12.0;

/// Squeeze factors of a slice: (vacuum/minor variance, major/vacuum variance)
/// from the Gaussian fit, and the number of local maxima.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceShape {
    pub squeezed_factor: f64,
    pub stretched_factor: f64,
    pub local_maxima: usize,
    pub center: (f64, f64),
}

pub fn slice_shape(grid: &WignerGrid) -> Result<SliceShape> {
    let fit = grid.fit_gaussian(1e-6)?;
    let (lo, hi) = fit.principal_variances();
    Ok(SliceShape {
        squeezed_factor: VACUUM_SLICE_VARIANCE / lo,
        stretched_factor: hi / VACUUM_SLICE_VARIANCE,
        local_maxima: grid.local_maxima(),
        center: fit.center,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.05, 0.95, 90);
        assert_eq!(v.len(), 91);
        assert_eq!(v[0], 0.05);
        assert_eq!(v[90], 0.95);
    }

    #[test]
    fn mandel_curve_changes_sign() {
        let c = mandel_curve(&MandelParams::default()).unwrap();
        assert_eq!(mandel_has_both_signs(&c), (true, true));
        let flipped = MandelParams {
            phi: PI,
            ..Default::default()
        };
        let c = mandel_curve(&flipped).unwrap();
        assert_eq!(mandel_has_both_signs(&c), (false, true));
        assert!(mandel_curve(&MandelParams {
            xi_max: 1.0,
            ..Default::default()
        })
        .is_err());
    }

    #[test]
    fn quadrature_map_signs() {
        let m = quadrature_map(&QuadratureMapParams::default()).unwrap();
        assert_eq!(m.len(), 31 * 36);
        assert_eq!(quadrature_sign_counts(&m), (m.len(), m.len()));
    }

    #[test]
    fn angular_map_shape() {
        let p = AngularMapParams {
            resolution: 9,
            ..Default::default()
        };
        let m = angular_map(&p).unwrap();
        assert_eq!(m.len(), 81);
        let (lx, ly) = angular_sign_counts(&m);
        assert_eq!(lx, m.len());
        assert!(ly < m.len());
        // |α₀₊| = |α₀₋| on the real axis at x₊ = 1.3 gives ⟨L_z⟩ = 0
        let p = AngularMapParams {
            resolution: 41,
            ..Default::default()
        };
        let m = angular_map(&p).unwrap();
        let on_circle = m
            .iter()
            .find(|q| (q.x_plus - 1.3).abs() < 1e-12 && q.y_plus.abs() < 1e-12)
            .unwrap();
        assert!(on_circle.lz.abs() < 1e-9 && on_circle.s_ly.is_none());
    }

    #[test]
    fn slice_variances() {
        let p = WignerSliceParams {
            resolution: 96,
            ..Default::default()
        };
        let g = wigner_slice(&p).unwrap();
        let s = slice_shape(&g).unwrap();
        let e2r = (2.0 * 0.7f64).exp();
        assert!((s.squeezed_factor / e2r - 1.0).abs() < 1e-6);
        assert!((s.stretched_factor / e2r - 1.0).abs() < 1e-6);
        assert_eq!(s.local_maxima, 1);
        assert!((s.center.0 - 0.5).abs() < 1e-8 && s.center.1.abs() < 1e-8);
    }

    #[test]
    fn half_convention_is_weaker() {
        let p = WignerSliceParams {
            convention: XiConvention::Half,
            ..Default::default()
        };
        let xi = p.mode_params().unwrap().xi();
        assert!((xi.re + 0.5 * 0.7f64.tanh()).abs() < 1e-15);
    }
}

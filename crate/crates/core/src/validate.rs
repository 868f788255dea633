//! Invariant suites run by `isoq validate`.
//!
//! Each suite compares a closed form with an independent route and records
//! one [`Check`] per property. Output is deterministic: no timings, fixed
//! seeds and ordered reductions.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::figures::{
    angular_map, angular_sign_counts, mandel_curve, mandel_has_both_signs, quadrature_map, quadrature_sign_counts,
    slice_shape, wigner_slice, AngularMapParams, MandelParams, QuadratureMapParams, WignerSliceParams,
};
use crate::radial::{
    eigenfunction, orthonormality_matrix, LadderDirection, OscillatorConfig, RadialExpansion, SampledFn,
};
use crate::special_fn::{apply_ak, apply_bk, rational, x1_laguerre, x1_ode_residual, BigRational, Poly};
use crate::states::{
    build_state, coefficients_by_recurrence, identity_resolution_check, mode_coefficients_branch, normalization_sweep,
    standard_sweep, Branch, ModeParams, ModeState, QuadratureConfig, ThreeModeParams, DEFAULT_TRUNCATION_CAP,
};
use crate::stats::{
    angular_expectations, angular_expectations_series, mode_moments, mode_moments_series, quad_expectations,
    quad_expectations_series, ORACLE_EPS,
};
use crate::wigner::{calibrate_series_constant, wigner_closed, wigner_series};
use crate::Result;

/// One property with its measured value.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    /// One line per check followed by a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag} {}/{}: {}", c.suite, c.name, c.detail);
        }
        let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), self.failures());
        out
    }
}

struct Recorder<'a> {
    suite: &'static str,
    out: &'a mut Vec<Check>,
}

impl Recorder<'_> {
    fn flag(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Passes when `value <= bound`.
    fn below(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        let passed = value <= bound;
        self.flag(name, passed, format!("{value:.3e} (bound {bound:.0e})"));
    }

    fn result<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.flag(name, false, format!("error: {e}"));
                None
            }
        }
    }
}

type Suite = fn(&mut Recorder);

/// Suite names in run order.
pub const SUITES: &[&str] = &[
    "x1_laguerre",
    "radial_eigensystem",
    "ladder_algebra",
    "state_normalization",
    "identity_resolution",
    "moment_oracles",
    "figure_signs",
    "wigner",
];

fn suite_fn(name: &str) -> Option<Suite> {
    Some(match name {
        "x1_laguerre" => x1_suite,
        "radial_eigensystem" => radial_suite,
        "ladder_algebra" => ladder_suite,
        "state_normalization" => normalization_suite,
        "identity_resolution" => identity_suite,
        "moment_oracles" => moments_suite,
        "figure_signs" => figure_suite,
        "wigner" => wigner_suite,
        _ => return None,
    })
}

/// Runs the named suites (all of them when `names` is empty). Unknown names
/// come back as `Err` with the offending name.
pub fn run(names: &[&str]) -> std::result::Result<Report, String> {
    let selected: Vec<&str> = if names.is_empty() {
        SUITES.to_vec()
    } else {
        names.to_vec()
    };
    let mut checks = Vec::new();
    for name in selected {
        let f = suite_fn(name).ok_or_else(|| name.to_string())?;
        let suite = SUITES.iter().copied().find(|s| *s == name).expect("listed");
        f(&mut Recorder {
            suite,
            out: &mut checks,
        });
    }
    Ok(Report { checks })
}

pub fn run_all() -> Report {
    run(&[]).expect("all suite names are registered")
}

/// `n` reproducible triples of phase-space points in the square [−scale, scale]².
pub fn phase_points(n: usize, seed: u64, scale: f64) -> Vec<[Complex64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = || Complex64::new(rng.random_range(-scale..=scale), rng.random_range(-scale..=scale));
    (0..n).map(|_| [z(), z(), z()]).collect()
}

/// The first three X₁-Laguerre polynomials written out by hand.
pub fn x1_reference(nu: usize, k: &BigRational) -> Option<Poly<BigRational>> {
    let r = |n| rational(n, 1);
    let half = rational(1, 2);
    let k = k.clone();
    Some(match nu {
        1 => Poly::new(vec![-(k + r(1)), r(-1)]),
        2 => Poly::new(vec![-(k.clone() * (k + r(2))), r(0), r(1)]),
        3 => Poly::new(vec![
            -(k.clone() * half.clone() * (r(3) + r(4) * k.clone() + k.clone() * k.clone())),
            k.clone() * (k.clone() + r(3)) * half.clone(),
            (k + r(3)) * half.clone(),
            -half,
        ]),
        _ => return None,
    })
}

fn x1_suite(rec: &mut Recorder) {
    let ks = [rational(1, 2), rational(3, 2), rational(5, 2)];
    let mut low_ok = true;
    let mut residual_ok = true;
    let mut ladder_ok = true;
    for k in &ks {
        let kp1 = k.clone() + rational(1, 1);
        for nu in 1..=12 {
            let Some(y) = rec.result("construct", x1_laguerre(nu, k)) else {
                return;
            };
            if let Some(want) = x1_reference(nu, k) {
                low_ok &= y == want;
            }
            residual_ok &= x1_ode_residual(nu, k).map(|p| p.is_zero()).unwrap_or(false);
            if nu >= 2 {
                ladder_ok &= apply_ak(&y, k).ok() == x1_laguerre(nu - 1, &kp1).ok();
            }
            if nu <= 11 {
                let want = x1_laguerre(nu + 1, k).map(|p| p.scale(&rational(nu as i64, 1)));
                ladder_ok &= apply_bk(&x1_laguerre(nu, &kp1).expect("k > 0"), k).ok() == want.ok();
            }
        }
    }
    rec.flag(
        "first_three_members",
        low_ok,
        "nu = 1, 2, 3 exact for k in {1/2, 3/2, 5/2}",
    );
    rec.flag("ode_residual_zero", residual_ok, "exact zero polynomial for nu <= 12");
    rec.flag(
        "factorization_ladder",
        ladder_ok,
        "A_k lowers and B_k raises the family exactly",
    );
}

fn radial_suite(rec: &mut Recorder) {
    let grid = SampledFn::uniform_grid(0.1, 8.0, 400);
    let mut worst = 0.0f64;
    let mut gram = 0.0f64;
    for &omega in &[0.5, 1.0, 2.0] {
        for l in 0..=3 {
            let Some(cfg) = rec.result("config", OscillatorConfig::new(omega, l)) else {
                return;
            };
            for n in 0..=6 {
                let s = eigenfunction(n, &cfg);
                let Some(sampled) = rec.result("sample", s.sample(&grid)) else {
                    return;
                };
                let peak = sampled.max_abs();
                for &r in &grid {
                    let Some(res) = rec.result("residual", s.schrodinger_residual(r)) else {
                        return;
                    };
                    worst = worst.max(res.abs() / peak);
                }
            }
            let Some(g) = rec.result("gram", orthonormality_matrix(&cfg, 6)) else {
                return;
            };
            for (i, row) in g.value.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    gram = gram.max((v - if i == j { 1.0 } else { 0.0 }).abs());
                }
            }
        }
    }
    rec.below("schrodinger_residual", worst, 1e-8);
    rec.below("gram_identity", gram, 1e-7);
}

fn ladder_suite(rec: &mut Recorder) {
    let grid = SampledFn::uniform_grid(0.1, 8.0, 200);
    let (mut lower, mut raise, mut comm) = (0.0f64, 0.0f64, 0.0f64);
    for l in 0..=3 {
        let Some(cfg) = rec.result("config", OscillatorConfig::new(1.0, l)) else {
            return;
        };
        for n in 0..=5 {
            let phi = RadialExpansion::basis(n, &cfg);
            let Some(here) = rec.result("sample", phi.sample(&grid)) else {
                return;
            };
            let scale = here.max_abs();
            let Some(down) = rec.result("lower", phi.ladder(LadderDirection::Lower)) else {
                return;
            };
            let Some(up) = rec.result("raise", phi.ladder(LadderDirection::Raise)) else {
                return;
            };
            let want_down = if n == 0 {
                RadialExpansion::basis(0, &cfg).scaled(0.0)
            } else {
                RadialExpansion::basis(n - 1, &cfg).scaled((n as f64).sqrt())
            };
            let want_up = RadialExpansion::basis(n + 1, &cfg).scaled(((n + 1) as f64).sqrt());
            let err = |a: &RadialExpansion, b: &RadialExpansion| -> Result<f64> {
                Ok(a.sample(&grid)?.max_abs_diff(&b.sample(&grid)?) / scale)
            };
            let Some(e) = rec.result("lower", err(&down, &want_down)) else {
                return;
            };
            lower = lower.max(e);
            let Some(e) = rec.result("raise", err(&up, &want_up)) else {
                return;
            };
            raise = raise.max(e);
            let Some(aad) = rec.result("commutator", up.ladder(LadderDirection::Lower)) else {
                return;
            };
            let Some(ada) = rec.result("commutator", down.ladder(LadderDirection::Raise)) else {
                return;
            };
            let Some(e) = rec.result("commutator", err(&aad.sub(&ada), &phi)) else {
                return;
            };
            comm = comm.max(e);
        }
    }
    rec.below("lowering", lower, 1e-8);
    rec.below("raising", raise, 1e-8);
    rec.below("commutator", comm, 1e-8);
}

fn normalization_suite(rec: &mut Recorder) {
    let mut norm_err = 0.0f64;
    let mut branch = 0.0f64;
    let mut recurrence = 0.0f64;
    let mut sweep = standard_sweep();
    sweep.extend(normalization_sweep());
    for p in &sweep {
        let Some(s) = rec.result("build", ModeState::build(p, 1e-12, DEFAULT_TRUNCATION_CAP)) else {
            return;
        };
        let total = s.cumulative_mass().last().copied().unwrap_or(0.0);
        norm_err = norm_err.max((total - 1.0).abs());
        let n = s.n_max();
        let Some(a) = rec.result(
            "branch",
            mode_coefficients_branch(p.xi(), p.alpha(), n, Branch::Principal),
        ) else {
            return;
        };
        let Some(b) = rec.result(
            "branch",
            mode_coefficients_branch(p.xi(), p.alpha(), n, Branch::Flipped),
        ) else {
            return;
        };
        let r = coefficients_by_recurrence(p.xi(), p.alpha(), n);
        for ((x, y), z) in a.iter().zip(&b).zip(&r) {
            branch = branch.max((x - y).norm() / (1.0 + x.norm()));
            recurrence = recurrence.max((x - z).norm() / (1.0 + x.norm()));
        }
    }
    rec.below("norm_sum", norm_err, 1e-10);
    rec.below("branch_flip", branch, 1e-12);
    rec.below("hermite_vs_recurrence", recurrence, 1e-10);
}

fn identity_suite(rec: &mut Recorder) {
    for &a in &[0.2, 0.5] {
        let xi = Complex64::new(-a, 0.0);
        let coarse = QuadratureConfig {
            n_radial: 100,
            n_angular: 100,
            ..QuadratureConfig::default()
        };
        let Some(c1) = rec.result("coarse", identity_resolution_check(xi, 6, &coarse)) else {
            return;
        };
        let Some(c2) = rec.result("fine", identity_resolution_check(xi, 6, &QuadratureConfig::default())) else {
            return;
        };
        rec.below(format!("deviation_xi_{a}"), c2.max_deviation, 1e-3);
        let ratio = c1.max_deviation / c2.max_deviation;
        rec.flag(
            format!("halving_xi_{a}"),
            ratio >= 2.0,
            format!("error ratio {ratio:.3} under grid doubling (need >= 2)"),
        );
    }
}

fn close(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

fn closec(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

fn moments_suite(rec: &mut Recorder) {
    let sweep = standard_sweep();
    let mut states = Vec::with_capacity(sweep.len());
    for p in &sweep {
        let Some(s) = rec.result("oracle", ModeState::build(p, ORACLE_EPS, DEFAULT_TRUNCATION_CAP)) else {
            return;
        };
        states.push(s);
    }
    let (mut photon, mut quad, mut ang) = (0.0f64, 0.0f64, 0.0f64);
    for (p, s) in sweep.iter().zip(&states) {
        let Some(mc) = rec.result("moments", mode_moments(p.xi(), p.alpha())) else {
            return;
        };
        let ms = mode_moments_series(s);
        photon = photon
            .max(close(mc.mean_n, ms.mean_n))
            .max(close(mc.mean_n2, ms.mean_n2));
        let Some(qc) = rec.result("quadrature", quad_expectations(p.xi(), p.alpha())) else {
            return;
        };
        let qs = quad_expectations_series(s);
        for (x, y) in [
            (qc.a, qs.a),
            (qc.a_dag, qs.a_dag),
            (qc.a2, qs.a2),
            (qc.a_dag2, qs.a_dag2),
        ] {
            quad = quad.max(closec(x, y));
        }
        quad = quad.max(close(qc.n, qs.n));
    }
    for i in 0..sweep.len() {
        let j = (i * 7 + 5) % sweep.len();
        let tp = ThreeModeParams {
            r: sweep[i],
            plus: sweep[i],
            minus: sweep[j],
        };
        let Some(cl) = rec.result("angular", angular_expectations(&tp)) else {
            return;
        };
        let Some(or) = rec.result("angular", angular_expectations_series(&states[i], &states[j])) else {
            return;
        };
        for (x, y) in [(cl.lp, or.lp), (cl.lm, or.lm), (cl.lp2, or.lp2), (cl.lm2, or.lm2)] {
            ang = ang.max(closec(x, y));
        }
        ang = ang
            .max(close(cl.lplm, or.lplm))
            .max(close(cl.lmlp, or.lmlp))
            .max(close(cl.lz, or.lz));
    }
    rec.below("photon_moments", photon, 1e-8);
    rec.below("quadrature_expectations", quad, 1e-8);
    rec.below("angular_expectations", ang, 1e-8);
}

fn figure_suite(rec: &mut Recorder) {
    if let Some(curve) = rec.result("mandel", mandel_curve(&MandelParams::default())) {
        let (neg, pos) = mandel_has_both_signs(&curve);
        rec.flag(
            "mandel_both_signs",
            neg && pos,
            format!("Q < 0 seen: {neg}, Q > 0 seen: {pos}"),
        );
    }
    if let Some(map) = rec.result("quadrature", quadrature_map(&QuadratureMapParams::default())) {
        let (i1, i2) = quadrature_sign_counts(&map);
        let n = map.len();
        rec.flag("quadrature_i1_positive", i1 == n, format!("{i1}/{n} points"));
        rec.flag("quadrature_i2_negative", i2 == n, format!("{i2}/{n} points"));
    }
    if let Some(map) = rec.result("angular", angular_map(&AngularMapParams::default())) {
        let (lx, ly) = angular_sign_counts(&map);
        let n = map.len();
        let undefined = map.iter().filter(|p| p.s_lx.is_none()).count();
        rec.flag(
            "angular_slx_positive",
            lx == n,
            format!("{lx}/{n} points ({undefined} with <Lz> = 0, counted as +inf)"),
        );
        rec.flag(
            "angular_sly_negative",
            ly == n,
            format!("{ly}/{n} points ({undefined} with <Lz> = 0)"),
        );
    }
}

fn wigner_modes() -> Result<ThreeModeParams> {
    Ok(ThreeModeParams {
        r: ModeParams::from_xi(Complex64::new(-0.5, 0.0), Complex64::new(0.5, 0.0))?,
        plus: ModeParams::from_xi(Complex64::from_polar(0.4, PI / 3.0), Complex64::new(0.3, -0.4))?,
        minus: ModeParams::from_xi(Complex64::new(0.0, 0.25), Complex64::new(-0.6, 0.2))?,
    })
}

fn wigner_suite(rec: &mut Recorder) {
    let Some(p) = rec.result("params", wigner_modes()) else {
        return;
    };
    let Some(state) = rec.result("state", build_state(&p, 1e-12)) else {
        return;
    };
    let mut worst = 0.0f64;
    for z in phase_points(50, 2024, 1.5) {
        let Some(a) = rec.result("series", wigner_series(&state, z)) else {
            return;
        };
        let Some(b) = rec.result("closed", wigner_closed(&p, z)) else {
            return;
        };
        worst = worst.max((a - b).abs());
    }
    rec.below("series_vs_closed", worst, 1e-6);
    if let Some(cal) = rec.result(
        "constant",
        calibrate_series_constant(&p, &state, &phase_points(200, 7, 0.8), 1e-8),
    ) {
        rec.flag(
            "constant_phase_space_independent",
            true,
            format!(
                "raw/closed = {:.12} with relative spread {:.3e}",
                cal.constant, cal.spread
            ),
        );
    }
    let Some(grid) = rec.result("slice", wigner_slice(&WignerSliceParams::default())) else {
        return;
    };
    let Some(shape) = rec.result("fit", slice_shape(&grid)) else {
        return;
    };
    let e2r = (2.0 * WignerSliceParams::default().r).exp();
    rec.flag(
        "slice_single_peak",
        shape.local_maxima == 1,
        format!("{} local maxima", shape.local_maxima),
    );
    rec.below("slice_squeezed_factor", (shape.squeezed_factor / e2r - 1.0).abs(), 0.05);
    rec.below(
        "slice_stretched_factor",
        (shape.stretched_factor / e2r - 1.0).abs(),
        0.05,
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_reported() {
        assert_eq!(run(&["nope"]).unwrap_err(), "nope");
    }

    #[test]
    fn points_are_reproducible() {
        assert_eq!(phase_points(5, 1, 2.0), phase_points(5, 1, 2.0));
        assert_ne!(phase_points(5, 1, 2.0), phase_points(5, 2, 2.0));
        assert!(phase_points(100, 3, 0.5)
            .iter()
            .flatten()
            .all(|z| z.re.abs() <= 0.5 && z.im.abs() <= 0.5));
    }

    #[test]
    fn fast_suites_pass() {
        let r = run(&["x1_laguerre", "state_normalization", "wigner"]).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(
            r.render(),
            run(&["x1_laguerre", "state_normalization", "wigner"]).unwrap().render()
        );
    }

    #[test]
    fn figure_suite_reports_the_unattainable_sign() {
        let r = run(&["figure_signs"]).unwrap();
        let failing: Vec<_> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert_eq!(failing, vec!["angular_sly_negative"], "{}", r.render());
    }
}

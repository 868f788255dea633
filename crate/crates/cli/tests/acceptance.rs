//! Acceptance checks. Each test writes one `[n] name: PASS|FAIL detail` line
//! straight to stderr (bypassing the test harness capture) and then asserts.

use std::f64::consts::PI;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use isoq_core::figures::{
    angular_map, angular_sign_counts, mandel_curve, mandel_has_both_signs, quadrature_map, quadrature_sign_counts,
    slice_shape, wigner_slice, AngularMapParams, MandelParams, QuadratureMapParams, WignerSliceParams,
};
use isoq_core::radial::{
    eigenfunction, orthonormality_matrix, LadderDirection, OscillatorConfig, RadialExpansion, SampledFn,
};
use isoq_core::special_fn::{rational, x1_laguerre, x1_ode_residual, BigRational, Poly};
use isoq_core::states::{
    build_state, identity_resolution_check, mode_coefficients_branch, standard_sweep, Branch, ModeParams, ModeState,
    QuadratureConfig, ThreeModeParams, DEFAULT_TRUNCATION_CAP,
};
use isoq_core::stats::{
    angular_expectations, angular_expectations_series, mode_moments, mode_moments_series, quad_expectations,
    quad_expectations_series, ORACLE_EPS,
};
use isoq_core::validate::phase_points;
use isoq_core::wigner::{calibrate_series_constant, wigner_closed, wigner_series};
use num_complex::Complex64;

fn report(id: u32, name: &str, passed: bool, detail: &str, elapsed: Duration, budget: Duration) -> bool {
    let in_time = elapsed <= budget;
    let ok = passed && in_time;
    let line = format!(
        "[{id}] {name}: {} {detail}; {:.2}s (budget {}s)\n",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    ok
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

fn relc(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

#[test]
fn x1_laguerre_exactness() {
    let t = Instant::now();
    let q = |n: i64, d: i64| rational(n, d);
    let mut members = true;
    let mut residuals = true;
    for k in [q(1, 2), q(3, 2), q(5, 2)] {
        let k2 = k.clone() * k.clone();
        let by_hand: [Poly<BigRational>; 3] = [
            Poly::new(vec![-(k.clone() + q(1, 1)), q(-1, 1)]),
            Poly::new(vec![-(k2.clone() + q(2, 1) * k.clone()), q(0, 1), q(1, 1)]),
            Poly::new(vec![
                -(k.clone() / q(2, 1)) * (q(3, 1) + q(4, 1) * k.clone() + k2.clone()),
                k.clone() * (k.clone() + q(3, 1)) / q(2, 1),
                (k.clone() + q(3, 1)) / q(2, 1),
                q(-1, 2),
            ]),
        ];
        for (i, want) in by_hand.iter().enumerate() {
            members &= x1_laguerre(i + 1, &k).unwrap() == *want;
        }
        for nu in 1..=12 {
            residuals &= x1_ode_residual(nu, &k).unwrap().is_zero();
        }
    }
    let ok = report(
        1,
        "X1-Laguerre exactness",
        members && residuals,
        &format!("first three members exact: {members}; ODE residual zero for nu <= 12: {residuals}"),
        t.elapsed(),
        Duration::from_secs(1),
    );
    assert!(ok);
}

#[test]
fn eigensystem() {
    let t = Instant::now();
    let grid = SampledFn::uniform_grid(0.1, 8.0, 800);
    let mut residual = 0.0f64;
    let mut gram = 0.0f64;
    for omega in [0.5, 1.0, 2.0] {
        for l in 0..=3 {
            let cfg = OscillatorConfig::new(omega, l).unwrap();
            for n in 0..=6 {
                let s = eigenfunction(n, &cfg);
                let peak = s.sample(&grid).unwrap().max_abs();
                for &r in &grid {
                    residual = residual.max(s.schrodinger_residual(r).unwrap().abs() / peak);
                }
            }
            let g = orthonormality_matrix(&cfg, 6).unwrap().value;
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    gram = gram.max((v - f64::from(u8::from(i == j))).abs());
                }
            }
        }
    }
    let ok = report(
        2,
        "eigensystem",
        residual < 1e-8 && gram < 1e-7,
        &format!("max relative residual {residual:.2e} (< 1e-8), max |G - I| {gram:.2e} (< 1e-7)"),
        t.elapsed(),
        Duration::from_secs(10),
    );
    assert!(ok);
}

#[test]
fn ladder_algebra() {
    let t = Instant::now();
    let grid = SampledFn::uniform_grid(0.1, 8.0, 200);
    let (mut lower, mut raise, mut comm) = (0.0f64, 0.0f64, 0.0f64);
    for omega in [0.5, 1.0, 2.0] {
        for l in 0..=3 {
            let cfg = OscillatorConfig::new(omega, l).unwrap();
            for n in 0..=5 {
                let phi = RadialExpansion::basis(n, &cfg);
                let base = phi.sample(&grid).unwrap();
                let down = phi.ladder(LadderDirection::Lower).unwrap();
                let up = phi.ladder(LadderDirection::Raise).unwrap();
                let want_down = if n == 0 {
                    base.scaled(0.0)
                } else {
                    eigenfunction(n - 1, &cfg)
                        .sample(&grid)
                        .unwrap()
                        .scaled((n as f64).sqrt())
                };
                let want_up = eigenfunction(n + 1, &cfg)
                    .sample(&grid)
                    .unwrap()
                    .scaled(((n + 1) as f64).sqrt());
                lower = lower.max(down.sample(&grid).unwrap().max_abs_diff(&want_down));
                raise = raise.max(up.sample(&grid).unwrap().max_abs_diff(&want_up));
                let aad = up.ladder(LadderDirection::Lower).unwrap();
                let ada = down.ladder(LadderDirection::Raise).unwrap();
                comm = comm.max(aad.sub(&ada).sample(&grid).unwrap().max_abs_diff(&base));
            }
        }
    }
    let ok = report(
        3,
        "ladder algebra",
        lower < 1e-8 && raise < 1e-8 && comm < 1e-8,
        &format!("a_r {lower:.2e}, a_r^dag {raise:.2e}, [a, a^dag] - 1 {comm:.2e} (each < 1e-8)"),
        t.elapsed(),
        Duration::from_secs(60),
    );
    assert!(ok);
}

#[test]
fn state_normalization() {
    let t = Instant::now();
    let (mut norm, mut flip) = (0.0f64, 0.0f64);
    for p in standard_sweep() {
        let s = ModeState::build(&p, 1e-12, DEFAULT_TRUNCATION_CAP).unwrap();
        let total: f64 = s.coeffs.iter().map(|c| s.norm * s.norm * c.norm_sqr()).sum();
        norm = norm.max((total - 1.0).abs());
        let a = mode_coefficients_branch(p.xi(), p.alpha(), s.n_max(), Branch::Principal).unwrap();
        let b = mode_coefficients_branch(p.xi(), p.alpha(), s.n_max(), Branch::Flipped).unwrap();
        for (x, y) in a.iter().zip(&b) {
            flip = flip.max(relc(*y, *x));
        }
    }
    let ok = report(
        4,
        "state normalization",
        norm <= 1e-10 && flip <= 1e-12,
        &format!("max |N^2 sum|c|^2 - 1| {norm:.2e} (<= 1e-10), branch flip {flip:.2e} (<= 1e-12)"),
        t.elapsed(),
        Duration::from_secs(30),
    );
    assert!(ok);
}

#[test]
fn identity_resolution() {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut passed = true;
    for a in [0.2, 0.5] {
        let xi = Complex64::new(-a, 0.0);
        let coarse = QuadratureConfig {
            n_radial: 100,
            n_angular: 100,
            ..QuadratureConfig::default()
        };
        let fine = QuadratureConfig::default();
        let d1 = identity_resolution_check(xi, 6, &coarse).unwrap().max_deviation;
        let d2 = identity_resolution_check(xi, 6, &fine).unwrap().max_deviation;
        passed &= d2 < 1e-3 && d1 / d2 >= 2.0;
        parts.push(format!("|xi|={a}: |M - I| {d2:.2e}, doubling ratio {:.2}", d1 / d2));
    }
    let ok = report(
        5,
        "identity resolution",
        passed,
        &parts.join("; "),
        t.elapsed(),
        Duration::from_secs(60),
    );
    assert!(ok);
}

#[test]
fn moment_oracles() {
    let t = Instant::now();
    let sweep = standard_sweep();
    let states: Vec<ModeState> = sweep
        .iter()
        .map(|p| ModeState::build(p, ORACLE_EPS, DEFAULT_TRUNCATION_CAP).unwrap())
        .collect();
    let mut worst = 0.0f64;
    for (p, s) in sweep.iter().zip(&states) {
        let (c, o) = (mode_moments(p.xi(), p.alpha()).unwrap(), mode_moments_series(s));
        worst = worst.max(rel(c.mean_n, o.mean_n)).max(rel(c.mean_n2, o.mean_n2));
        let (c, o) = (
            quad_expectations(p.xi(), p.alpha()).unwrap(),
            quad_expectations_series(s),
        );
        for (x, y) in [(c.a, o.a), (c.a_dag, o.a_dag), (c.a2, o.a2), (c.a_dag2, o.a_dag2)] {
            worst = worst.max(relc(x, y));
        }
        worst = worst.max(rel(c.n, o.n));
    }
    for i in 0..sweep.len() {
        for j in [i, (i + 11) % sweep.len()] {
            let tp = ThreeModeParams {
                r: sweep[i],
                plus: sweep[i],
                minus: sweep[j],
            };
            let c = angular_expectations(&tp).unwrap();
            let o = angular_expectations_series(&states[i], &states[j]).unwrap();
            for (x, y) in [(c.lp, o.lp), (c.lm, o.lm), (c.lp2, o.lp2), (c.lm2, o.lm2)] {
                worst = worst.max(relc(x, y));
            }
            worst = worst
                .max(rel(c.lplm, o.lplm))
                .max(rel(c.lmlp, o.lmlp))
                .max(rel(c.lz, o.lz));
        }
    }
    let ok = report(
        6,
        "moment oracles",
        worst < 1e-8,
        &format!("max relative closed-vs-Fock difference {worst:.2e} (< 1e-8)"),
        t.elapsed(),
        Duration::from_secs(30),
    );
    assert!(ok);
}

#[test]
fn figure_sign_patterns() {
    let t = Instant::now();
    let curve = mandel_curve(&MandelParams::default()).unwrap();
    let (neg, pos) = mandel_has_both_signs(&curve);
    let qmap = quadrature_map(&QuadratureMapParams::default()).unwrap();
    let (i1, i2) = quadrature_sign_counts(&qmap);
    let amap = angular_map(&AngularMapParams::default()).unwrap();
    let (slx, sly) = angular_sign_counts(&amap);
    let (a, b, c) = (
        neg && pos,
        i1 == qmap.len() && i2 == qmap.len(),
        slx == amap.len() && sly == amap.len(),
    );
    let detail = format!(
        "(a) Q both signs: {a}; (b) I1 > 0 on {i1}/{n2}, I2 < 0 on {i2}/{n2}; \
         (c) S_Lx > 0 on {slx}/{n3}, S_Ly < 0 on {sly}/{n3}",
        n2 = qmap.len(),
        n3 = amap.len()
    );
    let ok = report(
        7,
        "figure sign patterns",
        a && b && c,
        &detail,
        t.elapsed(),
        Duration::from_secs(30),
    );
    assert!(ok);
}

#[test]
fn wigner_consistency() {
    let t = Instant::now();
    let m = |xi: Complex64, a0: Complex64| ModeParams::from_xi(xi, a0).unwrap();
    let p = ThreeModeParams {
        r: m(Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)),
        plus: m(Complex64::from_polar(0.45, 2.0), Complex64::new(-0.3, 0.6)),
        minus: m(Complex64::from_polar(0.3, -PI / 4.0), Complex64::new(0.2, -0.4)),
    };
    let state = build_state(&p, 1e-12).unwrap();
    let mut agree = 0.0f64;
    for z in phase_points(50, 0xacce, 1.5) {
        agree = agree.max((wigner_series(&state, z).unwrap() - wigner_closed(&p, z).unwrap()).abs());
    }
    let cal = calibrate_series_constant(&p, &state, &phase_points(200, 0xca1, 0.8), 1e-8);
    let spread = match &cal {
        Ok(c) => c.spread,
        Err(isoq_core::Error::Calibration { spread }) => *spread,
        Err(e) => panic!("{e}"),
    };
    let params = WignerSliceParams::default();
    let grid = wigner_slice(&params).unwrap();
    let shape = slice_shape(&grid).unwrap();
    let e2r = (2.0 * params.r).exp();
    let (sq, st) = (shape.squeezed_factor / e2r - 1.0, shape.stretched_factor / e2r - 1.0);
    let passed = agree < 1e-6 && cal.is_ok() && shape.local_maxima == 1 && sq.abs() < 0.05 && st.abs() < 0.05;
    let ok = report(
        8,
        "Wigner consistency",
        passed,
        &format!(
            "series vs closed {agree:.2e} (< 1e-6), constant spread {spread:.2e} (< 1e-8), \
             {} peak(s) at res {}, squeeze factors / e^2R - 1: {sq:.2e}, {st:.2e} (< 5%)",
            shape.local_maxima, params.resolution
        ),
        t.elapsed(),
        Duration::from_secs(120),
    );
    assert!(ok);
}

#[test]
fn determinism() {
    let t = Instant::now();
    let runs: &[&[&str]] = &[
        &["validate"],
        &["mandel"],
        &["quadrature"],
        &["angular"],
        &["wigner", "--res", "128"],
        &["wigner", "--res", "64", "--mode", "series"],
        &["eigen"],
    ];
    let exec = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_isoq"))
            .args(args)
            .env_remove("ISOQ_CONFIG")
            .output()
            .unwrap()
    };
    let mut differing = Vec::new();
    for args in runs {
        let (a, b) = (exec(args), exec(args));
        if a.stdout != b.stdout || a.status.code() != b.status.code() || a.stdout.is_empty() {
            differing.push(args.join(" "));
        }
    }
    let ok = report(
        9,
        "determinism",
        differing.is_empty(),
        &format!("{} commands run twice, differing: {:?}", runs.len(), differing),
        t.elapsed(),
        Duration::from_secs(120),
    );
    assert!(ok);
}

//! The `isoq` command-line front end.
//!
//! Exit codes: 0 success, 1 a validation check failed, 2 usage or domain error.

pub mod args;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::Parser;
use isoq_core::figures::{
    angular_map, mandel_curve, quadrature_map, wigner_slice, AngularMapParams, MandelParams, QuadratureMapParams,
    WignerSliceParams, XiConvention,
};
use isoq_core::radial::{eigenfunction, potential_v, OscillatorConfig};
use isoq_core::validate;
use isoq_core::wigner::WignerMode;
use serde_json::json;

use args::{Cli, Command, Convention, Evaluation, Format};
use config::Config;
use output::Table;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] isoq_core::Error),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
    #[error("write failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("write failed: {0}")]
    Json(#[from] serde_json::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let format = cfg.pick_enum(cli.format, "format", Format::Csv)?;
    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let code = match &cli.command {
        Command::Validate(a) => {
            if a.list {
                for s in validate::SUITES {
                    writeln!(sink, "{s}")?;
                }
                EXIT_OK
            } else {
                let names: Vec<&str> = a.suites.iter().map(String::as_str).collect();
                let report = validate::run(&names).map_err(|n| {
                    CliError::Usage(format!("unknown suite `{n}` (known: {})", validate::SUITES.join(", ")))
                })?;
                match format {
                    Format::Json => {
                        let checks: Vec<_> = report
                            .checks
                            .iter()
                            .map(|c| json!({"suite": c.suite, "name": c.name, "passed": c.passed, "detail": c.detail}))
                            .collect();
                        serde_json::to_writer(&mut sink, &json!({"passed": report.passed(), "checks": checks}))?;
                        writeln!(sink)?;
                    }
                    Format::Csv => sink.write_all(report.render().as_bytes())?,
                }
                if report.passed() {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                }
            }
        }
        cmd => {
            figure_table(cmd, &cfg)?.write(format, &mut sink)?;
            EXIT_OK
        }
    };
    sink.flush()?;
    Ok(code)
}

fn figure_table(cmd: &Command, cfg: &Config) -> Result<Table, CliError> {
    match cmd {
        Command::Validate(_) => unreachable!("handled by dispatch"),
        Command::Mandel(a) => {
            let d = MandelParams::default();
            let p = MandelParams {
                alpha0: cfg.pick(a.alpha0, "alpha0", d.alpha0)?,
                phi: cfg.pick(a.phi, "phi", d.phi)?,
                xi_min: cfg.pick(a.xi_min, "xi_min", d.xi_min)?,
                xi_max: cfg.pick(a.xi_max, "xi_max", d.xi_max)?,
                steps: cfg.pick(a.steps, "steps", d.steps)?,
            };
            let mut t = Table::new(&["xi", "Q"]);
            for pt in mandel_curve(&p)? {
                t.push(vec![pt.xi_abs.into(), pt.q.into()]);
            }
            Ok(t)
        }
        Command::Quadrature(a) => {
            let d = QuadratureMapParams::default();
            let p = QuadratureMapParams {
                xi: cfg.pick(a.xi, "xi", d.xi)?,
                alpha_max: cfg.pick(a.alpha_max, "alpha_max", d.alpha_max)?,
                alpha_steps: cfg.pick(a.alpha_steps, "alpha_steps", d.alpha_steps)?,
                theta_points: cfg.pick(a.theta_points, "theta_points", d.theta_points)?,
            };
            let mut t = Table::new(&["alpha0_abs", "theta", "I1", "I2"]);
            for pt in quadrature_map(&p)? {
                t.push(vec![pt.alpha_abs.into(), pt.theta.into(), pt.i1.into(), pt.i2.into()]);
            }
            Ok(t)
        }
        Command::Angular(a) => {
            let d = AngularMapParams::default();
            let p = AngularMapParams {
                xi_plus: cfg.pick(a.xi_plus, "xi_plus", d.xi_plus)?,
                xi_minus: cfg.pick(a.xi_minus, "xi_minus", d.xi_minus)?,
                alpha0_minus: cfg.pick(a.alpha0_minus, "alpha0_minus", d.alpha0_minus)?,
                half_width: cfg.pick(a.half_width, "half_width", d.half_width)?,
                resolution: cfg.pick(a.res, "res", d.resolution)?,
            };
            let mut t = Table::new(&["x_plus", "y_plus", "Lz", "var_Lx", "var_Ly", "S_Lx", "S_Ly"]);
            for pt in angular_map(&p)? {
                t.push(vec![
                    pt.x_plus.into(),
                    pt.y_plus.into(),
                    pt.lz.into(),
                    pt.var_lx.into(),
                    pt.var_ly.into(),
                    pt.s_lx.into(),
                    pt.s_ly.into(),
                ]);
            }
            Ok(t)
        }
        Command::Wigner(a) => {
            let d = WignerSliceParams::default();
            let mode = match cfg.pick_enum(a.mode, "mode", Evaluation::Closed)? {
                Evaluation::Closed => WignerMode::Closed,
                Evaluation::Series => WignerMode::Series,
            };
            let convention = match cfg.pick_enum(a.xi_convention, "xi_convention", Convention::Standard)? {
                Convention::Standard => XiConvention::Standard,
                Convention::Half => XiConvention::Half,
            };
            let p = WignerSliceParams {
                r: cfg.pick(a.r, "r", d.r)?,
                phi: cfg.pick(a.phi, "phi", d.phi)?,
                alpha0: cfg.pick(a.alpha0, "alpha0", d.alpha0)?,
                half_width: cfg.pick(a.half_width, "half_width", d.half_width)?,
                resolution: cfg.pick(a.res, "res", d.resolution)?,
                mode,
                convention,
                eps_tail: cfg.pick(a.eps, "eps", d.eps_tail)?,
            };
            let g = wigner_slice(&p)?;
            let mut t = Table::new(&["x", "p", "W"]);
            for (i, &x) in g.x_axis.iter().enumerate() {
                for (j, &pp) in g.p_axis.iter().enumerate() {
                    t.push(vec![x.into(), pp.into(), g.values[i][j].into()]);
                }
            }
            Ok(t)
        }
        Command::Eigen(a) => {
            let omega = cfg.pick(a.omega, "omega", 1.0)?;
            let l = cfg.pick(a.l, "l", 0)?;
            let n_max = cfg.pick(a.n_max, "n_max", 4)?;
            let r_max = cfg.pick(a.r_max, "r_max", 6.0)?;
            let points = cfg.pick(a.points, "points", 120)?;
            if !(r_max > 0.0 && points >= 1) {
                return Err(CliError::Usage(format!(
                    "need r_max > 0 and points >= 1 (got {r_max}, {points})"
                )));
            }
            let oc = OscillatorConfig::new(omega, l)?;
            let mut t = Table::new(&["n", "l", "omega", "energy", "r", "V", "phi"]);
            for n in 0..=n_max {
                let s = eigenfunction(n, &oc);
                for i in 1..=points {
                    let r = r_max * i as f64 / points as f64;
                    t.push(vec![
                        n.into(),
                        (l as usize).into(),
                        omega.into(),
                        s.energy().into(),
                        r.into(),
                        potential_v(r, &oc)?.into(),
                        s.eval(r).into(),
                    ]);
                }
            }
            Ok(t)
        }
    }
}

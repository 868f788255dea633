use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn isoq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoq"))
        .args(args)
        .env_remove("ISOQ_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const FIGURE_RUNS: &[&[&str]] = &[
    &["mandel", "--steps", "20"],
    &["quadrature", "--alpha-steps", "6", "--theta-points", "8"],
    &["angular", "--res", "9"],
    &["wigner", "--res", "24"],
    &["wigner", "--res", "16", "--mode", "series"],
    &["eigen", "--n-max", "3", "--points", "40"],
];

#[test]
fn figure_commands_are_byte_identical_across_runs() {
    for args in FIGURE_RUNS {
        let a = isoq(args);
        let b = isoq(args);
        assert_eq!(
            a.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn validate_is_deterministic_and_reports_failure() {
    let a = isoq(&["validate"]);
    let b = isoq(&["validate"]);
    assert_eq!(a.stdout, b.stdout);
    // one sign pattern in the spin-squeezing map cannot hold
    assert_eq!(a.status.code(), Some(1));
    let text = stdout(&a);
    assert!(text.contains("FAIL figure_signs/angular_sly_negative"));
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 1);

    let ok = isoq(&["validate", "--suite", "x1_laguerre", "--suite", "wigner"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["mandel", "--steps", "lots"],
        &["mandel", "--xi-max", "1.5"],
        &["wigner", "--res", "4096"],
        &["wigner", "--R", "-1"],
        &["validate", "--suite", "nope"],
        &["eigen", "--omega", "0"],
    ] {
        let o = isoq(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = isoq(&["mandel", "--xi-max", "1.5"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("xi_max < 1"));
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<Option<f64>>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| {
            rec.unwrap()
                .iter()
                .map(|c| {
                    if c.is_empty() {
                        None
                    } else {
                        Some(c.parse::<f64>().unwrap())
                    }
                })
                .collect()
        })
        .collect();
    (header, rows)
}

fn write_csv(header: &[String], rows: &[Vec<Option<f64>>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                None => String::new(),
                // integer-valued columns are written without a fraction
                Some(v) if header[i] == "n" || header[i] == "l" => format!("{}", *v as i64),
                Some(v) => format!("{v:?}"),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[test]
fn csv_round_trips() {
    for args in FIGURE_RUNS {
        let text = stdout(&isoq(args));
        let (header, rows) = parse_csv(&text);
        assert!(rows.iter().all(|r| r.len() == header.len()));
        assert_eq!(write_csv(&header, &rows), text, "{args:?}");
    }
}

#[test]
fn json_matches_csv() {
    let csv_text = stdout(&isoq(&["angular", "--res", "9"]));
    let json_text = stdout(&isoq(&["angular", "--res", "9", "--format", "json"]));
    let (header, rows) = parse_csv(&csv_text);
    let doc: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    assert_eq!(doc["columns"].as_array().unwrap().len(), header.len());
    for (row, jrow) in rows.iter().zip(doc["rows"].as_array().unwrap()) {
        for (c, j) in row.iter().zip(jrow.as_array().unwrap()) {
            assert_eq!(*c, j.as_f64());
        }
    }
}

#[test]
fn published_parameter_sets() {
    let (h, rows) = parse_csv(&stdout(&isoq(&[
        "mandel", "--alpha0", "3", "--xi-min", "0.05", "--xi-max", "0.95", "--steps", "90",
    ])));
    assert_eq!(h, ["xi", "Q"]);
    assert_eq!(rows.len(), 91);
    assert!(rows.iter().any(|r| r[1].unwrap() < 0.0) && rows.iter().any(|r| r[1].unwrap() > 0.0));

    let (h, rows) = parse_csv(&stdout(&isoq(&[
        "wigner",
        "--R",
        "0.7",
        "--phi",
        "0",
        "--alpha0",
        "0.5",
        "--half-width",
        "3",
        "--res",
        "128",
    ])));
    assert_eq!(h, ["x", "p", "W"]);
    assert_eq!(rows.len(), 128 * 128);
    let peak = rows.iter().map(|r| r[2].unwrap()).fold(0.0, f64::max);
    assert!(peak > 0.9 && peak <= 1.0);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn config_file_and_env_with_flag_override() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "mandel.conf",
        "# sweep\nxi-min = 0.1\nxi_max = 0.2\nsteps = 2\n",
    );
    let (_, rows) = parse_csv(&stdout(&isoq(&["mandel", "--config", &cfg])));
    assert_eq!(
        rows.iter().map(|r| r[0].unwrap()).collect::<Vec<_>>(),
        [0.1, 0.15000000000000002, 0.2]
    );

    let o = Command::new(env!("CARGO_BIN_EXE_isoq"))
        .args(["mandel", "--steps", "1"])
        .env("ISOQ_CONFIG", &cfg)
        .output()
        .unwrap();
    let (_, rows) = parse_csv(&stdout(&o));
    assert_eq!(rows.iter().map(|r| r[0].unwrap()).collect::<Vec<_>>(), [0.1, 0.2]);

    let bad = write(dir.path(), "bad.conf", "colour = blue\n");
    assert_eq!(isoq(&["mandel", "--config", &bad]).status.code(), Some(2));
    assert_eq!(
        isoq(&["mandel", "--config", "/nonexistent/isoq.conf"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_file_matches_stdout() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("q.csv");
    let o = isoq(&[
        "quadrature",
        "--alpha-steps",
        "3",
        "--theta-points",
        "4",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let direct = isoq(&["quadrature", "--alpha-steps", "3", "--theta-points", "4"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

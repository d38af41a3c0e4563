use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_dqca-lab");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("DQCA_LAB_THREADS")
        .output()
        .expect("binary runs")
}

/// Header line, column names and the numeric rows of a successful run.
fn csv(args: &[&str]) -> (String, Vec<String>, Vec<Vec<f64>>) {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let columns = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, columns, rows)
}

fn column(columns: &[String], name: &str) -> usize {
    columns.iter().position(|c| c == name).unwrap()
}

#[test]
fn every_file_starts_with_a_provenance_comment() {
    let (header, columns, _) = csv(&["evolve", "--steps", "3", "--beta", "0.5"]);
    assert_eq!(
        header,
        format!(
            "# dqca-lab {} evolve --steps 3 --beta 0.5",
            env!("CARGO_PKG_VERSION")
        )
    );
    assert_eq!(columns, ["n", "prob", "re_R", "im_R", "re_L", "im_L"]);
}

#[test]
fn zero_steps_echo_the_initial_state() {
    let (_, _, rows) = csv(&[
        "evolve", "--steps", "0", "--init-a", "0.6,0", "--init-b", "0,-0.8",
    ]);
    assert_eq!(rows, vec![vec![0.0, 1.0, 0.6, 0.0, 0.0, -0.8]]);
}

#[test]
fn walk_leaves_odd_sites_empty() {
    let (_, _, rows) = csv(&[
        "evolve",
        "--model",
        "qw",
        "--theta",
        "0.78539816",
        "--steps",
        "10",
        "--init-a",
        "0.70710678118654752,0",
        "--init-b",
        "0,0.70710678118654752",
    ]);
    assert_eq!(rows.len(), 21);
    for row in &rows {
        if (row[0] as i64).rem_euclid(2) == 1 {
            assert_eq!(row[1], 0.0);
        }
    }
    let total: f64 = rows.iter().map(|r| r[1]).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn sigma_tracks_the_ballistic_law() {
    let (_, _, rows) = csv(&["sigma", "--steps", "200"]);
    assert_eq!(rows.len(), 201);
    let last = &rows[200];
    assert!((last[2] - 108.239).abs() < 1e-3);
    assert!((last[1] - last[2]).abs() / last[2] < 0.02);
    assert_eq!(csv(&["sigma", "--steps", "0"]).2, vec![vec![0.0, 0.0, 0.0]]);
}

#[test]
fn walk_and_automaton_spread_alike() {
    let dqca = csv(&["sigma", "--steps", "200"]).2;
    let qw = csv(&["sigma", "--steps", "200", "--model", "qw"]).2;
    assert!((dqca[200][1] - qw[200][1]).abs() / dqca[200][1] < 0.02);
}

#[test]
fn entropy_series() {
    let (_, columns, rows) = csv(&["entropy", "--steps", "400", "--asymptotic"]);
    assert_eq!(columns, ["t", "entropy", "entropy_asymptotic"]);
    assert_eq!(rows[0][1], 0.0);
    assert!(rows[400][1] > 0.99);
    assert!((rows[0][2] - 1.0).abs() < 1e-12);

    let qw = csv(&["entropy", "--steps", "400", "--model", "qw"]).2;
    assert!((qw[400][1] - 0.872).abs() < 0.005, "{}", qw[400][1]);
}

#[test]
fn weak_limit_density() {
    let out = run(&["weak-limit", "--steps", "500"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let trailer = text.lines().last().unwrap();
    let l1: f64 = trailer
        .strip_prefix("# l1_distance=")
        .unwrap()
        .parse()
        .unwrap();
    assert!(l1 > 0.0 && l1 < 0.2);

    let (_, columns, rows) = csv(&["weak-limit", "--steps", "500"]);
    assert_eq!(columns, ["y", "pdf_analytic", "pdf_empirical"]);
    let origin = rows.iter().find(|r| r[0] == 0.0).unwrap();
    assert!((origin[1] - 1.0 / std::f64::consts::PI).abs() < 1e-12);

    let (_, _, rows) = csv(&["weak-limit", "--steps", "500", "--beta", "0.9"]);
    let bound = 0.19f64.sqrt();
    assert!(rows.iter().all(|r| r[0].abs() < bound));
    assert!(rows.iter().any(|r| r[0].abs() > bound - 0.005));
}

#[test]
fn stationary_phase_table() {
    let (_, columns, rows) = csv(&["stationary-phase", "--steps", "200"]);
    assert_eq!(columns, ["n", "prob_exact", "prob_approx", "rel_err"]);
    let edge = 200.0 * 0.5f64.sqrt();
    for r in &rows {
        if r[0].abs() > edge {
            assert_eq!(r[2], 0.0, "n = {}", r[0]);
        }
    }
    let exact: f64 = rows.iter().map(|r| r[1]).sum();
    assert!((exact - 1.0).abs() < 1e-12);
}

#[test]
fn integral_table_shows_the_parity_zeros() {
    let (_, columns, rows) = csv(&[
        "stationary-phase",
        "--function",
        "i1",
        "--t",
        "10",
        "--points",
        "21",
    ]);
    assert_eq!(
        columns,
        ["x", "re_exact", "im_exact", "re_approx", "im_approx"]
    );
    // Grid step is 1, so every row is a lattice site.
    for r in &rows {
        let odd = (10 + r[0] as i64).rem_euclid(2) == 1;
        let vanishing = if odd { r[1] } else { r[2] };
        assert!(vanishing.abs() < 1e-10, "x = {}", r[0]);
    }
}

#[test]
fn dispersion_columns() {
    let (_, columns, dqca) = csv(&["dispersion", "--points", "64"]);
    assert_eq!(columns, ["p", "lambda", "v", "H00", "H01"]);
    let (l, h01) = (column(&columns, "lambda"), column(&columns, "H01"));
    let origin = dqca.iter().find(|r| r[0] == 0.0).unwrap();
    assert!((origin[l] - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    let beta = std::f64::consts::FRAC_1_SQRT_2;
    for r in &dqca {
        assert!((r[h01] - r[l] / r[l].sin() * beta).abs() < 1e-12);
    }

    let (_, qw_columns, qw) = csv(&["dispersion", "--points", "64", "--model", "qw"]);
    assert_eq!(qw_columns.last().unwrap(), "H01_im");
    for (a, b) in dqca.iter().zip(&qw) {
        assert_eq!(a[0], b[0]);
        assert!((a[l] - b[l]).abs() < 1e-12);
    }
}

#[test]
fn argument_errors_exit_2() {
    for args in [
        &["evolve", "--model", "qw", "--beta", "0.3"][..],
        &["evolve", "--beta", "1.5"],
        &["evolve", "--init-a", "1,0", "--init-b", "1,0"],
        &["evolve", "--init-a", "1"],
        &["stationary-phase", "--model", "qw"],
        &["entropy", "--model", "qw", "--asymptotic"],
        &["weak-limit", "--model", "meyer"],
        &["weak-limit", "--init-a", "1,0", "--init-b", "0,0"],
        &["dispersion", "--model", "meyer", "--theta", "0.3"],
        &["no-such-command"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    let out = Command::new(BIN)
        .args(["evolve"])
        .env("DQCA_LAB_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quadrature_failure_exits_3() {
    let out = run(&[
        "stationary-phase",
        "--function",
        "i1",
        "--t",
        "10",
        "--points",
        "2",
        "--tol",
        "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn output_is_deterministic() {
    let args = [
        "stationary-phase",
        "--function",
        "i2",
        "--t",
        "12",
        "--points",
        "31",
        "--beta",
        "-0.4",
    ];
    let serial = Command::new(BIN)
        .args(args)
        .env("DQCA_LAB_THREADS", "1")
        .output()
        .unwrap();
    let parallel = Command::new(BIN)
        .args(args)
        .env("DQCA_LAB_THREADS", "4")
        .output()
        .unwrap();
    assert!(serial.status.success());
    assert_eq!(serial.stdout, parallel.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("evolve.csv");
    let path_str = path.to_str().unwrap();
    let to_file = run(&[
        "evolve", "--steps", "50", "--bloch", "1.2,0.4", "--out", path_str,
    ]);
    assert!(to_file.status.success() && to_file.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let printed =
        String::from_utf8(run(&["evolve", "--steps", "50", "--bloch", "1.2,0.4"]).stdout).unwrap();
    // Identical apart from the recorded command line.
    let body = |s: &str| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(body(&written), body(&printed));
    assert!(written
        .lines()
        .next()
        .unwrap()
        .ends_with(&format!("--out {path_str}")));
}

//! Command-level behavior: exit codes, CSV round-trips, map images, and
//! report aggregation.

use std::path::PathBuf;
use std::process::Command;

use num_complex::Complex64;
use spirallog_cli::config::{CommandKind, FamilyKind, MapFunction, RunConfig};
use spirallog_cli::output::{parse_points_csv, points_to_csv, read_run_report, SummaryReport};
use spirallog_cli::{commands, CliError, Outcome};
use tempfile::TempDir;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spirallog"))
}

fn small_sweep(command: CommandKind, family: FamilyKind, lam: f64) -> RunConfig {
    let mut config = RunConfig::new(command, lam);
    config.family = Some(family);
    config.seeds = 5;
    config.grid_angles = 90;
    config
}

#[test]
fn exit_codes_follow_the_contract() {
    let status = binary()
        .args(["verify", "--family", "G", "--lambda", "1.5", "--seeds", "2"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&status.stderr).contains("lambda out of (0,1]"));

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("run.json");
    let status = binary()
        .args([
            "verify",
            "--family",
            "G",
            "--lambda",
            "0.5",
            "--seeds",
            "3",
            "--grid-angles",
            "90",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    let status = binary()
        .args([
            "verify",
            "--family",
            "ST_SS",
            "--lambda",
            "1",
            "--seeds",
            "2",
            "--grid-angles",
            "90",
            "--include-negative-controls",
            "--out",
            dir.path().join("neg.json").to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));

    // missing subcommand is a usage error
    let status = binary().output().unwrap();
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn negative_control_is_flagged_in_the_report() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("neg.json");
    let mut config = small_sweep(CommandKind::Verify, FamilyKind::StSs, 1.0);
    config.include_negative_controls = true;
    config.out = Some(out.clone());
    let outcome = commands::run(&config).unwrap();
    assert_eq!(outcome, Outcome::BoundViolated);

    let report = read_run_report(&out).unwrap();
    let failing: Vec<_> = report.reports.iter().filter(|r| !r.pass).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|r| r.witness.contains("koebe")));
}

#[test]
fn gamma_and_fs_commands_pass_with_attainment_witnesses() {
    let dir = TempDir::new().unwrap();

    let mut gamma = small_sweep(CommandKind::Gamma, FamilyKind::G, 0.5);
    gamma.out = Some(dir.path().join("gamma.json"));
    assert_eq!(commands::run(&gamma).unwrap(), Outcome::Pass);
    let report = read_run_report(&dir.path().join("gamma.json")).unwrap();
    assert!(report.reports.iter().any(|r| r.attained));
    assert!(report
        .reports
        .iter()
        .all(|r| r.check_name.starts_with("g_gamma")));

    let mut gamma_st = small_sweep(CommandKind::Gamma, FamilyKind::StSs, 0.7);
    gamma_st.out = Some(dir.path().join("gamma_st.json"));
    assert_eq!(commands::run(&gamma_st).unwrap(), Outcome::Pass);
    let report = read_run_report(&dir.path().join("gamma_st.json")).unwrap();
    assert!(report
        .reports
        .iter()
        .any(|r| r.check_name == "st_ss_gamma_n" && r.attained));

    let mut fs = small_sweep(CommandKind::Fs, FamilyKind::StSs, 0.4);
    fs.deltas = 11;
    fs.out = Some(dir.path().join("fs.json"));
    assert_eq!(commands::run(&fs).unwrap(), Outcome::Pass);
    let report = read_run_report(&dir.path().join("fs.json")).unwrap();
    // sweep reports, witness checks, dual checks, consistency checks per delta
    assert_eq!(report.reports.len(), 4 * 11);
    assert!(report
        .reports
        .iter()
        .filter(|r| r.check_name == "st_ss_fekete_szego")
        .all(|r| r.attained));
}

#[test]
fn gamma_command_rejects_the_n_family() {
    let config = small_sweep(CommandKind::Gamma, FamilyKind::N, 0.5);
    match commands::run(&config) {
        Err(CliError::Config(msg)) => assert!(msg.contains("ST_SS and G")),
        other => panic!("expected config error, got {other:?}"),
    }
}

#[test]
fn csv_points_roundtrip_exactly() {
    let points: Vec<Complex64> = (0..200)
        .map(|k| Complex64::from_polar(0.9 * (k as f64 + 1.0) / 200.0, 0.37 * k as f64))
        .collect();
    let text = points_to_csv(&points);
    let parsed = parse_points_csv(&text).unwrap();
    assert_eq!(points, parsed);
}

#[test]
fn boundary_csv_contains_origin_and_vertex() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("boundary.csv");
    let mut config = RunConfig::new(CommandKind::Boundary, 1.0);
    config.count = 101;
    config.grid_angles = 60;
    config.out = Some(out.clone());
    commands::run(&config).unwrap();

    let points = parse_points_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(points[0], Complex64::ZERO * points[0].re.signum()); // rho = 0 endpoint
                                                                    // boundary points of the lambda = 1 spiral sit on |w - 1| = 1
    for p in &points[..101] {
        assert!((((p - Complex64::ONE).norm()) - 1.0).abs() < 1e-12);
    }
    // vertex row present
    assert!(points[..101]
        .iter()
        .any(|p| (p.re - 2.0).abs() < 1e-12 && p.im.abs() < 1e-12));
}

#[test]
fn identity_map_sends_circles_to_circles() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("map.csv");
    let mut config = RunConfig::new(CommandKind::Map, 0.5);
    config.map_function = Some(MapFunction::Identity);
    config.grid_angles = 90;
    config.out = Some(out.clone());
    commands::run(&config).unwrap();

    let points = parse_points_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // first ring: 90 points at radius 0.1
    for p in &points[..90] {
        assert!((p.norm() - 0.1).abs() < 1e-12);
    }
}

#[test]
fn transform_map_rightmost_point_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("gfmap.csv");
    let mut config = RunConfig::new(CommandKind::Map, 0.5);
    config.map_function = Some(MapFunction::GF);
    config.grid_angles = 120;
    config.out = Some(out.clone());
    commands::run(&config).unwrap();

    let points = parse_points_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rightmost = points.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max);
    let expected = (1.95f64.powf(1.5) - 1.0) / 1.5; // image of z = 0.95
    assert!((rightmost - expected).abs() < 1e-12);
}

#[test]
fn power_map_image_stays_in_the_spiral_sector() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("qmap.csv");
    let lam = 0.6;
    let mut config = RunConfig::new(CommandKind::Map, lam);
    config.map_function = Some(MapFunction::QLambdaZn);
    config.n = 2;
    config.grid_angles = 120;
    config.out = Some(out.clone());
    commands::run(&config).unwrap();

    let points = parse_points_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let cap = lam * std::f64::consts::FRAC_PI_2 + 1e-9;
    for p in points {
        assert!(p.re > 0.0);
        assert!(p.arg().abs() <= cap);
    }
}

#[test]
fn log_map_imaginary_parts_respect_the_rotation_bound() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("logmap.csv");
    let lam = 0.5;
    let mut config = RunConfig::new(CommandKind::Map, lam);
    config.map_function = Some(MapFunction::LogGFOverZ);
    config.grid_angles = 180;
    config.out = Some(out.clone());
    commands::run(&config).unwrap();

    let points = parse_points_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let cap = lam * std::f64::consts::FRAC_PI_2 + 1e-9;
    for p in points {
        assert!(p.im.abs() <= cap, "arg {} exceeds {}", p.im, cap);
    }
}

#[test]
fn report_aggregates_runs_additively() {
    let dir = TempDir::new().unwrap();

    // empty input directory is a missing-artifacts error
    let mut config = RunConfig::new(CommandKind::Report, 1.0);
    config.input = Some(dir.path().to_path_buf());
    match commands::run(&config) {
        Err(CliError::MissingArtifacts { .. }) => {}
        other => panic!("expected MissingArtifacts, got {other:?}"),
    }

    let mut first = small_sweep(CommandKind::Verify, FamilyKind::G, 0.5);
    first.out = Some(dir.path().join("a.json"));
    commands::run(&first).unwrap();
    let mut second = small_sweep(CommandKind::Hankel, FamilyKind::StSs, 0.5);
    second.out = Some(dir.path().join("b.json"));
    commands::run(&second).unwrap();

    let summary_path = dir.path().join("summary.json");
    let mut config = RunConfig::new(CommandKind::Report, 1.0);
    config.input = Some(dir.path().to_path_buf());
    config.out = Some(summary_path.clone());
    let outcome = commands::run(&config).unwrap();
    assert_eq!(outcome, Outcome::Pass);

    let summary: SummaryReport =
        serde_json::from_str(&std::fs::read_to_string(&summary_path).unwrap()).unwrap();
    let a = read_run_report(&dir.path().join("a.json")).unwrap();
    let b = read_run_report(&dir.path().join("b.json")).unwrap();
    assert_eq!(summary.runs, 2);
    assert_eq!(summary.totals.checks, a.totals.checks + b.totals.checks);
    assert_eq!(summary.totals.passed, a.totals.passed + b.totals.passed);
    assert_eq!(summary.lambda, Some(0.5));
    assert_eq!(summary.family, None); // mixed families
    assert!(!summary.attainment_table.is_empty());
    for row in &summary.attainment_table {
        assert!(!row.check.is_empty() && !row.witness.is_empty());
    }
}

#[test]
fn tolerance_env_var_reaches_the_verdicts() {
    // an absurdly large pass tolerance lets even the negative control pass
    let dir = TempDir::new().unwrap();
    let out: PathBuf = dir.path().join("loose.json");
    let status = binary()
        .args([
            "hankel",
            "--lambda",
            "1",
            "--seeds",
            "2",
            "--include-negative-controls",
            "--out",
            out.to_str().unwrap(),
        ])
        .env("SPIRALLOG_TOLERANCE", "1e6")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report = read_run_report(&out).unwrap();
    assert_eq!(report.pass_tolerance, 1e6);
}

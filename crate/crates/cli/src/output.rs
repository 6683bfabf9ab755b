//! Report documents and file writers. JSON output is deterministic for a
//! fixed configuration apart from the `timestamp` field; CSV always uses a
//! `.` decimal separator and a mandatory header row.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use spirallog::BoundReport;

use crate::config::RunConfig;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridInfo {
    pub r_max: f64,
    pub angles_per_ring: usize,
    pub radii: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Totals {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub attained: usize,
}

impl Totals {
    pub fn absorb(&mut self, other: &Totals) {
        self.checks += other.checks;
        self.passed += other.passed;
        self.failed += other.failed;
        self.attained += other.attained;
    }
}

/// One command invocation's full output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub timestamp: u64,
    pub command: String,
    pub lambda: f64,
    pub family: Option<String>,
    pub seeds: usize,
    pub base_seed: u64,
    pub order: usize,
    pub grid: GridInfo,
    pub pass_tolerance: f64,
    pub reports: Vec<BoundReport>,
    pub totals: Totals,
    pub worst_margin: f64,
}

impl RunReport {
    pub fn assemble(config: &RunConfig, reports: Vec<BoundReport>) -> Result<Self, CliError> {
        let grid = config.grid()?;
        let totals = Totals {
            checks: reports.len(),
            passed: reports.iter().filter(|r| r.pass).count(),
            failed: reports.iter().filter(|r| !r.pass).count(),
            attained: reports.iter().filter(|r| r.attained).count(),
        };
        let worst_margin = reports
            .iter()
            .map(|r| r.aggregate.margin)
            .fold(f64::INFINITY, f64::min)
            .min(f64::MAX); // empty report lists stay finite
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            timestamp: unix_timestamp(),
            command: config.command.name().to_string(),
            lambda: config.lam,
            family: config.family.map(|f| f.name().to_string()),
            seeds: config.seeds,
            base_seed: config.base_seed,
            order: config.order,
            grid: GridInfo {
                r_max: grid.r_max(),
                angles_per_ring: grid.angles_per_ring(),
                radii: grid.radii().to_vec(),
            },
            pass_tolerance: config.tolerances.pass,
            reports,
            totals,
            worst_margin,
        })
    }

    pub fn all_passed(&self) -> bool {
        self.totals.failed == 0
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WorstMargin {
    pub check_name: String,
    pub witness: String,
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AttainmentRow {
    pub check: String,
    pub n: usize,
    pub witness: String,
}

/// Aggregation of several run reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryReport {
    pub schema_version: u32,
    pub timestamp: u64,
    pub runs: usize,
    /// Uniform value across runs, or null when runs are mixed.
    pub lambda: Option<f64>,
    pub family: Option<String>,
    pub totals: Totals,
    pub worst_margins: Vec<WorstMargin>,
    pub attainment_table: Vec<AttainmentRow>,
}

impl SummaryReport {
    pub fn aggregate(runs: &[RunReport], attain_tol: f64) -> Self {
        let mut totals = Totals::default();
        for run in runs {
            totals.absorb(&run.totals);
        }
        let lambda = uniform(runs.iter().map(|r| r.lambda));
        let family = uniform(runs.iter().map(|r| r.family.clone())).flatten();

        let mut worst: Vec<WorstMargin> = Vec::new();
        for run in runs {
            for report in &run.reports {
                match worst.iter_mut().find(|w| w.check_name == report.check_name) {
                    Some(w) if report.aggregate.margin < w.margin => {
                        w.margin = report.aggregate.margin;
                        w.witness = report.witness.clone();
                    }
                    Some(_) => {}
                    None => worst.push(WorstMargin {
                        check_name: report.check_name.clone(),
                        witness: report.witness.clone(),
                        margin: report.aggregate.margin,
                    }),
                }
            }
        }
        worst.sort_by(|a, b| a.margin.total_cmp(&b.margin));

        let mut attainment: Vec<AttainmentRow> = Vec::new();
        for run in runs {
            for report in &run.reports {
                if !report.attained {
                    continue;
                }
                for entry in &report.per_index {
                    if entry.margin.abs() <= attain_tol {
                        let row = AttainmentRow {
                            check: report.check_name.clone(),
                            n: entry.n,
                            witness: report.witness.clone(),
                        };
                        if !attainment.contains(&row) {
                            attainment.push(row);
                        }
                    }
                }
            }
        }
        attainment.sort_by(|a, b| (&a.check, a.n, &a.witness).cmp(&(&b.check, b.n, &b.witness)));

        Self {
            schema_version: SCHEMA_VERSION,
            timestamp: unix_timestamp(),
            runs: runs.len(),
            lambda,
            family,
            totals,
            worst_margins: worst,
            attainment_table: attainment,
        }
    }
}

fn uniform<T: PartialEq>(mut values: impl Iterator<Item = T>) -> Option<T> {
    let first = values.next()?;
    if values.all(|v| v == first) {
        Some(first)
    } else {
        None
    }
}

fn unix_timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn io_error(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        message: source.to_string(),
    }
}

/// Writes text to `out`, or to stdout when no path was given.
pub fn write_text(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent).map_err(|e| io_error(path, e))?;
                }
            }
            fs::write(path, text).map_err(|e| io_error(path, e))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| io_error(Path::new("<stdout>"), e))
        }
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Config(format!("serialization failed: {e}")))
}

/// `re,im` point-cloud CSV. Rust's float formatting is shortest-roundtrip,
/// so parsing the rows back recovers the exact values.
pub fn points_to_csv(points: &[Complex64]) -> String {
    let mut out = String::with_capacity(16 * points.len() + 8);
    out.push_str("re,im\n");
    for p in points {
        out.push_str(&format!("{},{}\n", p.re, p.im));
    }
    out
}

pub fn parse_points_csv(text: &str) -> Result<Vec<Complex64>, CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some("re,im") => {}
        other => {
            return Err(CliError::Config(format!(
                "expected 're,im' header, found {other:?}"
            )))
        }
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let mut parts = line.splitn(2, ',');
            let re = parts
                .next()
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| CliError::Config(format!("bad CSV row: {line}")))?;
            let im = parts
                .next()
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| CliError::Config(format!("bad CSV row: {line}")))?;
            Ok(Complex64::new(re, im))
        })
        .collect()
}

/// Flat CSV of every per-index entry of every report.
pub fn reports_to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from("check_name,witness,n,value,bound,margin,pass,attained\n");
    for report in reports {
        for entry in &report.per_index {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                report.check_name,
                report.witness,
                entry.n,
                entry.value,
                entry.bound,
                entry.margin,
                report.pass,
                report.attained
            ));
        }
    }
    out
}

pub fn read_run_report(path: &Path) -> Result<RunReport, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("cannot parse run report {}: {e}", path.display())))
}

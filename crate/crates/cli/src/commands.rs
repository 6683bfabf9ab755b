//! The seven CLI commands. Each returns the outcome used for the process
//! exit code: `Pass` (0) or `BoundViolated` (1); configuration and I/O
//! problems surface as `CliError` (2).

use std::fs;

use num_complex::Complex64;

use spirallog::spiral::{boundary_points, q_eval, SpiralParams};

use crate::config::{CommandKind, MapFunction, OutputFormat, RunConfig};
use crate::output::{
    points_to_csv, read_run_report, reports_to_csv, to_pretty_json, write_text, RunReport,
    SummaryReport,
};
use crate::sweep::{fs_sweep, gamma_sweep, hankel_sweep, verify_sweep};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    BoundViolated,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::BoundViolated => 1,
        }
    }
}

/// Validates and dispatches a run configuration.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    match config.command {
        CommandKind::Verify | CommandKind::Gamma | CommandKind::Hankel | CommandKind::Fs => {
            let reports = match config.command {
                CommandKind::Verify => verify_sweep(config)?,
                CommandKind::Gamma => gamma_sweep(config)?,
                CommandKind::Hankel => hankel_sweep(config)?,
                _ => fs_sweep(config)?,
            };
            let run_report = RunReport::assemble(config, reports)?;
            let text = match config.format {
                OutputFormat::Json => to_pretty_json(&run_report)?,
                OutputFormat::Csv => reports_to_csv(&run_report.reports),
            };
            write_text(config.out.as_ref(), &text)?;
            Ok(if run_report.all_passed() {
                Outcome::Pass
            } else {
                Outcome::BoundViolated
            })
        }
        CommandKind::Boundary => cmd_boundary(config),
        CommandKind::Map => cmd_map(config),
        CommandKind::Report => cmd_report(config),
    }
}

/// Spiral boundary samples followed by images of the grid rings under the
/// generator, as one `re,im` point cloud. The sample count is rounded up to
/// odd so the real-axis vertex `(2^lambda, 0)` appears exactly.
fn cmd_boundary(config: &RunConfig) -> Result<Outcome, CliError> {
    let params = SpiralParams::new(config.lam).map_err(|e| CliError::Config(e.to_string()))?;
    let count = if config.count.is_multiple_of(2) {
        config.count + 1
    } else {
        config.count
    };
    let mut points: Vec<Complex64> = boundary_points(params, count)
        .map_err(|e| CliError::Config(e.to_string()))?
        .into_iter()
        .map(|bp| bp.to_complex())
        .collect();
    for z in config.grid()?.points() {
        points.push(q_eval(params, z).expect("grid points lie inside the disk"));
    }
    write_text(config.out.as_ref(), &points_to_csv(&points))?;
    Ok(Outcome::Pass)
}

/// Closed-form evaluation of the selected map; exported points carry no
/// truncation error.
fn map_value(function: MapFunction, lam: f64, n: usize, z: Complex64) -> Complex64 {
    let one = Complex64::ONE;
    match function {
        MapFunction::Identity => z,
        MapFunction::QLambdaZn => (one + z.powu(n as u32)).powf(lam),
        MapFunction::NF => z * (one + z).powf(lam),
        MapFunction::GF => ((one + z).powf(1.0 + lam) - one) / (1.0 + lam),
        MapFunction::GFOverZ => (((one + z).powf(1.0 + lam) - one) / (1.0 + lam)) / z,
        MapFunction::LogGFOverZ => ((((one + z).powf(1.0 + lam) - one) / (1.0 + lam)) / z).ln(),
    }
}

/// Images of concentric circles and radial rays under the selected map.
fn cmd_map(config: &RunConfig) -> Result<Outcome, CliError> {
    let function = config.map_function.expect("validated");
    let grid = config.grid()?;
    let mut points = Vec::new();
    // circle images, innermost ring first
    for &r in grid.radii() {
        for z in grid.ring(r) {
            points.push(map_value(function, config.lam, config.n, z));
        }
    }
    // ray images: 24 rays, sampled densely up to the outer radius
    let rays = 24;
    let steps = 160;
    for ray in 0..rays {
        let theta = std::f64::consts::TAU * ray as f64 / rays as f64;
        for s in 1..=steps {
            let r = grid.r_max() * s as f64 / steps as f64;
            points.push(map_value(
                function,
                config.lam,
                config.n,
                Complex64::from_polar(r, theta),
            ));
        }
    }
    write_text(config.out.as_ref(), &points_to_csv(&points))?;
    Ok(Outcome::Pass)
}

/// Aggregates previously written run reports from a directory.
fn cmd_report(config: &RunConfig) -> Result<Outcome, CliError> {
    let dir = config.input.as_ref().expect("validated");
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(|e| CliError::Io {
            path: dir.display().to_string(),
            message: e.to_string(),
        })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::MissingArtifacts {
            path: dir.display().to_string(),
        });
    }
    let runs: Vec<RunReport> = paths
        .iter()
        .map(|p| read_run_report(p))
        .collect::<Result<_, _>>()?;
    let summary = SummaryReport::aggregate(&runs, config.tolerances.attain);
    let all_passed = summary.totals.failed == 0;
    write_text(config.out.as_ref(), &to_pretty_json(&summary)?)?;
    Ok(if all_passed {
        Outcome::Pass
    } else {
        Outcome::BoundViolated
    })
}

//! Run configuration: everything a command needs, validated up front so the
//! checkers never see out-of-range parameters.

use std::path::PathBuf;

use spirallog::tolerances::{DEFAULT_ANGLES, DEFAULT_ORDER, DEFAULT_R_MAX};
use spirallog::{EvaluationGrid, Tolerances};

use crate::CliError;

/// Pass-tolerance override knob honored by every command.
pub const TOLERANCE_ENV_VAR: &str = "SPIRALLOG_TOLERANCE";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Verify,
    Gamma,
    Hankel,
    Fs,
    Boundary,
    Map,
    Report,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Verify => "verify",
            CommandKind::Gamma => "gamma",
            CommandKind::Hankel => "hankel",
            CommandKind::Fs => "fs",
            CommandKind::Boundary => "boundary",
            CommandKind::Map => "map",
            CommandKind::Report => "report",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    StSs,
    G,
    N,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::StSs => "ST_SS",
            FamilyKind::G => "G",
            FamilyKind::N => "N",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Map selector for figure-data export. All maps are evaluated in closed
/// form, so the exported points carry no truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapFunction {
    Identity,
    QLambdaZn,
    NF,
    GF,
    GFOverZ,
    LogGFOverZ,
}

impl MapFunction {
    pub fn name(&self) -> &'static str {
        match self {
            MapFunction::Identity => "identity",
            MapFunction::QLambdaZn => "q_lambda_zn",
            MapFunction::NF => "N_F",
            MapFunction::GF => "G_F",
            MapFunction::GFOverZ => "G_F_over_z",
            MapFunction::LogGFOverZ => "log_G_F_over_z",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub lam: f64,
    pub family: Option<FamilyKind>,
    pub seeds: usize,
    pub base_seed: u64,
    pub order: usize,
    pub grid_r_max: f64,
    pub grid_angles: usize,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub include_negative_controls: bool,
    /// Boundary sample count (rounded up to odd so the vertex is sampled).
    pub count: usize,
    pub map_function: Option<MapFunction>,
    /// Monomial power for the `q_lambda_zn` selector.
    pub n: usize,
    /// Number of delta samples in a Fekete-Szego sweep.
    pub deltas: usize,
    pub input: Option<PathBuf>,
    pub tolerances: Tolerances,
}

impl RunConfig {
    pub fn new(command: CommandKind, lam: f64) -> Self {
        Self {
            command,
            lam,
            family: None,
            seeds: 100,
            base_seed: 1,
            order: DEFAULT_ORDER,
            grid_r_max: DEFAULT_R_MAX,
            grid_angles: DEFAULT_ANGLES,
            out: None,
            format: OutputFormat::Json,
            include_negative_controls: false,
            count: 1000,
            map_function: None,
            n: 1,
            deltas: 50,
            input: None,
            tolerances: tolerances_from_env(),
        }
    }

    pub fn grid(&self) -> Result<EvaluationGrid, CliError> {
        EvaluationGrid::with_r_max(self.grid_r_max, self.grid_angles)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    /// Checks every numeric field against the module preconditions before any
    /// command dispatch.
    pub fn validate(&self) -> Result<(), CliError> {
        let needs_lambda = !matches!(self.command, CommandKind::Report);
        if needs_lambda && !(self.lam > 0.0 && self.lam <= 1.0) {
            return Err(CliError::Config(format!(
                "lambda out of (0,1]: {}",
                self.lam
            )));
        }
        match self.command {
            CommandKind::Verify | CommandKind::Gamma => {
                if self.family.is_none() {
                    return Err(CliError::Config("--family is required".into()));
                }
                if self.command == CommandKind::Gamma && self.family == Some(FamilyKind::N) {
                    return Err(CliError::Config(
                        "gamma checks are defined for families ST_SS and G".into(),
                    ));
                }
            }
            CommandKind::Map => {
                if self.map_function.is_none() {
                    return Err(CliError::Config("--function is required".into()));
                }
                if self.n == 0 {
                    return Err(CliError::Config("--n must be at least 1".into()));
                }
            }
            CommandKind::Boundary => {
                if self.count < 2 {
                    return Err(CliError::Config("--count must be at least 2".into()));
                }
            }
            CommandKind::Report => {
                if self.input.is_none() {
                    return Err(CliError::Config("--input directory is required".into()));
                }
            }
            CommandKind::Fs => {
                if self.deltas < 3 {
                    return Err(CliError::Config("--deltas must be at least 3".into()));
                }
            }
            CommandKind::Hankel => {}
        }
        if matches!(
            self.command,
            CommandKind::Verify | CommandKind::Gamma | CommandKind::Hankel | CommandKind::Fs
        ) {
            if self.order < 16 {
                return Err(CliError::Config(format!(
                    "order must be at least 16, got {}",
                    self.order
                )));
            }
            if self.seeds == 0 {
                return Err(CliError::Config("--seeds must be positive".into()));
            }
        }
        if !(self.grid_r_max > 0.0 && self.grid_r_max < 1.0) {
            return Err(CliError::Config(format!(
                "grid r_max must lie in (0,1), got {}",
                self.grid_r_max
            )));
        }
        if self.grid_angles == 0 {
            return Err(CliError::Config("--grid-angles must be positive".into()));
        }
        if !self.tolerances.pass.is_finite() || self.tolerances.pass <= 0.0 {
            return Err(CliError::Config(format!(
                "pass tolerance must be positive, got {}",
                self.tolerances.pass
            )));
        }
        Ok(())
    }
}

/// Default tolerances, with the pass threshold overridden by
/// `SPIRALLOG_TOLERANCE` when set.
pub fn tolerances_from_env() -> Tolerances {
    match std::env::var(TOLERANCE_ENV_VAR) {
        Ok(raw) => match raw.parse::<f64>() {
            Ok(pass) => Tolerances::with_pass(pass),
            Err(_) => Tolerances::default(),
        },
        Err(_) => Tolerances::default(),
    }
}

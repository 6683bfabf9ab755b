use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spirallog_cli::commands;
use spirallog_cli::config::{
    tolerances_from_env, CommandKind, FamilyKind, MapFunction, OutputFormat, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "spirallog",
    version,
    about = "Verification campaigns for sinusoidal-spiral starlike families and their sharp coefficient bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full seeded verification sweep for one family
    Verify(SweepArgs),
    /// Logarithmic-coefficient bound checks (families ST_SS and G)
    Gamma(SweepArgs),
    /// Second Hankel determinant sweep over the spiral-starlike family
    Hankel(SweepArgs),
    /// Fekete-Szego functional sweep over a delta grid
    Fs(FsArgs),
    /// Export the spiral boundary and generator image as a CSV point cloud
    Boundary(BoundaryArgs),
    /// Export circle and ray images under a named map as CSV
    Map(MapArgs),
    /// Aggregate run reports from a directory into one summary
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "ST_SS", alias = "st_ss")]
    StSs,
    #[value(name = "G", alias = "g")]
    G,
    #[value(name = "N", alias = "n")]
    N,
}

impl From<FamilyArg> for FamilyKind {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::StSs => FamilyKind::StSs,
            FamilyArg::G => FamilyKind::G,
            FamilyArg::N => FamilyKind::N,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Identity,
    #[value(name = "q_lambda_zn")]
    QLambdaZn,
    #[value(name = "N_F", alias = "n_f")]
    NF,
    #[value(name = "G_F", alias = "g_f")]
    GF,
    #[value(name = "G_F_over_z", alias = "g_f_over_z")]
    GFOverZ,
    #[value(name = "log_G_F_over_z", alias = "log_g_f_over_z")]
    LogGFOverZ,
}

impl From<MapArg> for MapFunction {
    fn from(m: MapArg) -> Self {
        match m {
            MapArg::Identity => MapFunction::Identity,
            MapArg::QLambdaZn => MapFunction::QLambdaZn,
            MapArg::NF => MapFunction::NF,
            MapArg::GF => MapFunction::GF,
            MapArg::GFOverZ => MapFunction::GFOverZ,
            MapArg::LogGFOverZ => MapFunction::LogGFOverZ,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Shape parameter, in (0, 1]
    #[arg(long)]
    lambda: f64,
    /// Output path; omit to write to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Outer radius of the evaluation grid
    #[arg(long, default_value_t = 0.95)]
    grid_rmax: f64,
    /// Sample angles per grid ring
    #[arg(long, default_value_t = 720)]
    grid_angles: usize,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Function family to sweep
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Number of seeded members
    #[arg(long, default_value_t = 100)]
    seeds: usize,
    /// First seed of the sweep
    #[arg(long, default_value_t = 1)]
    base_seed: u64,
    /// Series truncation order
    #[arg(long, default_value_t = 64)]
    order: usize,
    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Also run the Koebe negative control (expected to fail, exit 1)
    #[arg(long)]
    include_negative_controls: bool,
}

#[derive(Args)]
struct FsArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Number of delta samples spanning all three bound branches
    #[arg(long, default_value_t = 50)]
    deltas: usize,
}

#[derive(Args)]
struct BoundaryArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Boundary sample count (rounded up to odd so the vertex is sampled)
    #[arg(long, default_value_t = 1000)]
    count: usize,
}

#[derive(Args)]
struct MapArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which map to export
    #[arg(long, value_enum)]
    function: MapArg,
    /// Monomial power for the q_lambda_zn selector
    #[arg(long, default_value_t = 1)]
    n: usize,
}

#[derive(Args)]
struct ReportArgs {
    /// Directory containing run-report JSON files
    #[arg(long)]
    input: PathBuf,
    /// Output path; omit to write to stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn apply_common(config: &mut RunConfig, common: &CommonArgs) {
    config.out = common.out.clone();
    config.grid_r_max = common.grid_rmax;
    config.grid_angles = common.grid_angles;
}

fn apply_sweep(config: &mut RunConfig, sweep: &SweepArgs) {
    apply_common(config, &sweep.common);
    config.family = sweep.family.map(FamilyKind::from);
    config.seeds = sweep.seeds;
    config.base_seed = sweep.base_seed;
    config.order = sweep.order;
    config.format = match sweep.format {
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Csv => OutputFormat::Csv,
    };
    config.include_negative_controls = sweep.include_negative_controls;
}

fn lower(cli: Cli) -> RunConfig {
    match cli.command {
        Command::Verify(args) => {
            let mut config = RunConfig::new(CommandKind::Verify, args.common.lambda);
            apply_sweep(&mut config, &args);
            config
        }
        Command::Gamma(args) => {
            let mut config = RunConfig::new(CommandKind::Gamma, args.common.lambda);
            apply_sweep(&mut config, &args);
            config
        }
        Command::Hankel(args) => {
            let mut config = RunConfig::new(CommandKind::Hankel, args.common.lambda);
            apply_sweep(&mut config, &args);
            config.family = Some(FamilyKind::StSs);
            config
        }
        Command::Fs(args) => {
            let mut config = RunConfig::new(CommandKind::Fs, args.sweep.common.lambda);
            apply_sweep(&mut config, &args.sweep);
            config.family = Some(FamilyKind::StSs);
            config.deltas = args.deltas;
            config
        }
        Command::Boundary(args) => {
            let mut config = RunConfig::new(CommandKind::Boundary, args.common.lambda);
            apply_common(&mut config, &args.common);
            config.count = args.count;
            config
        }
        Command::Map(args) => {
            let mut config = RunConfig::new(CommandKind::Map, args.common.lambda);
            apply_common(&mut config, &args.common);
            config.map_function = Some(args.function.into());
            config.n = args.n;
            config
        }
        Command::Report(args) => {
            let mut config = RunConfig::new(CommandKind::Report, 1.0);
            config.input = Some(args.input);
            config.out = args.out;
            config
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = lower(cli);
    config.tolerances = tolerances_from_env();
    match commands::run(&config) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

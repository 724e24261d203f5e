//! Command-line interface.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fuzzyvar_core::aggregation::{
    average_power, concave_envelope, lln_sequence, median_power, nfk_binary, shift_by_crisp,
    unary_image, EnvelopePolicy,
};
use fuzzyvar_core::estimation::{dn_statistic, estimate_profile};
use fuzzyvar_core::profile::from_cdf;
use fuzzyvar_core::simulation::run_experiment;
use fuzzyvar_core::{
    AlphaGrid, AlphaProfile, BinaryOp, EstimatorConfig, Exactness, LlnSpec, Monotonicity, Statistic,
};

use crate::config::{self, EstimateSidecar, ExperimentFile, SimulationReport};
use crate::error::{CliError, CliResult};
use crate::formats;

#[derive(Debug, Parser)]
#[command(
    name = "fuzzyvar",
    version,
    about = "Fuzzy-interval numerics: aggregation, LLN diagnostics, estimation and simulation"
)]
pub struct Cli {
    /// Number of α levels for profiles built by the tool.
    #[arg(long, global = true, default_value_t = AlphaGrid::DEFAULT_LEVELS)]
    pub grid: usize,

    /// More log output (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate a membership function from a sample.
    Estimate(EstimateArgs),
    /// Run a seeded simulate-estimate-compare experiment.
    Simulate(SimulateArgs),
    /// Apply an aggregation operation to a profile.
    Aggregate(AggregateArgs),
    /// Law-of-large-numbers sequence of medians or averages.
    Lln(LlnArgs),
    /// Sup-distance between two profiles over levels in [ε, 1].
    Distance(DistanceArgs),
    /// Possibility profile of a quantile table.
    Transform(TransformArgs),
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Plain text (one value per line) or CSV with an `x` column.
    pub samples: PathBuf,
    #[arg(long, default_value = "product")]
    pub tnorm: String,
    #[arg(long, default_value_t = EstimatorConfig::DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Reference profile (file or `triangular:lo,mode,hi`) for D_n.
    #[arg(long)]
    pub truth: Option<String>,
    /// Profile output (.csv or .json).
    #[arg(short, long)]
    pub output: PathBuf,
    /// Metadata output; defaults to the profile path with a .json extension.
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Experiment config JSON.
    pub config: PathBuf,
    /// Report JSON output.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Overrides the seed in the config.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Writes the first trial's estimate for each n into this directory.
    #[arg(long)]
    pub profiles_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AggregateOp {
    Median,
    Average,
    Shift,
    Envelope,
    Image,
    Combine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BinaryKind {
    Add,
    Sub,
    Average,
    Min,
    Max,
}

#[derive(Debug, Args)]
pub struct AggregateArgs {
    /// Profile file or `triangular:lo,mode,hi`.
    pub profile: String,
    #[arg(long)]
    pub op: AggregateOp,
    /// Number of variables for median and average.
    #[arg(short, long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value = "product")]
    pub tnorm: String,
    /// Crisp interval `lo,hi` for shift.
    #[arg(long)]
    pub by: Option<String>,
    /// Map for image: exp, neg, scale:<c> or add:<c>.
    #[arg(long)]
    pub map: Option<String>,
    /// Second operand for combine.
    #[arg(long)]
    pub other: Option<String>,
    /// Operation for combine.
    #[arg(long, value_enum, default_value_t = BinaryKind::Add)]
    pub binary: BinaryKind,
    /// Average a non-concave profile through its concave envelope.
    #[arg(long)]
    pub envelope: bool,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatisticArg {
    Median,
    Average,
}

#[derive(Debug, Args)]
pub struct LlnArgs {
    /// Profile file or `triangular:lo,mode,hi`.
    pub profile: String,
    #[arg(long, value_enum, default_value_t = StatisticArg::Median)]
    pub statistic: StatisticArg,
    #[arg(long, default_value = "product")]
    pub tnorm: String,
    #[arg(long, default_value_t = 200)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Ball radius around the modal interval for the measure margin.
    #[arg(long, default_value_t = 0.1)]
    pub radius: f64,
    /// Report JSON output.
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long)]
    pub profiles_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    pub a: String,
    pub b: String,
    #[arg(long, default_value_t = EstimatorConfig::DEFAULT_EPSILON)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// CSV with header `p,x`.
    pub table: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let grid = config::grid(cli.grid)?;
    match &cli.command {
        Command::Estimate(args) => estimate(args, &grid),
        Command::Simulate(args) => simulate(args, cli.grid),
        Command::Aggregate(args) => aggregate(args, &grid),
        Command::Lln(args) => lln(args, &grid),
        Command::Distance(args) => distance(args, &grid),
        Command::Transform(args) => transform(args, &grid),
    }
}

fn estimate(args: &EstimateArgs, grid: &AlphaGrid) -> CliResult<()> {
    let kind = config::parse_tnorm(&args.tnorm)?;
    let truth = args
        .truth
        .as_deref()
        .map(|t| config::load_profile(t, grid, None))
        .transpose()?;
    let grid = truth.as_ref().map_or(grid, |t| t.grid()).clone();
    let cfg = EstimatorConfig::new(kind)?
        .with_grid(grid)
        .with_epsilon(args.epsilon)?;
    let sample = formats::read_sample(&args.samples)?;
    let mut result = estimate_profile(&sample, &cfg)?;
    if let Some(truth) = &truth {
        let dn = dn_statistic(&result, truth, cfg.epsilon())?;
        result.dn = Some(dn);
        println!("D_n = {dn}");
    }
    formats::write_profile(&args.output, &result.profile)?;
    let meta = args
        .meta
        .clone()
        .unwrap_or_else(|| args.output.with_extension("json"));
    if meta == args.output {
        return Err(CliError::Config(
            "--meta must differ from the profile output".into(),
        ));
    }
    let sidecar = EstimateSidecar::new(sample.len(), &cfg, &result);
    formats::write_text(&meta, &config::to_json(&sidecar))
}

fn write_profiles(dir: &Path, profiles: &[(usize, &AlphaProfile)]) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    for (n, p) in profiles {
        formats::write_profile(&dir.join(format!("profile_n{n}.csv")), p)?;
    }
    Ok(())
}

fn simulate(args: &SimulateArgs, grid_levels: usize) -> CliResult<()> {
    let text = formats::read_text(&args.config).map_err(|e| match e {
        CliError::Io { .. } => CliError::Config(e.to_string()),
        other => other,
    })?;
    let mut file = ExperimentFile::from_json(&text)?;
    if let Some(seed) = args.seed {
        file.seed = seed;
    }
    let cfg = file.resolve(grid_levels, args.config.parent())?;
    let outcome = run_experiment(&cfg)?;
    for (row, modal) in outcome.report.rows.iter().zip(&outcome.modal_distances) {
        println!(
            "n = {:>8}  median D_n = {:.6}  max D_n = {:.6}  modal = {:.6}",
            row.n, row.median, row.max, modal
        );
    }
    formats::write_text(
        &args.output,
        &config::to_json(&SimulationReport::new(&cfg, &outcome)),
    )?;
    if let Some(dir) = &args.profiles_dir {
        let profiles: Vec<_> = outcome.profiles.iter().map(|(n, p)| (*n, p)).collect();
        write_profiles(dir, &profiles)?;
    }
    Ok(())
}

type RealMap = Box<dyn Fn(f64) -> f64>;

fn parse_map(spec: &str) -> CliResult<(RealMap, Monotonicity)> {
    let number = |v: &str| {
        v.parse::<f64>()
            .ok()
            .filter(|c| c.is_finite())
            .ok_or_else(|| CliError::Config(format!("--map {spec}: bad constant")))
    };
    Ok(match spec.split_once(':') {
        None if spec == "exp" => (Box::new(f64::exp), Monotonicity::Increasing),
        None if spec == "neg" => (Box::new(|x: f64| -x), Monotonicity::Decreasing),
        Some(("scale", c)) => {
            let c = number(c)?;
            let direction = if c >= 0.0 {
                Monotonicity::Increasing
            } else {
                Monotonicity::Decreasing
            };
            (Box::new(move |x| c * x), direction)
        }
        Some(("add", c)) => {
            let c = number(c)?;
            (Box::new(move |x| x + c), Monotonicity::Increasing)
        }
        _ => {
            return Err(CliError::Config(format!(
                "--map {spec}: expected exp, neg, scale:<c> or add:<c>"
            )))
        }
    })
}

fn aggregate(args: &AggregateArgs, grid: &AlphaGrid) -> CliResult<()> {
    let a = config::load_profile(&args.profile, grid, None)?;
    let kind = || config::parse_tnorm(&args.tnorm);
    let missing =
        |flag: &str| CliError::Config(format!("--op {:?} needs {flag}", args.op).to_lowercase());
    let (profile, exactness) = match args.op {
        AggregateOp::Median => {
            let agg = median_power(&a, args.n, &kind()?)?;
            (agg.profile, agg.exactness)
        }
        AggregateOp::Average => {
            let policy = if args.envelope {
                EnvelopePolicy::Envelope
            } else {
                EnvelopePolicy::Reject
            };
            let agg = average_power(&a, args.n, &kind()?, policy)?;
            (agg.profile, agg.exactness)
        }
        AggregateOp::Shift => {
            let by = config::parse_interval(args.by.as_deref().ok_or_else(|| missing("--by"))?)?;
            (shift_by_crisp(&a, by)?, Exactness::Exact)
        }
        AggregateOp::Envelope => (concave_envelope(&a)?, Exactness::Exact),
        AggregateOp::Image => {
            let (f, direction) = parse_map(args.map.as_deref().ok_or_else(|| missing("--map"))?)?;
            (unary_image(&a, f, direction)?, Exactness::Exact)
        }
        AggregateOp::Combine => {
            let other = args.other.as_deref().ok_or_else(|| missing("--other"))?;
            let b = config::load_profile(other, a.grid(), None)?;
            let op = match args.binary {
                BinaryKind::Add => BinaryOp::add(),
                BinaryKind::Sub => BinaryOp::sub(),
                BinaryKind::Average => BinaryOp::average(),
                BinaryKind::Min => BinaryOp::min(),
                BinaryKind::Max => BinaryOp::max(),
            };
            (nfk_binary(&op, &a, &b, &kind()?)?, Exactness::Exact)
        }
    };
    match exactness {
        Exactness::Exact => {}
        Exactness::Postulated => log::warn!("even-n median uses the postulated closed form"),
        Exactness::UpperBound => log::warn!("profile is not concave; result is an upper bound"),
    }
    formats::write_profile(&args.output, &profile)
}

fn lln(args: &LlnArgs, grid: &AlphaGrid) -> CliResult<()> {
    let base = config::load_profile(&args.profile, grid, None)?;
    let statistic = match args.statistic {
        StatisticArg::Median => Statistic::Median,
        StatisticArg::Average => Statistic::Average,
    };
    if !(args.epsilon > 0.0 && args.epsilon <= 1.0) || !(args.radius > 0.0) {
        return Err(CliError::Config(
            "--epsilon must lie in (0, 1] and --radius be positive".into(),
        ));
    }
    let spec = LlnSpec {
        epsilon: args.epsilon,
        radius: args.radius,
        ..LlnSpec::new(
            base,
            statistic,
            config::parse_tnorm(&args.tnorm)?,
            args.n_max,
        )
    };
    let (profiles, report) = lln_sequence(&spec)?;
    if let Some(last) = report.rows.last() {
        println!("n = {}  sup-distance = {}", last.n, last.median);
    }
    formats::write_text(&args.output, &config::to_json(&report))?;
    if let Some(dir) = &args.profiles_dir {
        let indexed: Vec<_> = profiles
            .iter()
            .enumerate()
            .map(|(i, p)| (i + 1, p))
            .collect();
        write_profiles(dir, &indexed)?;
    }
    Ok(())
}

fn distance(args: &DistanceArgs, grid: &AlphaGrid) -> CliResult<()> {
    let a = config::load_profile(&args.a, grid, None)?;
    let b = config::load_profile(&args.b, grid, None)?;
    println!("{}", a.sup_distance(&b, args.epsilon)?);
    Ok(())
}

fn transform(args: &TransformArgs, grid: &AlphaGrid) -> CliResult<()> {
    let table = formats::read_quantile_table(&args.table)?;
    let profile = from_cdf(|p| table.quantile(p), grid.clone())
        .map_err(|e| CliError::in_file(&args.table, e))?;
    formats::write_profile(&args.output, profile.profile())
}

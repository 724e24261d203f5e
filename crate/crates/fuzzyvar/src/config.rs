//! Experiment configuration and JSON outputs.

use std::path::{Path, PathBuf};

use fuzzyvar_core::simulation::ExperimentOutcome;
use fuzzyvar_core::{
    AlphaGrid, AlphaProfile, ConvergenceReport, EstimationResult, EstimatorConfig,
    ExperimentConfig, FuzzyNumber, IndexPair, Interval, TNormKind,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::formats;

pub fn parse_tnorm(text: &str) -> CliResult<TNormKind> {
    text.parse()
        .map_err(|e| CliError::Config(format!("t-norm `{text}`: {e}")))
}

pub fn grid(levels: usize) -> CliResult<AlphaGrid> {
    AlphaGrid::uniform(levels, AlphaGrid::DEFAULT_MIN)
        .map_err(|e| CliError::Config(format!("--grid {levels}: {e}")))
}

fn parse_numbers<const N: usize>(text: &str, what: &str) -> CliResult<[f64; N]> {
    let values: Vec<f64> = text
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Config(format!("{what}: `{text}` is not a list of numbers")))?;
    values
        .try_into()
        .map_err(|_| CliError::Config(format!("{what}: expected {N} comma-separated numbers")))
}

/// `lo,hi` as a crisp interval.
pub fn parse_interval(text: &str) -> CliResult<Interval> {
    let [lo, hi] = parse_numbers::<2>(text, "interval")?;
    Interval::new(lo, hi).map_err(CliError::from)
}

fn spec_error(err: fuzzyvar_core::Error) -> CliError {
    CliError::Config(err.to_string())
}

/// `triangular:<lo>,<mode>,<hi>`, `trapezoidal:<a>,<b>,<c>,<d>`, or a
/// profile file (relative paths resolve against `base`).
pub fn load_profile(spec: &str, grid: &AlphaGrid, base: Option<&Path>) -> CliResult<AlphaProfile> {
    if let Some(args) = spec.strip_prefix("triangular:") {
        let [a, m, b] = parse_numbers::<3>(args, "triangular")?;
        return AlphaProfile::triangular(grid.clone(), a, m, b).map_err(spec_error);
    }
    if let Some(args) = spec.strip_prefix("trapezoidal:") {
        let [a, b, c, d] = parse_numbers::<4>(args, "trapezoidal")?;
        return AlphaProfile::trapezoidal(grid.clone(), a, b, c, d).map_err(spec_error);
    }
    let path = match base {
        Some(dir) if Path::new(spec).is_relative() => dir.join(spec),
        _ => PathBuf::from(spec),
    };
    formats::read_profile(&path)
}

fn default_tnorm() -> String {
    "product".into()
}

/// Experiment file: `{truth, tnorm, schedule, trials, seed, epsilon}` plus
/// optional `grid` (level count) and `offset` (`[lo, hi]`).
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    pub truth: String,
    #[serde(default = "default_tnorm")]
    pub tnorm: String,
    pub schedule: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub grid: Option<usize>,
    #[serde(default)]
    pub offset: Option<[f64; 2]>,
}

impl ExperimentFile {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("experiment config: {e}")))
    }

    /// Builds the run; `grid_levels` applies when the file sets no grid.
    pub fn resolve(&self, grid_levels: usize, base: Option<&Path>) -> CliResult<ExperimentConfig> {
        let grid = grid(self.grid.unwrap_or(grid_levels))?;
        let truth = load_profile(&self.truth, &grid, base)?;
        let truth = FuzzyNumber::try_from(truth)?;
        let mut estimator =
            EstimatorConfig::new(parse_tnorm(&self.tnorm)?)?.with_grid(truth.grid().clone());
        if let Some(eps) = self.epsilon {
            estimator = estimator.with_epsilon(eps)?;
        }
        let offset = self
            .offset
            .map(|[lo, hi]| Interval::new(lo, hi))
            .transpose()?;
        let cfg = ExperimentConfig {
            truth,
            estimator,
            schedule: self.schedule.clone(),
            trials: self.trials,
            seed: self.seed,
            offset,
        };
        cfg.validate().map_err(|e| match e {
            fuzzyvar_core::Error::InvalidProfile(msg) => {
                CliError::Data(format!("truth profile: {msg}"))
            }
            other => CliError::Config(other.to_string()),
        })?;
        Ok(cfg)
    }
}

/// Simulation report: the convergence table plus run settings.
#[derive(Serialize)]
pub struct SimulationReport<'a> {
    pub tnorm: String,
    pub seed: u64,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<[f64; 2]>,
    #[serde(flatten)]
    pub report: &'a ConvergenceReport,
    /// Median modal-cut distance to the target per schedule entry.
    pub modal_distances: &'a [f64],
}

impl<'a> SimulationReport<'a> {
    pub fn new(cfg: &ExperimentConfig, outcome: &'a ExperimentOutcome) -> Self {
        SimulationReport {
            tnorm: cfg.estimator.kind().to_string(),
            seed: cfg.seed,
            trials: cfg.trials,
            offset: cfg.offset.map(|y| [y.lo(), y.hi()]),
            report: &outcome.report,
            modal_distances: &outcome.modal_distances,
        }
    }
}

/// Metadata written next to an estimated profile.
#[derive(Serialize)]
pub struct EstimateSidecar<'a> {
    pub n: usize,
    pub tnorm: String,
    pub epsilon: f64,
    pub grid_levels: usize,
    pub bias: &'a [f64],
    pub indices: &'a [IndexPair],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dn: Option<f64>,
}

impl<'a> EstimateSidecar<'a> {
    pub fn new(n: usize, cfg: &EstimatorConfig, result: &'a EstimationResult) -> Self {
        EstimateSidecar {
            n,
            tnorm: cfg.kind().to_string(),
            epsilon: cfg.epsilon(),
            grid_levels: cfg.grid.len(),
            bias: &result.bias,
            indices: &result.indices,
            dn: result.dn,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report values serialize");
    text.push('\n');
    text
}

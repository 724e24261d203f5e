//! Realizations of fuzzy-number variables and simulate-estimate-compare runs.
//!
//! A realization is `ψ(U)` where `U` is uniform on `[0, 2]` and `ψ` inverts
//! the left slope on `[0, 1]` and the right slope, mirrored, on `(1, 2]`.
//! With uniform `U` the realizations have `P(X ≤ lo(α)) = α/2`, the same
//! calibration `from_cdf` uses, so estimating from them recovers the truth.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aggregation::shift_by_crisp;
use crate::error::{Error, Result};
use crate::estimation::{dn_statistic, estimate_interval_profile, EstimatorConfig, Sample};
use crate::interval::Interval;
use crate::profile::{AlphaProfile, FuzzyNumber};
use crate::report::{median, ConvergenceReport, ConvergenceRow};

/// Slope inverse: `lo(u)` for `u <= 1`, `hi(2 - u)` above; levels below the
/// grid floor map to the support endpoints.
pub fn psi_map(truth: &FuzzyNumber, u: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&u) {
        return Err(Error::domain("psi argument", u));
    }
    Ok(psi_unchecked(truth, u))
}

fn psi_unchecked(truth: &FuzzyNumber, u: f64) -> f64 {
    if u <= 1.0 {
        truth.cut_clamped(u).lo()
    } else {
        truth.cut_clamped(2.0 - u).hi()
    }
}

#[derive(Clone, Debug)]
pub struct RealizationSpec {
    truth: FuzzyNumber,
    pub count: usize,
    pub seed: u64,
}

impl RealizationSpec {
    /// Requires strictly monotone slopes so that `ψ` is a true inverse.
    pub fn new(truth: FuzzyNumber, count: usize, seed: u64) -> Result<Self> {
        if !truth.is_continuous() {
            return Err(Error::InvalidProfile(
                "realizations need strictly monotone slopes".into(),
            ));
        }
        if count == 0 {
            return Err(Error::Config("realization count must be positive".into()));
        }
        Ok(RealizationSpec { truth, count, seed })
    }

    pub fn truth(&self) -> &FuzzyNumber {
        &self.truth
    }
}

/// `count` draws of `ψ(U)` from a caller-owned generator.
pub fn draw_with<R: Rng + ?Sized>(truth: &FuzzyNumber, count: usize, rng: &mut R) -> Vec<f64> {
    (0..count)
        .map(|_| psi_unchecked(truth, rng.random_range(0.0..=2.0)))
        .collect()
}

/// Seeded draws; identical specs give identical samples.
pub fn draw_realizations(spec: &RealizationSpec) -> Result<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Sample::new(draw_with(&spec.truth, spec.count, &mut rng))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one trial, independent of the order in which trials run.
pub fn trial_seed(master: u64, n: usize, trial: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ n as u64) ^ trial as u64)
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub truth: FuzzyNumber,
    pub estimator: EstimatorConfig,
    /// Strictly ascending sample sizes, each at least 2.
    pub schedule: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Crisp interval added to every realization, giving interval-valued
    /// observations `[x + lo, x + hi]`.
    pub offset: Option<Interval>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.schedule.is_empty() {
            return Err(Error::Config("empty schedule".into()));
        }
        if self.schedule[0] < 2 {
            return Err(Error::Config("sample sizes must be at least 2".into()));
        }
        if self.schedule.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("schedule must be strictly ascending".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        if self.truth.grid() != &self.estimator.grid {
            return Err(Error::GridMismatch);
        }
        RealizationSpec::new(self.truth.clone(), 1, self.seed).map(|_| ())
    }

    /// The profile the estimates should converge to.
    pub fn target(&self) -> Result<AlphaProfile> {
        match self.offset {
            None => Ok(self.truth.profile().clone()),
            Some(y) => shift_by_crisp(self.truth.profile(), y),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentOutcome {
    pub report: ConvergenceReport,
    /// Modal-cut Hausdorff distance to the target, one median per schedule
    /// entry.
    pub modal_distances: Vec<f64>,
    /// The trial-0 estimate at each sample size.
    pub profiles: Vec<(usize, AlphaProfile)>,
}

/// Draws, estimates and measures `D_n` for every sample size and trial.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    let target = cfg.target()?;
    let offset = cfg.offset.unwrap_or(Interval::new_unchecked(0.0, 0.0));
    let epsilon = cfg.estimator.epsilon();
    let mut rows = Vec::with_capacity(cfg.schedule.len());
    let mut modal_distances = Vec::with_capacity(cfg.schedule.len());
    let mut profiles = Vec::with_capacity(cfg.schedule.len());
    for &n in &cfg.schedule {
        let mut dn = Vec::with_capacity(cfg.trials);
        let mut modal = Vec::with_capacity(cfg.trials);
        for trial in 0..cfg.trials {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, n, trial));
            let draws = draw_with(&cfg.truth, n, &mut rng);
            let lower = Sample::new(draws.iter().map(|x| x + offset.lo()).collect())?;
            let upper = Sample::new(draws.iter().map(|x| x + offset.hi()).collect())?;
            let result = estimate_interval_profile(&lower, &upper, &cfg.estimator)?;
            dn.push(dn_statistic(&result, &target, epsilon)?);
            modal.push(result.profile.modal().hausdorff(&target.modal()));
            if trial == 0 {
                profiles.push((n, result.profile));
            }
        }
        log::debug!("n = {n}: median D_n = {}", median(&dn));
        modal_distances.push(median(&modal));
        rows.push(ConvergenceRow::new(n, dn));
    }
    let label = format!(
        "estimation, {} trials, {}",
        cfg.trials,
        cfg.estimator.kind()
    );
    let report = ConvergenceReport::new(label, epsilon, cfg.estimator.grid.len(), rows);
    Ok(ExperimentOutcome {
        report,
        modal_distances,
        profiles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{from_cdf, AlphaGrid};
    use crate::tnorm::TNormKind;
    use alloc::vec;

    fn unit() -> FuzzyNumber {
        FuzzyNumber::triangular(AlphaGrid::default(), -1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn psi_examples() {
        let t = unit();
        for u in [0.25, 0.5, 0.999, 1.0, 1.3, 1.75, 1.998] {
            assert!(
                libm::fabs(psi_map(&t, u).unwrap() - (u - 1.0)) < 1e-12,
                "u = {u}"
            );
        }
        assert_eq!(psi_map(&t, 1.0).unwrap(), t.mode());
        assert_eq!(psi_map(&t, 0.0).unwrap(), t.support().lo());
        assert_eq!(psi_map(&t, 2.0).unwrap(), t.support().hi());
        assert!(psi_map(&t, -0.1).is_err());
        assert!(psi_map(&t, 2.1).is_err());
    }

    #[test]
    fn draws_are_deterministic() {
        let spec = RealizationSpec::new(unit(), 500, 42).unwrap();
        assert_eq!(
            draw_realizations(&spec).unwrap(),
            draw_realizations(&spec).unwrap()
        );
        let other = RealizationSpec::new(unit(), 500, 43).unwrap();
        assert_ne!(
            draw_realizations(&spec).unwrap(),
            draw_realizations(&other).unwrap()
        );
    }

    #[test]
    fn degenerate_truth_draws_near_mode() {
        let t = FuzzyNumber::triangular(AlphaGrid::default(), 3.0 - 1e-9, 3.0, 3.0 + 1e-9).unwrap();
        let s = draw_realizations(&RealizationSpec::new(t, 100, 1).unwrap()).unwrap();
        assert!(s.values().iter().all(|x| libm::fabs(x - 3.0) < 1e-8));
    }

    #[test]
    fn flat_slopes_are_rejected() {
        let p = AlphaProfile::trapezoidal(AlphaGrid::default(), -1.0, 0.0, 0.0, 0.0).unwrap();
        let t = FuzzyNumber::try_from(p).unwrap();
        assert!(RealizationSpec::new(t, 10, 0).is_err());
    }

    #[test]
    fn uniform_draws_reconverge_through_quantiles() {
        let spec = RealizationSpec::new(unit(), 20_000, 7).unwrap();
        let s = draw_realizations(&spec).unwrap();
        let n = s.len();
        // empirical quantile of the draws, fed through the transform
        let q = |p: f64| s.values()[((p * n as f64) as usize).min(n - 1)];
        let back = from_cdf(q, AlphaGrid::uniform(101, 0.05).unwrap()).unwrap();
        let truth = AlphaProfile::triangular(back.grid().clone(), -1.0, 0.0, 1.0).unwrap();
        assert!(back.sup_distance(&truth, 0.05).unwrap() < 0.05);
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds = [
            trial_seed(1, 100, 0),
            trial_seed(1, 100, 1),
            trial_seed(1, 1000, 0),
            trial_seed(2, 100, 0),
        ];
        for i in 0..seeds.len() {
            for j in i + 1..seeds.len() {
                assert_ne!(seeds[i], seeds[j]);
            }
        }
    }

    #[test]
    fn config_validation() {
        let base = ExperimentConfig {
            truth: unit(),
            estimator: EstimatorConfig::new(TNormKind::Product).unwrap(),
            schedule: vec![10, 100],
            trials: 2,
            seed: 0,
            offset: None,
        };
        assert!(base.validate().is_ok());
        let mut bad = base.clone();
        bad.schedule = vec![100, 10];
        assert!(bad.validate().is_err());
        bad.schedule = vec![1, 10];
        assert!(bad.validate().is_err());
        let mut zero = base.clone();
        zero.trials = 0;
        assert!(zero.validate().is_err());
    }

    #[test]
    fn small_experiment_is_reproducible() {
        let cfg = ExperimentConfig {
            truth: unit(),
            estimator: EstimatorConfig::new(TNormKind::Product)
                .unwrap()
                .with_epsilon(0.1)
                .unwrap(),
            schedule: vec![8, 100, 1000],
            trials: 5,
            seed: 11,
            offset: None,
        };
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a.report, b.report);
        assert_eq!(a.profiles.len(), 3);
        assert_eq!(a.profiles[0].0, 8);
        assert!(a.report.rows.iter().all(|r| r.distances.len() == 5));
        assert!(a.report.rows[2].median < a.report.rows[0].median);
    }
}

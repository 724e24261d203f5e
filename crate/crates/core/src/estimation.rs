//! Membership-function estimation from order statistics.
//!
//! For a sample of size `n` and a level α the cut estimate is the pair of
//! order statistics `[X_{k:n}, X_{u:n}]`, where the indices come from an
//! [`IndexRule`]. Under the parity rule with multiplicative generator `h`:
//!
//! - even `n`: `k = ⌈n h(α)/2⌉`, `u = n - ⌊n h(α)/2⌋`;
//! - odd `n`: the same with `n + 1` in place of `n` inside the brackets.
//!
//! `k` is clamped to `1..=⌈n/2⌉`; when `k > u` both indices collapse to `k`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::profile::{AlphaGrid, AlphaProfile};
use crate::tnorm::{NormalTriple, TNormKind};

/// `n h / 2` values this close to an integer are treated as that integer, so
/// levels such as `h = 0.3, n = 10` do not pick up an extra index from
/// rounding.
const INDEX_SNAP: f64 = 1e-9;

/// Observations sorted ascending, with 1-based order statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty("sample"));
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain("sample value", bad));
        }
        values.sort_by(f64::total_cmp);
        Ok(Sample { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `X_{k:n}`, the `k`-th smallest value for `1 <= k <= n`.
    pub fn order_stat(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.len() {
            return Err(Error::Config(format!(
                "order statistic {k} is outside 1..={}",
                self.len()
            )));
        }
        Ok(self.values[k - 1])
    }

    /// `a x + c` for every value; order is preserved for `a > 0`.
    pub fn affine(&self, a: f64, c: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::domain("affine scale", a));
        }
        Self::new(self.values.iter().map(|x| a * x + c).collect())
    }
}

/// Lower and upper 1-based order-statistic indices of one cut estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IndexPair {
    pub lower: usize,
    pub upper: usize,
}

impl IndexPair {
    /// Clamps `lower` to `1..=⌈n/2⌉` and collapses inverted pairs onto it.
    fn settle(n: usize, lower: usize, upper: usize) -> Self {
        let lower = lower.clamp(1, n.div_ceil(2));
        let upper = upper.min(n);
        if lower > upper {
            IndexPair {
                lower,
                upper: lower,
            }
        } else {
            IndexPair { lower, upper }
        }
    }

    /// `b = 2k/n - h`.
    pub fn bias(&self, n: usize, h: f64) -> f64 {
        2.0 * self.lower as f64 / n as f64 - h
    }
}

fn snapped(t: f64) -> f64 {
    let r = libm::round(t);
    if libm::fabs(t - r) <= INDEX_SNAP {
        r
    } else {
        t
    }
}

/// Parity-rule indices for sample size `n` at generator value `h = h(α)`.
pub fn parity_indices(n: usize, h: f64) -> IndexPair {
    let m = if n.is_multiple_of(2) { n } else { n + 1 };
    let t = snapped(m as f64 * h / 2.0);
    let k = libm::ceil(t) as usize;
    let drop = libm::floor(t) as usize;
    IndexPair::settle(n, k, n.saturating_sub(drop))
}

type KFn = Arc<dyn Fn(usize, f64) -> usize + Send + Sync>;

/// How cut indices depend on the sample size and level.
#[derive(Clone, Default)]
pub enum IndexRule {
    /// The parity formulas above.
    #[default]
    Parity,
    /// A caller-supplied `k(n, α)` used as `[X_k, X_{n-k}]`.
    Symmetric(KFn),
}

impl IndexRule {
    pub fn symmetric<F>(k: F) -> Self
    where
        F: Fn(usize, f64) -> usize + Send + Sync + 'static,
    {
        IndexRule::Symmetric(Arc::new(k))
    }

    pub fn pair(&self, n: usize, alpha: f64, triple: &NormalTriple) -> IndexPair {
        match self {
            IndexRule::Parity => parity_indices(n, triple.h(alpha)),
            IndexRule::Symmetric(k) => {
                let k = k(n, alpha);
                IndexPair::settle(n, k, n.saturating_sub(k))
            }
        }
    }

    /// Checks the raw rule on `grid` for sample size `n`: `k` must lie in
    /// `1..=⌈n/2⌉` and be non-decreasing in α.
    ///
    /// Vanishing bias is an asymptotic property and is not checked here.
    pub fn validate(&self, n: usize, grid: &AlphaGrid) -> Result<()> {
        let IndexRule::Symmetric(k) = self else {
            return Ok(());
        };
        let top = n.div_ceil(2);
        let mut prev = 0;
        for &alpha in grid.levels() {
            let v = k(n, alpha);
            if v < 1 || v > top {
                return Err(Error::Config(format!(
                    "k({n}, {alpha}) = {v} is outside 1..={top}"
                )));
            }
            if v < prev {
                return Err(Error::Config(format!(
                    "k({n}, α) decreases at α = {alpha} ({prev} -> {v})"
                )));
            }
            prev = v;
        }
        Ok(())
    }
}

impl fmt::Debug for IndexRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexRule::Parity => f.write_str("Parity"),
            IndexRule::Symmetric(_) => f.write_str("Symmetric(..)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EstimatorConfig {
    kind: TNormKind,
    triple: NormalTriple,
    pub grid: AlphaGrid,
    epsilon: f64,
    pub rule: IndexRule,
}

impl EstimatorConfig {
    pub const DEFAULT_EPSILON: f64 = 0.05;

    /// Fails with [`Error::NotStrict`] unless `kind` is a strict Archimedean
    /// t-norm.
    pub fn new(kind: TNormKind) -> Result<Self> {
        let triple = NormalTriple::from_kind(&kind)?;
        Ok(EstimatorConfig {
            kind,
            triple,
            grid: AlphaGrid::default(),
            epsilon: Self::DEFAULT_EPSILON,
            rule: IndexRule::Parity,
        })
    }

    pub fn with_grid(mut self, grid: AlphaGrid) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_rule(mut self, rule: IndexRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::domain("epsilon", epsilon));
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn kind(&self) -> &TNormKind {
        &self.kind
    }

    pub fn triple(&self) -> &NormalTriple {
        &self.triple
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EstimationResult {
    pub profile: AlphaProfile,
    /// One index pair per grid level.
    pub indices: Vec<IndexPair>,
    /// `b(n, α) = 2k/n - h(α)` per grid level.
    pub bias: Vec<f64>,
    /// Deviation from a reference profile, when one was supplied.
    pub dn: Option<f64>,
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Config(format!(
            "estimation needs at least 2 observations, got {n}"
        )));
    }
    Ok(())
}

fn check_level(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain("alpha level", alpha));
    }
    Ok(())
}

fn cut_of(lower: &Sample, upper: &Sample, pair: IndexPair) -> Result<Interval> {
    Interval::new(lower.order_stat(pair.lower)?, upper.order_stat(pair.upper)?)
}

/// Cut estimate at α under the parity rule.
pub fn phi_hat(sample: &Sample, alpha: f64, cfg: &EstimatorConfig) -> Result<Interval> {
    check_size(sample.len())?;
    check_level(alpha)?;
    cut_of(
        sample,
        sample,
        IndexRule::Parity.pair(sample.len(), alpha, &cfg.triple),
    )
}

/// Cut estimate at α under `rule`, after validating the rule on the
/// configured grid.
pub fn phi_hat_biased(
    sample: &Sample,
    alpha: f64,
    rule: &IndexRule,
    cfg: &EstimatorConfig,
) -> Result<Interval> {
    check_size(sample.len())?;
    check_level(alpha)?;
    rule.validate(sample.len(), &cfg.grid)?;
    cut_of(sample, sample, rule.pair(sample.len(), alpha, &cfg.triple))
}

/// Step-profile estimate over the whole grid using `cfg.rule`.
pub fn estimate_profile(sample: &Sample, cfg: &EstimatorConfig) -> Result<EstimationResult> {
    estimate_interval_profile(sample, sample, cfg)
}

/// Estimate from interval-valued observations `[l_i, u_i]` that share one
/// ordering: lower cut ends use the order statistics of `lower`, upper ends
/// those of `upper`.
pub fn estimate_interval_profile(
    lower: &Sample,
    upper: &Sample,
    cfg: &EstimatorConfig,
) -> Result<EstimationResult> {
    let n = lower.len();
    if upper.len() != n {
        return Err(Error::Config(format!(
            "interval sample sides differ in size ({n} vs {})",
            upper.len()
        )));
    }
    check_size(n)?;
    cfg.rule.validate(n, &cfg.grid)?;
    let levels = cfg.grid.levels();
    let mut indices = Vec::with_capacity(levels.len());
    let mut bias = Vec::with_capacity(levels.len());
    let mut lo = Vec::with_capacity(levels.len());
    let mut hi = Vec::with_capacity(levels.len());
    for &alpha in levels {
        let pair = cfg.rule.pair(n, alpha, &cfg.triple);
        lo.push(lower.order_stat(pair.lower)?);
        hi.push(upper.order_stat(pair.upper)?);
        bias.push(pair.bias(n, cfg.triple.h(alpha)));
        indices.push(pair);
    }
    let profile = AlphaProfile::repaired(cfg.grid.clone(), lo, hi)?;
    Ok(EstimationResult {
        profile,
        indices,
        bias,
        dn: None,
    })
}

/// `D_n = sup_{α ∈ [ε, 1]} d_H(φ_n(α), φ(α))` on the common grid.
pub fn dn_statistic(result: &EstimationResult, truth: &AlphaProfile, epsilon: f64) -> Result<f64> {
    if !result.profile.same_grid(truth) {
        return Err(Error::GridMismatch);
    }
    result.profile.sup_distance(truth, epsilon)
}

/// Most possible value of the cut estimate: the truth cut at level
/// `h⁻¹(h(α) + b(n, α))`.
pub fn modal_bias_prediction(
    truth: &AlphaProfile,
    n: usize,
    alpha: f64,
    cfg: &EstimatorConfig,
) -> Result<Interval> {
    check_size(n)?;
    check_level(alpha)?;
    let h = cfg.triple.h(alpha);
    let shifted = h + cfg.rule.pair(n, alpha, &cfg.triple).bias(n, h);
    let clamped = shifted.clamp(truth.grid().min_level(), 1.0);
    if clamped != shifted {
        log::warn!("biased level h(α) + b = {shifted} clamped to {clamped}");
    }
    Ok(truth.cut_clamped(cfg.triple.h_inv(clamped)))
}

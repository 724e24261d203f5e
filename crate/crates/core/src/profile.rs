//! Compact fuzzy intervals on the real line as α-cut profiles.
//!
//! A profile stores, for each level of an ascending grid in `(0, 1]` that
//! ends at `1`, the cut `A^α = [lo(α), hi(α)]`. Cuts must be nested:
//! `lo` non-decreasing and `hi` non-increasing in α. Level 0 is never stored;
//! the support is approximated by the cut at the smallest grid level.
//!
//! Between grid levels both directions interpolate linearly: `alpha_cut`
//! interpolates the endpoints in α, and `membership` inverts that
//! interpolation in x. This is exact for triangular and trapezoidal shapes
//! and accurate to one grid step otherwise.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::tnorm::NormalTriple;

/// Repairs larger than this are logged when building a profile.
const REPAIR_WARN: f64 = 1e-9;
/// Relative tolerance for a zero-width modal cut and monotone quantiles.
const SHAPE_TOL: f64 = 1e-9;

/// Ascending α levels in `(0, 1]`, always ending at exactly `1`.
#[derive(Clone, Debug)]
pub struct AlphaGrid {
    levels: Arc<[f64]>,
}

impl AlphaGrid {
    pub const DEFAULT_LEVELS: usize = 1001;
    pub const DEFAULT_MIN: f64 = 0.001;

    /// `count` equally spaced levels from `alpha_min` to `1`.
    pub fn uniform(count: usize, alpha_min: f64) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidGrid(
                "a uniform grid needs at least two levels",
            ));
        }
        if !(alpha_min > 0.0 && alpha_min < 1.0) {
            return Err(Error::domain("smallest alpha level", alpha_min));
        }
        let last = (count - 1) as f64;
        // weighted form keeps levels such as 0.5005 free of accumulated error
        let levels = (0..count)
            .map(|k| ((last - k as f64) * alpha_min + k as f64) / last)
            .collect();
        Self::from_levels(levels)
    }

    pub fn from_levels(levels: Vec<f64>) -> Result<Self> {
        let Some(&last) = levels.last() else {
            return Err(Error::InvalidGrid("no levels"));
        };
        if last != 1.0 {
            return Err(Error::InvalidGrid("the last level must be exactly 1"));
        }
        if !(levels[0] > 0.0) {
            return Err(Error::InvalidGrid("levels must be positive"));
        }
        if levels.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidGrid("levels must be strictly ascending"));
        }
        Ok(AlphaGrid {
            levels: levels.into(),
        })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn min_level(&self) -> f64 {
        self.levels[0]
    }

    /// Largest gap between consecutive levels (the grid resolution).
    pub fn step(&self) -> f64 {
        self.levels
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    fn last_step(&self) -> f64 {
        match self.levels.len() {
            0 | 1 => 1.0,
            n => self.levels[n - 1] - self.levels[n - 2],
        }
    }
}

impl Default for AlphaGrid {
    fn default() -> Self {
        Self::uniform(Self::DEFAULT_LEVELS, Self::DEFAULT_MIN).expect("default grid is valid")
    }
}

impl PartialEq for AlphaGrid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.levels, &other.levels) || self.levels[..] == other.levels[..]
    }
}

/// Borrowed view over levels and endpoints; shared by normalized and
/// subnormal profiles.
struct Cuts<'a> {
    levels: &'a [f64],
    lo: &'a [f64],
    hi: &'a [f64],
}

/// Exact at both ends: `lerp(a, b, 1) == b`.
fn lerp(a: f64, b: f64, t: f64) -> f64 {
    (1.0 - t) * a + t * b
}

impl Cuts<'_> {
    /// Cut at `alpha`, clamped to the first and last stored level.
    fn cut(&self, alpha: f64) -> Interval {
        let n = self.levels.len();
        match self.levels.binary_search_by(|l| l.total_cmp(&alpha)) {
            Ok(i) => Interval::new_unchecked(self.lo[i], self.hi[i]),
            Err(0) => Interval::new_unchecked(self.lo[0], self.hi[0]),
            Err(i) if i >= n => Interval::new_unchecked(self.lo[n - 1], self.hi[n - 1]),
            Err(i) => {
                let (a0, a1) = (self.levels[i - 1], self.levels[i]);
                let t = if a1 > a0 {
                    (alpha - a0) / (a1 - a0)
                } else {
                    1.0
                };
                let lo = lerp(self.lo[i - 1], self.lo[i], t);
                let hi = lerp(self.hi[i - 1], self.hi[i], t);
                Interval::new_unchecked(lo, hi.max(lo))
            }
        }
    }

    fn membership(&self, x: f64) -> f64 {
        let last = self.levels.len() - 1;
        if x.is_nan() || x < self.lo[0] || x > self.hi[0] {
            return 0.0;
        }
        if self.lo[last] <= x && x <= self.hi[last] {
            return self.levels[last];
        }
        if x < self.lo[last] {
            // largest k with lo[k] <= x; k < last here
            let k = self.lo.partition_point(|&v| v <= x) - 1;
            let t = (x - self.lo[k]) / (self.lo[k + 1] - self.lo[k]);
            lerp(self.levels[k], self.levels[k + 1], t)
        } else {
            let k = self.hi.partition_point(|&v| v >= x) - 1;
            let t = (self.hi[k] - x) / (self.hi[k] - self.hi[k + 1]);
            lerp(self.levels[k], self.levels[k + 1], t)
        }
    }
}

fn check_endpoints(len: usize, lo: &[f64], hi: &[f64]) -> Result<()> {
    if lo.len() != len || hi.len() != len {
        return Err(Error::InvalidProfile(format!(
            "expected {len} endpoints per side, got {} and {}",
            lo.len(),
            hi.len()
        )));
    }
    if let Some(i) = (0..len).find(|&i| !(lo[i].is_finite() && hi[i].is_finite())) {
        return Err(Error::InvalidProfile(format!(
            "non-finite endpoint at level index {i}"
        )));
    }
    Ok(())
}

fn check_nested(levels: &[f64], lo: &[f64], hi: &[f64]) -> Result<()> {
    for i in 1..levels.len() {
        if lo[i] < lo[i - 1] || hi[i] > hi[i - 1] {
            return Err(Error::InvalidProfile(format!(
                "cut at alpha={} is not contained in the cut at alpha={}",
                levels[i],
                levels[i - 1]
            )));
        }
    }
    let last = levels.len() - 1;
    if lo[last] > hi[last] {
        return Err(Error::InvalidProfile(format!(
            "top cut is empty: lo={} > hi={}",
            lo[last], hi[last]
        )));
    }
    Ok(())
}

/// Cumulative max of `lo` and min of `hi` from the lowest level upward.
fn repair(lo: &mut [f64], hi: &mut [f64]) {
    let mut worst = 0.0_f64;
    for i in 1..lo.len() {
        if lo[i] < lo[i - 1] {
            worst = worst.max(lo[i - 1] - lo[i]);
            lo[i] = lo[i - 1];
        }
        if hi[i] > hi[i - 1] {
            worst = worst.max(hi[i] - hi[i - 1]);
            hi[i] = hi[i - 1];
        }
    }
    if worst > REPAIR_WARN {
        log::warn!("repaired non-nested alpha-cuts (largest correction {worst:e})");
    }
}

/// A normalized compact fuzzy interval given by its α-cuts on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaProfile {
    grid: AlphaGrid,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl AlphaProfile {
    /// Validating constructor: cuts must already be nested and non-empty.
    pub fn new(grid: AlphaGrid, lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        check_endpoints(grid.len(), &lo, &hi)?;
        check_nested(grid.levels(), &lo, &hi)?;
        Ok(AlphaProfile { grid, lo, hi })
    }

    /// Builds a profile from numerically computed cuts, forcing nesting by a
    /// running max of `lo` and min of `hi` from the lowest level upward.
    pub fn repaired(grid: AlphaGrid, mut lo: Vec<f64>, mut hi: Vec<f64>) -> Result<Self> {
        check_endpoints(grid.len(), &lo, &hi)?;
        repair(&mut lo, &mut hi);
        check_nested(grid.levels(), &lo, &hi)?;
        Ok(AlphaProfile { grid, lo, hi })
    }

    /// Evaluates `cut(α)` at every grid level.
    pub fn from_fn<F>(grid: AlphaGrid, mut cut: F) -> Result<Self>
    where
        F: FnMut(f64) -> Interval,
    {
        let (lo, hi) = grid
            .levels()
            .iter()
            .map(|&a| cut(a))
            .map(|c| (c.lo(), c.hi()))
            .unzip();
        Self::repaired(grid, lo, hi)
    }

    /// Constant profile of a crisp interval.
    pub fn crisp(grid: AlphaGrid, interval: Interval) -> Self {
        let n = grid.len();
        AlphaProfile {
            grid,
            lo: alloc::vec![interval.lo(); n],
            hi: alloc::vec![interval.hi(); n],
        }
    }

    /// Triangular fuzzy number with support `[a, b]` and mode `m`.
    pub fn triangular(grid: AlphaGrid, a: f64, m: f64, b: f64) -> Result<Self> {
        Self::trapezoidal(grid, a, m, m, b)
    }

    /// Trapezoid with support `[a, d]` and plateau `[b, c]`.
    pub fn trapezoidal(grid: AlphaGrid, a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if !(a <= b && b <= c && c <= d) {
            return Err(Error::InvalidProfile(format!(
                "trapezoid corners must be ordered, got {a}, {b}, {c}, {d}"
            )));
        }
        let lo = grid.levels().iter().map(|&t| lerp(a, b, t)).collect();
        let hi = grid.levels().iter().map(|&t| lerp(d, c, t)).collect();
        Self::repaired(grid, lo, hi)
    }

    fn cuts(&self) -> Cuts<'_> {
        Cuts {
            levels: self.grid.levels(),
            lo: &self.lo,
            hi: &self.hi,
        }
    }

    pub fn grid(&self) -> &AlphaGrid {
        &self.grid
    }

    pub fn levels(&self) -> &[f64] {
        self.grid.levels()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn len(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.is_empty()
    }

    /// Cut at the `index`-th grid level.
    pub fn cut(&self, index: usize) -> Interval {
        Interval::new_unchecked(self.lo[index], self.hi[index])
    }

    /// `A^α`, interpolated linearly between grid levels and exact on them.
    /// Levels below the smallest grid level return the support cut.
    pub fn alpha_cut(&self, alpha: f64) -> Result<Interval> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain("alpha level", alpha));
        }
        Ok(self.cuts().cut(alpha))
    }

    /// Cut at `alpha`, clamping the level into the grid range.
    pub(crate) fn cut_clamped(&self, alpha: f64) -> Interval {
        self.cuts().cut(alpha)
    }

    /// `A(x) = sup { α : x ∈ A^α }`; `0` outside the support cut.
    pub fn membership(&self, x: f64) -> f64 {
        self.cuts().membership(x)
    }

    /// Modal value: the level-1 cut.
    pub fn modal(&self) -> Interval {
        self.cut(self.len() - 1)
    }

    /// Cut at the smallest grid level.
    pub fn support(&self) -> Interval {
        self.cut(0)
    }

    /// Whether both profiles use the same α-grid.
    pub fn same_grid(&self, other: &AlphaProfile) -> bool {
        self.grid == other.grid
    }

    /// `sup` over `α ∈ [ε, 1]` of the Hausdorff distance between cuts,
    /// evaluated at `ε` itself and at every grid level of either profile
    /// inside `[ε, 1]`.
    pub fn sup_distance(&self, other: &AlphaProfile, epsilon: f64) -> Result<f64> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::domain("epsilon", epsilon));
        }
        let at = |a: f64| self.cut_clamped(a).hausdorff(&other.cut_clamped(a));
        let levels = self
            .levels()
            .iter()
            .chain(other.levels())
            .filter(|&&a| a >= epsilon);
        Ok(levels.fold(at(epsilon), |acc, &a| acc.max(at(a))))
    }

    /// Possibility `Π_A(B) = sup A(B)` of a nonempty union of intervals.
    pub fn possibility(&self, set: &[Interval]) -> Result<f64> {
        if set.is_empty() {
            return Err(Error::Empty("crisp set"));
        }
        let modal = self.modal();
        let best = set
            .iter()
            .map(|piece| {
                if piece.intersects(&modal) {
                    1.0
                } else if piece.hi() < modal.lo() {
                    self.membership(piece.hi())
                } else {
                    self.membership(piece.lo())
                }
            })
            .fold(0.0, f64::max);
        Ok(best)
    }

    /// Smallest grid level `δ` with `A^δ ⊆ [c - radius, c + radius]`.
    ///
    /// When even the top cut escapes the ball the result is `1 + step`, a
    /// value above every level, so margin tables stay rectangular.
    pub fn measure_convergence_margin(&self, center: f64, radius: f64) -> Result<f64> {
        if !(radius > 0.0) {
            return Err(Error::domain("radius", radius));
        }
        let ball = Interval::ball(center, radius)?;
        let inside = |i: usize| self.cut(i).is_subset_of(&ball);
        if !inside(self.len() - 1) {
            return Ok(1.0 + self.grid.last_step());
        }
        // nested cuts: containment is monotone in the level index
        let first = (0..self.len())
            .collect::<Vec<_>>()
            .partition_point(|&i| !inside(i));
        Ok(self.levels()[first])
    }

    /// Whether both slopes are concave membership functions: `lo` convex and
    /// `hi` concave as functions of α.
    pub fn is_concave(&self) -> bool {
        let levels = self.levels();
        let slopes = |side: &[f64]| -> Vec<f64> {
            (1..side.len())
                .map(|i| (side[i] - side[i - 1]) / (levels[i] - levels[i - 1]))
                .collect()
        };
        let tolerance =
            |s: &[f64]| SHAPE_TOL * (1.0 + s.iter().map(|v| libm::fabs(*v)).fold(0.0, f64::max));
        let left = slopes(&self.lo);
        let right = slopes(&self.hi);
        let (tl, tr) = (tolerance(&left), tolerance(&right));
        left.windows(2).all(|w| w[1] >= w[0] - tl) && right.windows(2).all(|w| w[1] <= w[0] + tr)
    }

    /// Applies `f` to every cut and rebuilds with nesting repair.
    pub fn map_cuts<F>(&self, mut f: F) -> Result<AlphaProfile>
    where
        F: FnMut(f64, Interval) -> Interval,
    {
        let (lo, hi) = (0..self.len())
            .map(|i| f(self.levels()[i], self.cut(i)))
            .map(|c| (c.lo(), c.hi()))
            .unzip();
        Self::repaired(self.grid.clone(), lo, hi)
    }
}

/// A fuzzy interval whose level-1 cut is a single point.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyNumber(AlphaProfile);

impl FuzzyNumber {
    pub fn triangular(grid: AlphaGrid, a: f64, m: f64, b: f64) -> Result<Self> {
        Self::try_from(AlphaProfile::triangular(grid, a, m, b)?)
    }

    pub fn profile(&self) -> &AlphaProfile {
        &self.0
    }

    pub fn into_profile(self) -> AlphaProfile {
        self.0
    }

    /// The modal point.
    pub fn mode(&self) -> f64 {
        self.0.modal().midpoint()
    }

    /// Continuous membership: both slopes strictly monotone across the grid.
    pub fn is_continuous(&self) -> bool {
        self.0.lo.windows(2).all(|w| w[0] < w[1]) && self.0.hi.windows(2).all(|w| w[0] > w[1])
    }
}

impl TryFrom<AlphaProfile> for FuzzyNumber {
    type Error = Error;

    fn try_from(profile: AlphaProfile) -> Result<Self> {
        let modal = profile.modal();
        let scale = 1.0_f64
            .max(libm::fabs(modal.lo()))
            .max(libm::fabs(modal.hi()));
        if modal.width() > SHAPE_TOL * scale {
            return Err(Error::InvalidProfile(format!(
                "a fuzzy number needs a single modal point, got {modal}"
            )));
        }
        Ok(FuzzyNumber(profile))
    }
}

impl Deref for FuzzyNumber {
    type Target = AlphaProfile;

    fn deref(&self) -> &AlphaProfile {
        &self.0
    }
}

/// Probability–possibility transform of a quantile function:
/// `A^α = [q(α/2), q(1 - α/2)]`.
pub fn from_cdf<Q>(quantile: Q, grid: AlphaGrid) -> Result<FuzzyNumber>
where
    Q: Fn(f64) -> f64,
{
    let lo: Vec<f64> = grid.levels().iter().map(|&a| quantile(0.5 * a)).collect();
    let hi: Vec<f64> = grid
        .levels()
        .iter()
        .map(|&a| quantile(1.0 - 0.5 * a))
        .collect();
    check_endpoints(grid.len(), &lo, &hi)?;
    let scale = lo
        .iter()
        .chain(&hi)
        .fold(1.0_f64, |m, v| m.max(libm::fabs(*v)));
    let tol = SHAPE_TOL * scale;
    if lo.windows(2).any(|w| w[1] < w[0] - tol) || hi.windows(2).any(|w| w[1] > w[0] + tol) {
        return Err(Error::InvalidProfile(
            "quantile function is not monotone".into(),
        ));
    }
    FuzzyNumber::try_from(AlphaProfile::repaired(grid, lo, hi)?)
}

/// Piecewise-linear quantile function from `(p, x)` knots.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantileTable {
    p: Vec<f64>,
    x: Vec<f64>,
}

impl QuantileTable {
    /// `p` strictly ascending in `[0, 1]`, `x` non-decreasing.
    pub fn new(p: Vec<f64>, x: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::Empty("quantile table"));
        }
        if p.len() != x.len() {
            return Err(Error::InvalidProfile(
                "quantile table columns differ in length".into(),
            ));
        }
        if p.iter().any(|v| !(0.0..=1.0).contains(v)) || x.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidProfile(
                "quantile table has values out of range".into(),
            ));
        }
        if p.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidProfile(
                "probabilities must be strictly ascending".into(),
            ));
        }
        if x.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidProfile(
                "quantile table is not monotone".into(),
            ));
        }
        Ok(QuantileTable { p, x })
    }

    /// Linear interpolation between knots, clamped to the end knots.
    pub fn quantile(&self, prob: f64) -> f64 {
        let n = self.p.len();
        match self.p.binary_search_by(|v| v.total_cmp(&prob)) {
            Ok(i) => self.x[i],
            Err(0) => self.x[0],
            Err(i) if i >= n => self.x[n - 1],
            Err(i) => {
                let t = (prob - self.p[i - 1]) / (self.p[i] - self.p[i - 1]);
                lerp(self.x[i - 1], self.x[i], t)
            }
        }
    }
}

/// `rows[n][k]` is the Hausdorff distance between the `k`-th cuts of the
/// `n`-th sequence element and the target.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceTable {
    pub levels: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

impl DistanceTable {
    /// Distances at one grid level across the sequence.
    pub fn column(&self, level_index: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(move |r| r[level_index])
    }
}

/// Levelwise distances from each sequence element to `target`.
pub fn levelwise_distance_profile(
    sequence: &[AlphaProfile],
    target: &AlphaProfile,
) -> Result<DistanceTable> {
    if sequence.iter().any(|a| !a.same_grid(target)) {
        return Err(Error::GridMismatch);
    }
    let rows = sequence
        .iter()
        .map(|a| {
            (0..a.len())
                .map(|k| a.cut(k).hausdorff(&target.cut(k)))
                .collect()
        })
        .collect();
    Ok(DistanceTable {
        levels: target.levels().to_vec(),
        rows,
    })
}

/// Fuzzy interval whose supremum membership (its highest level) may be
/// below 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SubnormalProfile {
    levels: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl SubnormalProfile {
    /// `levels` strictly ascending in `(0, 1]`; the last one is the peak.
    pub fn new(levels: Vec<f64>, lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Degenerate("no levels, the set is empty"));
        }
        if !(levels[0] > 0.0) || levels[levels.len() - 1] > 1.0 {
            return Err(Error::InvalidGrid("levels must lie in (0, 1]"));
        }
        if levels.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidGrid("levels must be strictly ascending"));
        }
        check_endpoints(levels.len(), &lo, &hi)?;
        check_nested(&levels, &lo, &hi)?;
        Ok(SubnormalProfile { levels, lo, hi })
    }

    fn cuts(&self) -> Cuts<'_> {
        Cuts {
            levels: &self.levels,
            lo: &self.lo,
            hi: &self.hi,
        }
    }

    /// `sup A`.
    pub fn peak(&self) -> f64 {
        self.levels[self.levels.len() - 1]
    }

    pub fn membership(&self, x: f64) -> f64 {
        self.cuts().membership(x)
    }

    /// `A^N(x) = h^-1(h(A(x)) / h(peak))`, computed on cuts by relabeling
    /// each level `β` to `h^-1(h(β) / h(peak))` and resampling onto a uniform
    /// grid from the smallest stored level to 1.
    pub fn normalize(&self, triple: &NormalTriple) -> Result<AlphaProfile> {
        let peak = self.peak();
        if peak == 1.0 {
            let grid = AlphaGrid::from_levels(self.levels.clone())?;
            return AlphaProfile::new(grid, self.lo.clone(), self.hi.clone());
        }
        let hp = triple.h(peak);
        if !(hp > 0.0) {
            return Err(Error::Degenerate("peak membership maps to h = 0"));
        }
        let mut relabeled: Vec<f64> = self
            .levels
            .iter()
            .map(|&b| triple.h_inv(triple.h(b) / hp))
            .collect();
        let last = relabeled.len() - 1;
        relabeled[last] = 1.0;
        let source = Cuts {
            levels: &relabeled,
            lo: &self.lo,
            hi: &self.hi,
        };
        let grid = if self.levels.len() >= 2 {
            AlphaGrid::uniform(self.levels.len(), self.levels[0])?
        } else {
            AlphaGrid::from_levels(alloc::vec![1.0])?
        };
        let (lo, hi) = grid
            .levels()
            .iter()
            .map(|&a| source.cut(a))
            .map(|c| (c.lo(), c.hi()))
            .unzip();
        AlphaProfile::repaired(grid, lo, hi)
    }
}

impl From<AlphaProfile> for SubnormalProfile {
    fn from(p: AlphaProfile) -> Self {
        SubnormalProfile {
            levels: p.grid.levels().to_vec(),
            lo: p.lo,
            hi: p.hi,
        }
    }
}

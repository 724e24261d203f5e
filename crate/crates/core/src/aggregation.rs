//! Extension-principle images of fuzzy intervals.
//!
//! Binary images under an Archimedean t-norm are computed by sweeping the
//! boundary curve `g(ξ) + g(η) = g(α)` and taking the hull of the box images
//! `f(A^ξ, B^η)`. Nesting of the cuts makes the interior of the region
//! redundant. Under the minimum t-norm the image is levelwise: `f(A^α, B^α)`.
//!
//! The median and average of `n` identically distributed fuzzy variables
//! have closed forms that only relabel levels of the base profile.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::profile::{AlphaGrid, AlphaProfile};
use crate::report::{ConvergenceReport, ConvergenceRow};
use crate::tnorm::{GeneratorSpec, TNormKind};

/// Direction of a real map in one argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    /// No usable interval extension.
    Unknown,
}

impl Monotonicity {
    /// Endpoints of `x` that produce the (smaller, larger) result.
    fn ends(self, x: Interval) -> Option<(f64, f64)> {
        match self {
            Monotonicity::Increasing => Some((x.lo(), x.hi())),
            Monotonicity::Decreasing => Some((x.hi(), x.lo())),
            Monotonicity::Unknown => None,
        }
    }
}

type BinaryFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A continuous real operation with a coordinatewise-monotone interval
/// extension.
#[derive(Clone)]
pub struct BinaryOp {
    name: String,
    f: BinaryFn,
    mx: Monotonicity,
    my: Monotonicity,
}

impl BinaryOp {
    pub fn custom<F>(name: impl Into<String>, f: F, mx: Monotonicity, my: Monotonicity) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        BinaryOp {
            name: name.into(),
            f: Arc::new(f),
            mx,
            my,
        }
    }

    pub fn add() -> Self {
        Self::custom(
            "add",
            |x, y| x + y,
            Monotonicity::Increasing,
            Monotonicity::Increasing,
        )
    }

    pub fn sub() -> Self {
        Self::custom(
            "sub",
            |x, y| x - y,
            Monotonicity::Increasing,
            Monotonicity::Decreasing,
        )
    }

    pub fn average() -> Self {
        Self::custom(
            "average",
            |x, y| 0.5 * (x + y),
            Monotonicity::Increasing,
            Monotonicity::Increasing,
        )
    }

    pub fn min() -> Self {
        Self::custom(
            "min",
            f64::min,
            Monotonicity::Increasing,
            Monotonicity::Increasing,
        )
    }

    pub fn max() -> Self {
        Self::custom(
            "max",
            f64::max,
            Monotonicity::Increasing,
            Monotonicity::Increasing,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.f)(x, y)
    }

    /// `f(X, Y) = { f(x, y) : x ∈ X, y ∈ Y }`, exact for monotone operations.
    pub fn image(&self, x: Interval, y: Interval) -> Result<Interval> {
        let unsupported = || {
            Error::Unsupported(format!(
                "operation '{}' has no monotone interval extension",
                self.name
            ))
        };
        let (xl, xh) = self.mx.ends(x).ok_or_else(unsupported)?;
        let (yl, yh) = self.my.ends(y).ok_or_else(unsupported)?;
        Interval::new(self.eval(xl, yl), self.eval(xh, yh))
    }
}

impl fmt::Debug for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryOp")
            .field("name", &self.name)
            .field("mx", &self.mx)
            .field("my", &self.my)
            .finish()
    }
}

fn collect(grid: &AlphaGrid, cuts: impl Iterator<Item = Result<Interval>>) -> Result<AlphaProfile> {
    let mut lo = Vec::with_capacity(grid.len());
    let mut hi = Vec::with_capacity(grid.len());
    for cut in cuts {
        let cut = cut?;
        lo.push(cut.lo());
        hi.push(cut.hi());
    }
    AlphaProfile::repaired(grid.clone(), lo, hi)
}

/// Cutwise image `(f_* A)^α = f(A^α)` of a monotone real map.
pub fn unary_image<F>(a: &AlphaProfile, f: F, monotonicity: Monotonicity) -> Result<AlphaProfile>
where
    F: Fn(f64) -> f64,
{
    let cuts = (0..a.len()).map(|i| {
        let (lo, hi) = monotonicity
            .ends(a.cut(i))
            .ok_or_else(|| Error::Unsupported("unary image of a non-monotone map".into()))?;
        Interval::new(f(lo), f(hi))
    });
    collect(a.grid(), cuts)
}

/// Extension-principle image `f_*(A, B)` of two T-independent fuzzy
/// intervals.
pub fn nfk_binary(
    op: &BinaryOp,
    a: &AlphaProfile,
    b: &AlphaProfile,
    kind: &TNormKind,
) -> Result<AlphaProfile> {
    if !a.same_grid(b) {
        return Err(Error::GridMismatch);
    }
    let levels = a.levels();
    match kind.generator() {
        None => collect(a.grid(), (0..a.len()).map(|i| op.image(a.cut(i), b.cut(i)))),
        Some(g) => {
            let cuts = (0..levels.len()).map(|i| {
                let budget = g.eval(levels[i]);
                let mut hull = op.image(a.cut(i), b.cut_clamped(1.0))?;
                for (j, &xi) in levels.iter().enumerate().skip(i + 1) {
                    let eta = g.pseudo_inverse(budget - g.eval(xi));
                    hull = hull.hull(&op.image(a.cut(j), b.cut_clamped(eta))?);
                }
                Ok(hull)
            });
            collect(a.grid(), cuts)
        }
    }
}

/// How a closed-form aggregate relates to the exact extension-principle
/// image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Exactness {
    Exact,
    /// Even-n median: the odd-n formula extended without proof.
    Postulated,
    /// Average of a non-concave profile, computed from its concave envelope.
    UpperBound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub profile: AlphaProfile,
    pub exactness: Exactness,
}

fn archimedean(kind: &TNormKind) -> Result<GeneratorSpec> {
    kind.generator()
        .ok_or_else(|| Error::NotArchimedean(format!("{kind} has no additive generator")))
}

fn relabel(a: &AlphaProfile, level: impl Fn(f64) -> f64) -> Result<AlphaProfile> {
    collect(
        a.grid(),
        a.levels()
            .iter()
            .map(|&alpha| Ok(a.cut_clamped(level(alpha)))),
    )
}

/// Median of `n` T-independent copies of `A`: the cut at α is `A` at level
/// `g⁻¹(2 g(α) / (n + 1))`.
pub fn median_power(a: &AlphaProfile, n: usize, kind: &TNormKind) -> Result<Aggregate> {
    if n == 0 {
        return Err(Error::Config("median of zero variables".into()));
    }
    let g = archimedean(kind)?;
    let exactness = if n % 2 == 1 {
        Exactness::Exact
    } else {
        log::debug!("median of an even count {n} uses the postulated closed form");
        Exactness::Postulated
    };
    if n == 1 {
        return Ok(Aggregate {
            profile: a.clone(),
            exactness,
        });
    }
    let factor = 2.0 / (n + 1) as f64;
    let profile = relabel(a, |alpha| g.pseudo_inverse(factor * g.eval(alpha)))?;
    Ok(Aggregate { profile, exactness })
}

/// What `average_power` does with a profile whose slopes are not concave.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EnvelopePolicy {
    #[default]
    Reject,
    /// Average the concave envelope and flag the result as an upper bound.
    Envelope,
}

/// Average of `n` T-independent copies of a concave `A`: the cut at α is `A`
/// at level `g⁻¹(g(α) / n)`.
pub fn average_power(
    a: &AlphaProfile,
    n: usize,
    kind: &TNormKind,
    policy: EnvelopePolicy,
) -> Result<Aggregate> {
    if n == 0 {
        return Err(Error::Config("average of zero variables".into()));
    }
    let g = archimedean(kind)?;
    let (base, exactness) = if a.is_concave() {
        (a.clone(), Exactness::Exact)
    } else {
        match policy {
            EnvelopePolicy::Reject => return Err(Error::NotConcave),
            EnvelopePolicy::Envelope => (concave_envelope(a)?, Exactness::UpperBound),
        }
    };
    if n == 1 {
        return Ok(Aggregate {
            profile: base,
            exactness,
        });
    }
    let scale = 1.0 / n as f64;
    let profile = relabel(&base, |alpha| g.pseudo_inverse(scale * g.eval(alpha)))?;
    Ok(Aggregate { profile, exactness })
}

/// Upper hull of `(x, μ)` points sorted by ascending `x`, keeping the larger
/// `μ` for repeated `x`.
fn upper_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &(x, mu) in points {
        let mut p = (x, mu);
        if let Some(&(lx, lmu)) = hull.last() {
            if lx == x {
                hull.pop();
                p.1 = mu.max(lmu);
            }
        }
        while hull.len() >= 2 {
            let (o, q) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (q.0 - o.0) * (p.1 - o.1) - (q.1 - o.1) * (p.0 - o.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Left endpoints of the least concave majorant of a left slope given as
/// `lo` over `levels`.
fn concave_left(levels: &[f64], lo: &[f64]) -> Vec<f64> {
    let points: Vec<(f64, f64)> = lo.iter().copied().zip(levels.iter().copied()).collect();
    let hull = upper_hull(&points);
    // the hull rises from the support endpoint to the modal point
    let mut seg = 0;
    levels
        .iter()
        .map(|&alpha| {
            while seg + 1 < hull.len() && hull[seg + 1].1 < alpha {
                seg += 1;
            }
            match hull.get(seg + 1) {
                None => hull[seg].0,
                Some(&(x1, m1)) => {
                    let (x0, m0) = hull[seg];
                    if alpha <= m0 {
                        x0
                    } else {
                        x0 + (alpha - m0) / (m1 - m0) * (x1 - x0)
                    }
                }
            }
        })
        .collect()
}

/// Replaces each slope by its least concave majorant; the result contains
/// `A` cutwise.
pub fn concave_envelope(a: &AlphaProfile) -> Result<AlphaProfile> {
    if a.is_concave() {
        return Ok(a.clone());
    }
    let levels = a.levels();
    // the majorant never shrinks a cut; min/max only absorb rounding
    let lo = concave_left(levels, a.lo())
        .iter()
        .zip(a.lo())
        .map(|(e, o)| e.min(*o))
        .collect();
    let mirrored: Vec<f64> = a.hi().iter().map(|h| -h).collect();
    let hi = concave_left(levels, &mirrored)
        .iter()
        .zip(a.hi())
        .map(|(e, o)| (-e).max(*o))
        .collect();
    AlphaProfile::repaired(a.grid().clone(), lo, hi)
}

/// `A + Y` for a crisp interval `Y`; independent of the t-norm because the
/// cuts of `Y` are constant.
pub fn shift_by_crisp(a: &AlphaProfile, y: Interval) -> Result<AlphaProfile> {
    collect(a.grid(), (0..a.len()).map(|i| Ok(a.cut(i).offset(&y))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Statistic {
    Median,
    Average,
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::Median => "median",
            Statistic::Average => "average",
        })
    }
}

/// A law-of-large-numbers sequence `n = 1..=n_max` of medians or averages.
#[derive(Clone, Debug)]
pub struct LlnSpec {
    pub base: AlphaProfile,
    pub statistic: Statistic,
    pub kind: TNormKind,
    pub n_max: usize,
    /// Lower level cutoff for sup-distances.
    pub epsilon: f64,
    /// Ball radius around the modal interval for the measure margin.
    pub radius: f64,
}

impl LlnSpec {
    pub fn new(base: AlphaProfile, statistic: Statistic, kind: TNormKind, n_max: usize) -> Self {
        LlnSpec {
            base,
            statistic,
            kind,
            n_max,
            epsilon: 0.1,
            radius: 0.1,
        }
    }
}

/// Profiles for `n = 1..=n_max` and their distances to the modal limit.
///
/// Averages of non-concave bases use the concave envelope; those rows are
/// flagged as upper bounds.
pub fn lln_sequence(spec: &LlnSpec) -> Result<(Vec<AlphaProfile>, ConvergenceReport)> {
    if spec.n_max == 0 {
        return Err(Error::Config("n_max must be at least 1".into()));
    }
    let modal = spec.base.modal();
    let limit = AlphaProfile::crisp(spec.base.grid().clone(), modal);
    let radius = spec.radius + 0.5 * modal.width();
    let mut profiles = Vec::with_capacity(spec.n_max);
    let mut rows = Vec::with_capacity(spec.n_max);
    for n in 1..=spec.n_max {
        let agg = match spec.statistic {
            Statistic::Median => median_power(&spec.base, n, &spec.kind)?,
            Statistic::Average => {
                average_power(&spec.base, n, &spec.kind, EnvelopePolicy::Envelope)?
            }
        };
        let distance = agg.profile.sup_distance(&limit, spec.epsilon)?;
        let mut row = ConvergenceRow::new(n, alloc::vec![distance]);
        row.exactness = Some(agg.exactness);
        row.margin = Some(
            agg.profile
                .measure_convergence_margin(modal.midpoint(), radius)?,
        );
        rows.push(row);
        profiles.push(agg.profile);
    }
    let label = format!("{} lln, {}", spec.statistic, spec.kind);
    let report = ConvergenceReport::new(label, spec.epsilon, spec.base.len(), rows);
    Ok((profiles, report))
}

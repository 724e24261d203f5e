//! Per-n convergence tables shared by LLN sequences and simulation runs.

use alloc::string::String;
use alloc::vec::Vec;

use crate::aggregation::Exactness;

/// One schedule entry: the distances observed at sample size or power `n`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceRow {
    pub n: usize,
    /// Closed-form status of the profile behind this row, when one applies.
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub exactness: Option<Exactness>,
    /// One distance per trial (a single entry for deterministic sequences).
    pub distances: Vec<f64>,
    pub median: f64,
    pub max: f64,
    /// Measure-convergence margin against the limit, when computed.
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub margin: Option<f64>,
}

impl ConvergenceRow {
    /// Builds a row and fills in the summary statistics.
    pub fn new(n: usize, distances: Vec<f64>) -> Self {
        let median = median(&distances);
        let max = distances.iter().copied().fold(f64::NAN, f64::max);
        ConvergenceRow {
            n,
            exactness: None,
            distances,
            median,
            max,
            margin: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceReport {
    pub label: String,
    pub epsilon: f64,
    /// Resolution of the α-grid the sup-distances were taken over.
    pub grid_levels: usize,
    pub rows: Vec<ConvergenceRow>,
    /// Row medians are non-increasing along the schedule.
    pub monotone: bool,
}

impl ConvergenceReport {
    pub fn new(label: String, epsilon: f64, grid_levels: usize, rows: Vec<ConvergenceRow>) -> Self {
        let monotone = rows.windows(2).all(|w| w[1].median <= w[0].median);
        ConvergenceReport {
            label,
            epsilon,
            grid_levels,
            rows,
            monotone,
        }
    }

    pub fn medians(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|r| r.median)
    }

    /// Medians strictly decrease along the schedule.
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].median < w[0].median)
    }
}

/// Median of a slice; the mean of the middle pair for even lengths, NaN when
/// empty.
pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    }
}

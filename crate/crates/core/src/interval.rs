use core::fmt;

use crate::error::{Error, Result};

/// Closed bounded interval `[lo, hi]` of reals.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() {
            return Err(Error::domain("interval lower bound", lo));
        }
        if !hi.is_finite() || hi < lo {
            return Err(Error::domain("interval upper bound", hi));
        }
        Ok(Interval { lo, hi })
    }

    /// Caller guarantees `lo <= hi`, both finite.
    pub(crate) fn new_unchecked(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    /// `[center - radius, center + radius]`.
    pub fn ball(center: f64, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) {
            return Err(Error::domain("radius", radius));
        }
        Self::new(center - radius, center + radius)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Hausdorff distance; for intervals `max(|lo - lo'|, |hi - hi'|)`.
    pub fn hausdorff(&self, other: &Interval) -> f64 {
        libm::fabs(self.lo - other.lo).max(libm::fabs(self.hi - other.hi))
    }

    /// Minkowski sum `[lo + lo', hi + hi']`.
    pub fn offset(&self, by: &Interval) -> Interval {
        Interval {
            lo: self.lo + by.lo,
            hi: self.hi + by.hi,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

//! Brute-force extension-principle images computed straight from the
//! sup-T definition, using nothing from the library but raw cut arrays.
//!
//! Cuts are plain `(levels, lo, hi)` arrays. Every scan takes the union of
//! the images of all level tuples whose t-norm reaches α; nothing assumes the
//! input cuts are nested.

#![allow(dead_code)]

/// A t-norm given by its own formula and additive generator.
#[derive(Clone, Copy)]
pub struct Norm {
    pub name: &'static str,
    pub t: fn(f64, f64) -> f64,
    pub g: fn(f64) -> f64,
}

pub const PRODUCT: Norm = Norm {
    name: "product",
    t: |x, y| x * y,
    g: |x| -x.ln(),
};

pub const LUKASIEWICZ: Norm = Norm {
    name: "lukasiewicz",
    t: |x, y| (x + y - 1.0).max(0.0),
    g: |x| 1.0 - x,
};

#[derive(Clone, Debug)]
pub struct Cuts {
    pub levels: Vec<f64>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Cuts {
    pub fn scaled(&self, c: f64) -> Cuts {
        Cuts {
            levels: self.levels.clone(),
            lo: self.lo.iter().map(|v| v * c).collect(),
            hi: self.hi.iter().map(|v| v * c).collect(),
        }
    }
}

/// Cuts of `A + B` for T-independent `A`, `B` on a shared grid.
///
/// For each level `ξ` of `A` the admissible `η` of `B` form a suffix of the
/// grid (the t-norm is monotone), so the union over that suffix is read
/// from running extrema of `B`'s endpoints.
pub fn sum_scan(a: &Cuts, b: &Cuts, norm: Norm) -> Cuts {
    let levels = &a.levels;
    assert_eq!(levels, &b.levels);
    let m = levels.len();
    let mut suffix_lo = b.lo.clone();
    let mut suffix_hi = b.hi.clone();
    for j in (0..m - 1).rev() {
        suffix_lo[j] = suffix_lo[j].min(suffix_lo[j + 1]);
        suffix_hi[j] = suffix_hi[j].max(suffix_hi[j + 1]);
    }
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for (k, &alpha) in levels.iter().enumerate() {
        for (i, &xi) in levels.iter().enumerate() {
            // first η with T(ξ, η) >= α
            let j = levels.partition_point(|&eta| (norm.t)(xi, eta) < alpha);
            if j == m {
                continue;
            }
            lo[k] = lo[k].min(a.lo[i] + suffix_lo[j]);
            hi[k] = hi[k].max(a.hi[i] + suffix_hi[j]);
        }
    }
    Cuts {
        levels: levels.clone(),
        lo,
        hi,
    }
}

/// Cuts of the average of `n` T-independent copies of `a`, built by
/// folding `sum_scan` (the t-norm is associative) and scaling by `1/n`.
pub fn average_scan(a: &Cuts, n: usize, norm: Norm) -> Cuts {
    let mut acc = a.clone();
    for _ in 1..n {
        acc = sum_scan(&acc, a, norm);
    }
    acc.scaled(1.0 / n as f64)
}

fn median_of(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    values[values.len() / 2]
}

/// Median of `n` (odd) T-independent copies by enumerating every level
/// tuple. Exponential in `n`; only for coarse grids.
pub fn median_tuple_scan(a: &Cuts, n: usize, norm: Norm) -> Cuts {
    assert!(n % 2 == 1);
    let m = a.levels.len();
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    let mut idx = vec![0usize; n];
    loop {
        let level = idx
            .iter()
            .map(|&i| a.levels[i])
            .reduce(|x, y| (norm.t)(x, y))
            .unwrap();
        let mut los: Vec<f64> = idx.iter().map(|&i| a.lo[i]).collect();
        let mut his: Vec<f64> = idx.iter().map(|&i| a.hi[i]).collect();
        let (l, h) = (median_of(&mut los), median_of(&mut his));
        for (k, &alpha) in a.levels.iter().enumerate() {
            // same tie slack as the counting scan
            if level >= alpha - 1e-12 {
                lo[k] = lo[k].min(l);
                hi[k] = hi[k].max(h);
            }
        }
        // odometer
        let mut p = 0;
        loop {
            if p == n {
                return Cuts {
                    levels: a.levels.clone(),
                    lo,
                    hi,
                };
            }
            idx[p] += 1;
            if idx[p] < m {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// Median of `n = 2r + 1` T-independent copies by counting.
///
/// The median is at most `t` exactly when `r + 1` arguments are at most
/// `t`. An argument at level `ξ` can be pushed down to `lo(ξ)`, so the
/// cheapest way to put one argument at or below `t` costs
/// `c(t) = min { g(ξ) : lo(ξ) <= t }` in generator units; the other `r`
/// arguments sit at level 1 for free. The lower endpoint of the α-cut is
/// therefore the least candidate `t` with `(r + 1) c(t) <= g(α)`. The
/// upper endpoint is the mirror image.
pub fn median_count_scan(a: &Cuts, n: usize, norm: Norm) -> Cuts {
    assert!(n % 2 == 1);
    let need = (n / 2 + 1) as f64;
    let m = a.levels.len();
    let g: Vec<f64> = a.levels.iter().map(|&x| (norm.g)(x)).collect();
    let cost_lo: Vec<f64> = (0..m)
        .map(|k| {
            (0..m)
                .filter(|&j| a.lo[j] <= a.lo[k])
                .map(|j| g[j])
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let cost_hi: Vec<f64> = (0..m)
        .map(|k| {
            (0..m)
                .filter(|&j| a.hi[j] >= a.hi[k])
                .map(|j| g[j])
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for k in 0..m {
        // tiny slack so budget ties on the grid are admitted
        let budget = g[k] * (1.0 + 1e-12) + 1e-15;
        for j in 0..m {
            if need * cost_lo[j] <= budget {
                lo[k] = lo[k].min(a.lo[j]);
            }
            if need * cost_hi[j] <= budget {
                hi[k] = hi[k].max(a.hi[j]);
            }
        }
    }
    Cuts {
        levels: a.levels.clone(),
        lo,
        hi,
    }
}

/// Largest endpoint gap between two cut arrays.
pub fn max_gap(a: &Cuts, lo: &[f64], hi: &[f64]) -> f64 {
    a.lo.iter()
        .zip(lo)
        .chain(a.hi.iter().zip(hi))
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Steepest endpoint slope `|dx/dα|` between adjacent levels.
pub fn max_slope(a: &Cuts) -> f64 {
    let mut slope: f64 = 0.0;
    for w in 0..a.levels.len() - 1 {
        let d = a.levels[w + 1] - a.levels[w];
        slope = slope
            .max((a.lo[w + 1] - a.lo[w]).abs() / d)
            .max((a.hi[w + 1] - a.hi[w]).abs() / d);
    }
    slope
}

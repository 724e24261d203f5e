//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fuzzyvar::formats::{profile_from_csv, profile_from_json, profile_to_csv, profile_to_json};
use fuzzyvar_core::aggregation::{
    average_power, lln_sequence, median_power, nfk_binary, unary_image,
};
use fuzzyvar_core::estimation::parity_indices;
use fuzzyvar_core::profile::from_cdf;
use fuzzyvar_core::simulation::run_experiment;
use fuzzyvar_core::{
    AlphaGrid, AlphaProfile, BinaryOp, EnvelopePolicy, EstimatorConfig, ExperimentConfig,
    ExperimentOutcome, FuzzyNumber, GeneratorSpec, Interval, LlnSpec, Monotonicity, NormalTriple,
    Statistic, TNormKind,
};
use oracle::{Cuts, Norm, LUKASIEWICZ, PRODUCT};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

/// Criterion result: pass flag and a one-line summary of what was measured.
type Verdict = (bool, String);

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Verdict,
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "t-norm algebra",
            budget: secs(5),
            run: tnorm_algebra,
        },
        Criterion {
            id: 2,
            name: "NFK oracle equivalence",
            budget: secs(60),
            run: nfk_oracle,
        },
        Criterion {
            id: 3,
            name: "median LLN",
            budget: None,
            run: median_lln,
        },
        Criterion {
            id: 4,
            name: "index bias bound",
            budget: secs(10),
            run: bias_bound,
        },
        Criterion {
            id: 5,
            name: "Glivenko-Cantelli pipeline",
            budget: secs(120),
            run: gc_pipeline,
        },
        Criterion {
            id: 6,
            name: "transform consistency",
            budget: None,
            run: transform,
        },
        Criterion {
            id: 7,
            name: "crisp shift",
            budget: secs(120),
            run: crisp_shift,
        },
        Criterion {
            id: 8,
            name: "modal identities",
            budget: None,
            run: modal_identities,
        },
        Criterion {
            id: 9,
            name: "round-trip I/O",
            budget: None,
            run: round_trip,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let (ok, detail) = match panic::catch_unwind(AssertUnwindSafe(c.run)) {
            Ok(v) => v,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        let elapsed = start.elapsed();
        let in_time = c.budget.is_none_or(|b| elapsed <= b);
        let budget = c
            .budget
            .map(|b| format!(" of {} s", b.as_secs()))
            .unwrap_or_default();
        let pass = ok && in_time;
        failed += usize::from(!pass);
        println!(
            "{} {}. {:<27} {} ({:.2} s{budget})",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail,
            elapsed.as_secs_f64(),
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

// 1 -------------------------------------------------------------------------

fn hamacher() -> GeneratorSpec {
    GeneratorSpec::custom(|x| (1.0 - x) / x, true).unwrap()
}

fn tnorm_algebra() -> Verdict {
    let xs: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
    let kinds = [
        TNormKind::Product,
        TNormKind::Lukasiewicz,
        "power:2".parse().unwrap(),
        "power:0.5".parse().unwrap(),
        TNormKind::Generic(hamacher()),
    ];
    let mut err: f64 = 0.0;
    let mut archimedean = true;
    for kind in &kinds {
        let g = kind.generator().unwrap();
        let scaled: Vec<TNormKind> = [0.25, 3.0]
            .iter()
            .map(|&c| TNormKind::Generic(g.scaled(c).unwrap()))
            .collect();
        for (i, &x) in xs.iter().enumerate() {
            err = err
                .max((kind.t(x, 1.0) - x).abs())
                .max(kind.t(x, 0.0).abs())
                .max((kind.s(x, 0.0) - x).abs())
                .max((kind.s(x, 1.0) - 1.0).abs());
            if x > 0.0 && x < 1.0 {
                // T(x, x) < x, and the self-powers of x fall below any level
                let mut power = kind.t(x, x);
                archimedean &= power < x;
                let mut steps = 1;
                while power >= 0.01 && steps < 100_000 {
                    power = kind.t(power, x);
                    steps += 1;
                }
                archimedean &= power < 0.01;
            }
            for (j, &y) in xs.iter().enumerate() {
                let t = kind.t(x, y);
                err = err
                    .max((t - kind.t(y, x)).abs())
                    .max((kind.s(x, y) - kind.s(y, x)).abs());
                if i + 1 < xs.len() {
                    err = err.max(t - kind.t(xs[i + 1], y));
                }
                if j + 1 < xs.len() {
                    err = err.max(t - kind.t(x, xs[j + 1]));
                }
                for other in &scaled {
                    err = err.max((other.t(x, y) - t).abs());
                }
                for &z in &xs {
                    err = err.max((kind.t(t, z) - kind.t(x, kind.t(y, z))).abs());
                }
            }
        }
        if kind.is_strict() {
            let triple = NormalTriple::from_kind(kind).unwrap();
            for &x in &xs {
                for &y in &xs {
                    let s = triple.conorm(triple.tnorm(x, y), triple.tnorm(x, triple.negation(y)));
                    err = err.max((s - x).abs());
                }
            }
        }
    }
    (
        err < 1e-10 && archimedean,
        format!(
            "{} norms, max error {err:.2e}, archimedean {}",
            kinds.len(),
            if archimedean { "ok" } else { "violated" }
        ),
    )
}

// 2 -------------------------------------------------------------------------

fn cuts(p: &AlphaProfile) -> Cuts {
    Cuts {
        levels: p.levels().to_vec(),
        lo: p.lo().to_vec(),
        hi: p.hi().to_vec(),
    }
}

/// Largest endpoint gap in units of one grid step of the input.
fn gap_in_steps(base: &AlphaProfile, got: &AlphaProfile, want: &Cuts) -> f64 {
    let unit = base.grid().step() * oracle::max_slope(&cuts(base));
    oracle::max_gap(want, got.lo(), got.hi()) / unit
}

fn nfk_oracle() -> Verdict {
    let grid = AlphaGrid::uniform(2001, AlphaGrid::DEFAULT_MIN).unwrap();
    let shapes = [
        AlphaProfile::triangular(grid.clone(), -1.0, 0.0, 2.0).unwrap(),
        AlphaProfile::trapezoidal(grid.clone(), 0.0, 1.0, 2.0, 4.0).unwrap(),
    ];
    let norms: [Norm; 2] = [PRODUCT, LUKASIEWICZ];
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for a in &shapes {
        for norm in norms {
            let kind: TNormKind = norm.name.parse().unwrap();
            for n in [3, 5] {
                let got = median_power(a, n, &kind).unwrap().profile;
                let want = oracle::median_count_scan(&cuts(a), n, norm);
                worst = worst.max(gap_in_steps(a, &got, &want));
                cases += 1;
            }
            for n in [2, 3] {
                let got = average_power(a, n, &kind, EnvelopePolicy::Reject)
                    .unwrap()
                    .profile;
                let want = oracle::average_scan(&cuts(a), n, norm);
                worst = worst.max(gap_in_steps(a, &got, &want));
                cases += 1;
            }
        }
    }
    (
        worst <= 2.0,
        format!("{cases} cases, worst gap {worst:.3} grid steps (limit 2)"),
    )
}

// 3 -------------------------------------------------------------------------

fn median_lln() -> Verdict {
    let base = AlphaProfile::triangular(AlphaGrid::default(), -1.0, 0.0, 1.0).unwrap();
    let step = base.grid().step();
    let spec = LlnSpec::new(base, Statistic::Median, TNormKind::Product, 199);
    let (profiles, report) = lln_sequence(&spec).unwrap();
    let mut worst: f64 = 0.0;
    let mut picked = Vec::new();
    for n in [3usize, 9, 49, 199] {
        let d = report.rows[n - 1].median;
        let expected = 1.0 - 0.1f64.powf(2.0 / (n as f64 + 1.0));
        worst = worst.max((d - expected).abs());
        picked.push(d);
    }
    let decreasing = picked.windows(2).all(|w| w[1] < w[0]);
    let nested = profiles
        .windows(2)
        .all(|w| (0..w[0].len()).all(|i| w[1].cut(i).is_subset_of(&w[0].cut(i))));
    (
        worst <= step && decreasing && nested,
        format!(
            "max deviation {worst:.2e} (step {step:.1e}), decreasing {decreasing}, nested {nested}"
        ),
    )
}

// 4 -------------------------------------------------------------------------

fn bias_bound() -> Verdict {
    let cfg = EstimatorConfig::new(TNormKind::Product).unwrap();
    let mut checked = 0usize;
    let mut over = [0usize; 2];
    let mut worst = [0.0f64; 2];
    for n in 2..=500usize {
        let parity = n % 2;
        for &alpha in AlphaGrid::default().levels() {
            let h = cfg.triple().h(alpha);
            let pair = parity_indices(n, h);
            let scaled = pair.bias(n, h).abs() * n as f64;
            checked += 1;
            worst[parity] = worst[parity].max(scaled);
            if scaled > 2.0 + 1e-9 {
                over[parity] += 1;
            }
        }
    }
    (
        over == [0, 0],
        format!(
            "{checked} pairs; even n: {} over 2/n (max n|b| {:.3}); odd n: {} over 2/n (max n|b| {:.3})",
            over[0], worst[0], over[1], worst[1]
        ),
    )
}

// 5 and 7 -------------------------------------------------------------------

fn gc_run(offset: Option<Interval>) -> ExperimentOutcome {
    let truth = FuzzyNumber::triangular(AlphaGrid::default(), -1.0, 0.0, 1.0).unwrap();
    let cfg = ExperimentConfig {
        estimator: EstimatorConfig::new(TNormKind::Product)
            .unwrap()
            .with_grid(truth.grid().clone())
            .with_epsilon(0.1)
            .unwrap(),
        truth,
        schedule: vec![100, 1_000, 10_000],
        trials: 20,
        seed: 20240611,
        offset,
    };
    run_experiment(&cfg).unwrap()
}

fn list(values: impl Iterator<Item = f64>) -> String {
    values
        .map(|v| format!("{v:.4}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn gc_pipeline() -> Verdict {
    let out = gc_run(None);
    let medians: Vec<f64> = out.report.medians().collect();
    let last = *medians.last().unwrap();
    (
        out.report.strictly_decreasing() && last < 0.05,
        format!(
            "median D_n [{}] at n = 1e2, 1e3, 1e4",
            list(medians.into_iter())
        ),
    )
}

fn crisp_shift() -> Verdict {
    let out = gc_run(Some(Interval::new(2.0, 3.0).unwrap()));
    let last = *out.modal_distances.last().unwrap();
    (
        last < 0.05,
        format!(
            "modal distance to [2, 3] [{}], median D_n [{}]",
            list(out.modal_distances.iter().copied()),
            list(out.report.medians())
        ),
    )
}

// 6 -------------------------------------------------------------------------

fn transform() -> Verdict {
    let grid = AlphaGrid::default();
    let uniform = from_cdf(|p| 2.0 * p - 1.0, grid.clone()).unwrap();
    let unit = AlphaProfile::triangular(grid.clone(), -1.0, 0.0, 1.0).unwrap();
    let gap = oracle::max_gap(&cuts(&unit), uniform.lo(), uniform.hi());
    let normal = Normal::new(0.0, 1.0).unwrap();
    let gauss = from_cdf(|p| normal.inverse_cdf(p), grid).unwrap();
    let cut = gauss.alpha_cut(0.05).unwrap();
    let normal_ok = (cut.lo() + 1.96).abs() <= 0.01 && (cut.hi() - 1.96).abs() <= 0.01;
    (
        // `1 - α/2` is rounded before the quantile sees it
        gap <= f64::EPSILON && normal_ok,
        format!(
            "uniform vs unit triangle max gap {gap:.1e}; normal cut at 0.05 [{:.5}, {:.5}]",
            cut.lo(),
            cut.hi()
        ),
    )
}

// 8 -------------------------------------------------------------------------

type RealFn = fn(f64) -> f64;

fn modal_identities() -> Verdict {
    let grid = AlphaGrid::default();
    let family = [
        AlphaProfile::triangular(grid.clone(), -1.0, 0.0, 1.0).unwrap(),
        AlphaProfile::triangular(grid.clone(), 0.5, 2.0, 7.0).unwrap(),
        AlphaProfile::trapezoidal(grid.clone(), -3.0, -1.0, 1.0, 2.0).unwrap(),
        AlphaProfile::trapezoidal(grid.clone(), 1.0, 2.0, 2.5, 5.0).unwrap(),
    ];
    let kinds = [
        TNormKind::Product,
        TNormKind::Lukasiewicz,
        TNormKind::Minimum,
    ];
    let mut checks = 0;
    let mut misses = 0;
    let unary: [RealFn; 2] = [f64::exp, |x| 2.0 * x];
    for a in &family {
        let m = a.modal();
        for f in unary {
            let image = unary_image(a, f, Monotonicity::Increasing).unwrap();
            checks += 1;
            misses += usize::from(image.modal() != Interval::new(f(m.lo()), f(m.hi())).unwrap());
        }
        for b in &family {
            let n = b.modal();
            for kind in &kinds {
                for (op, want) in [
                    (BinaryOp::add(), (m.lo() + n.lo(), m.hi() + n.hi())),
                    (BinaryOp::sub(), (m.lo() - n.hi(), m.hi() - n.lo())),
                    (
                        BinaryOp::average(),
                        (0.5 * (m.lo() + n.lo()), 0.5 * (m.hi() + n.hi())),
                    ),
                ] {
                    let image = nfk_binary(&op, a, b, kind).unwrap();
                    checks += 1;
                    misses += usize::from(image.modal() != Interval::new(want.0, want.1).unwrap());
                }
            }
        }
    }
    (
        misses == 0,
        format!("{checks} identities, {misses} inexact"),
    )
}

// 9 -------------------------------------------------------------------------

fn random_profile(rng: &mut ChaCha8Rng) -> AlphaProfile {
    let count = rng.random_range(1..=60);
    let mut levels: Vec<f64> = (1..count).map(|_| rng.random_range(0.0005..1.0)).collect();
    levels.push(1.0);
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let scale = 10f64.powf(rng.random_range(-3.0..3.0));
    let center = rng.random_range(-1.0..1.0) * scale;
    let half = rng.random_range(0.0..1.0) * scale;
    let m = levels.len();
    let mut lo = vec![center - half; m];
    let mut hi = vec![center + half; m];
    for i in (0..m - 1).rev() {
        lo[i] = lo[i + 1] - rng.random_range(0.0..0.1) * scale;
        hi[i] = hi[i + 1] + rng.random_range(0.0..0.1) * scale;
    }
    AlphaProfile::new(AlphaGrid::from_levels(levels).unwrap(), lo, hi).unwrap()
}

fn exit_code(args: &[&Path]) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_fuzzyvar"))
        .arg("distance")
        .args(args)
        .output()
        .unwrap()
        .status
        .code()
}

fn round_trip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut stable = 0;
    for _ in 0..100 {
        let p = random_profile(&mut rng);
        let csv = profile_to_csv(&p);
        let json = profile_to_json(&p);
        let from_csv = profile_from_csv(&csv).unwrap();
        let from_json = profile_from_json(&json).unwrap();
        if from_csv == p
            && from_json == p
            && profile_to_csv(&from_csv) == csv
            && profile_to_json(&from_json) == json
        {
            stable += 1;
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.csv");
    std::fs::write(&good, "alpha,lo,hi\n0.5,-1,1\n1,0,0\n").unwrap();
    let bad_csv = dir.path().join("bad.csv");
    std::fs::write(&bad_csv, "alpha,lo,hi\n0.5,-1,1\n1,-2,0\n").unwrap();
    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, r#"{"grid":[0.5,1],"lo":[0,0],"hi":[1,2]}"#).unwrap();
    let codes = [
        exit_code(&[&good, &good]),
        exit_code(&[&bad_csv, &good]),
        exit_code(&[&good, &bad_json]),
    ];
    (
        stable == 100 && codes == [Some(0), Some(3), Some(3)],
        format!(
            "{stable}/100 byte-stable; exit codes good {:?}, non-nested CSV {:?}, non-nested JSON {:?}",
            codes[0], codes[1], codes[2]
        ),
    )
}

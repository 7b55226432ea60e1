//! Plancherel sampling and limit-shape geometry.
//!
//! Shapes are drawn by pushing a uniform permutation (unbiased Fisher-Yates
//! shuffle) through row insertion, which is exactly the Plancherel measure.
//! Trials are keyed by index: trial `i` uses the ChaCha8 stream `i` of the
//! run's seed, so serial and parallel executions produce identical batches.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::insertion::LateralScanner;
use crate::model::Partition;

/// RNG identifier recorded in batch metadata.
pub const RNG_ID: &str = "chacha8:stream-per-trial";

/// The generator for one trial: the run seed with the trial index as the
/// ChaCha stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws a shape from the Plancherel measure on partitions of `n`: the
/// insertion shape of a uniform permutation.
pub fn sample_shape(n: usize, rng: &mut impl Rng) -> Partition {
    let word = random_permutation_word(n, rng);
    insertion_shape(&word)
}

fn random_permutation_word(n: usize, rng: &mut impl Rng) -> Vec<u32> {
    let mut word: Vec<u32> = (1..=n as u32).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        word.swap(i, j);
    }
    word
}

fn insertion_shape(word: &[u32]) -> Partition {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &x in word {
        let mut carry = x;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![carry]);
                break;
            }
            let row = &mut rows[r];
            let pos = row.partition_point(|&e| e <= carry);
            if pos == row.len() {
                row.push(carry);
                break;
            }
            carry = std::mem::replace(&mut row[pos], carry);
            r += 1;
        }
    }
    Partition::new(rows.iter().map(|r| r.len() as u32).collect())
        .expect("insertion row lengths decrease weakly")
}

/// Number of standard Young tableaux of the given shape, by the
/// corner-removal recursion with memoization.
pub fn syt_count(shape: &Partition) -> u64 {
    fn rec(parts: &mut Vec<u32>, memo: &mut HashMap<Vec<u32>, u64>) -> u64 {
        if parts.is_empty() {
            return 1;
        }
        if let Some(&v) = memo.get(parts) {
            return v;
        }
        let mut total = 0u64;
        for i in 0..parts.len() {
            // A corner is removable when the row below stays no shorter.
            let removable = i + 1 == parts.len() || parts[i] > parts[i + 1];
            if !removable {
                continue;
            }
            parts[i] -= 1;
            let popped = if parts[i] == 0 { parts.pop().is_some() } else { false };
            total = total
                .checked_add(rec(parts, memo))
                .expect("SYT count overflowed u64");
            if popped {
                parts.push(0);
            }
            parts[i] += 1;
        }
        memo.insert(parts.clone(), total);
        total
    }
    let mut parts = shape.parts().to_vec();
    rec(&mut parts, &mut HashMap::new())
}

/// The Plancherel probability `f_lambda^2 / n!` of every shape of `n`.
pub fn plancherel_probabilities(n: u32) -> Vec<(Partition, f64)> {
    let factorial: f64 = (1..=u64::from(n)).map(|i| i as f64).product();
    Partition::all_of(n)
        .into_iter()
        .map(|shape| {
            let f = syt_count(&shape) as f64;
            let prob = f * f / factorial;
            (shape, prob)
        })
        .collect()
}

/// Both coordinates of the limit-shape curve at angle `theta`.
pub fn gamma_point(theta: f64) -> Result<(f64, f64)> {
    if !(-PI / 2.0..=PI / 2.0).contains(&theta) {
        return Err(Error::DomainError { theta });
    }
    Ok((gamma_x(theta), gamma_y(theta)))
}

fn gamma_x(theta: f64) -> f64 {
    (2.0 * theta / PI + 1.0) * theta.sin() + (2.0 / PI) * theta.cos()
}

fn gamma_y(theta: f64) -> f64 {
    (2.0 * theta / PI - 1.0) * theta.sin() + (2.0 / PI) * theta.cos()
}

/// A sampled rendering of the boundary curve on a uniform theta grid.
#[derive(Debug, Clone, Serialize)]
pub struct LimitShapeCurve {
    pub points: Vec<CurvePoint>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurvePoint {
    pub theta: f64,
    pub x: f64,
    pub y: f64,
}

/// Samples the curve at `points` angles spanning `[-pi/2, pi/2]` inclusive.
pub fn limit_shape_curve(points: usize) -> LimitShapeCurve {
    let count = points.max(2);
    let pts = (0..count)
        .map(|i| {
            let theta = -PI / 2.0 + PI * i as f64 / (count - 1) as f64;
            CurvePoint { theta, x: gamma_x(theta), y: gamma_y(theta) }
        })
        .collect();
    LimitShapeCurve { points: pts }
}

const BOUNDARY_GRID: usize = 4096;

/// The boundary of the limit region as a function `y = B(x)` on `[0, 2]`.
///
/// `gamma_x` is strictly increasing on the closed interval, so `theta(x)` is
/// recovered by bisection and tabulated on a uniform grid with linear
/// interpolation between knots.
#[derive(Debug, Clone)]
pub struct GammaBoundary {
    ys: Vec<f64>,
}

impl GammaBoundary {
    pub fn new() -> Self {
        let ys = (0..=BOUNDARY_GRID)
            .map(|i| {
                let x = 2.0 * i as f64 / BOUNDARY_GRID as f64;
                gamma_y(invert_gamma_x(x))
            })
            .collect();
        GammaBoundary { ys }
    }

    /// Boundary height at `x`; 0 beyond the region's right edge.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 2.0;
        }
        if x >= 2.0 {
            return 0.0;
        }
        let t = x / 2.0 * BOUNDARY_GRID as f64;
        let i = t.floor() as usize;
        let frac = t - i as f64;
        self.ys[i] * (1.0 - frac) + self.ys[i + 1] * frac
    }
}

impl Default for GammaBoundary {
    fn default() -> Self {
        Self::new()
    }
}

fn invert_gamma_x(x: f64) -> f64 {
    let mut lo = -PI / 2.0;
    let mut hi = PI / 2.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if gamma_x(mid) < x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Comparison slack for the containment tests; grid semantics, stated as
/// part of the check's contract.
const CONTAIN_TOL: f64 = 1e-9;

/// Default number of curve samples for the inner containment check.
pub const INNER_GRID_POINTS: usize = 512;

/// Checks `(1 - eps) * Gamma <= scaled staircase <= (1 + eps) * Gamma` for the
/// planar set of `lambda` scaled by `1 / sqrt(n)`.
///
/// Outer: every outer corner of the staircase lies inside the enlarged
/// region. Inner: the staircase dominates the shrunken boundary at every
/// staircase corner plus a `grid`-point sweep of the curve, and covers the
/// shrunken region's full width.
pub fn shape_within_with(
    boundary: &GammaBoundary,
    lambda: &Partition,
    n: usize,
    epsilon: f64,
    grid: usize,
) -> (bool, bool) {
    assert!(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    assert_eq!(lambda.weight(), n as u64, "lambda must be a partition of n");
    let scale = 1.0 / (n as f64).sqrt();
    let parts = lambda.parts();
    let k = parts.len();

    let outer_factor = 1.0 + epsilon;
    let mut outer_ok = true;
    for (i, &part) in parts.iter().enumerate() {
        let x = (i as f64 + 1.0) * scale;
        let y = part as f64 * scale;
        if x > 2.0 * outer_factor + CONTAIN_TOL {
            outer_ok = false;
            break;
        }
        if y > outer_factor * boundary.eval(x / outer_factor) + CONTAIN_TOL {
            outer_ok = false;
            break;
        }
    }

    let inner_factor = 1.0 - epsilon;
    let staircase = |x: f64| -> f64 {
        if x < 0.0 {
            return 2.0 * inner_factor; // left of the region: nothing to dominate
        }
        let strip = (x / scale).ceil().max(1.0) as usize;
        if strip > k {
            0.0
        } else {
            parts[strip - 1] as f64 * scale
        }
    };
    let mut inner_ok = k as f64 * scale + CONTAIN_TOL >= 2.0 * inner_factor;
    if inner_ok {
        // Strip left edges: the shrunken boundary is decreasing, so its
        // supremum over each strip sits at the strip's left edge.
        for i in 1..=k {
            let x_left = (i as f64 - 1.0) * scale;
            if x_left >= 2.0 * inner_factor {
                break;
            }
            let curve = inner_factor * boundary.eval(x_left / inner_factor);
            if curve > parts[i - 1] as f64 * scale + CONTAIN_TOL {
                inner_ok = false;
                break;
            }
        }
    }
    if inner_ok {
        for g in 0..=grid {
            let theta = -PI / 2.0 + PI * g as f64 / grid as f64;
            let x = inner_factor * gamma_x(theta);
            let y = inner_factor * gamma_y(theta);
            if y > staircase(x) + CONTAIN_TOL {
                inner_ok = false;
                break;
            }
        }
    }
    (inner_ok, outer_ok)
}

/// As [`shape_within_with`], building the boundary table internally.
pub fn shape_within(lambda: &Partition, n: usize, epsilon: f64) -> (bool, bool) {
    shape_within_with(&GammaBoundary::new(), lambda, n, epsilon, INNER_GRID_POINTS)
}

/// True iff the shape has two columns of the same height. Also asserts the
/// pigeonhole implication: a first row of length at least `sqrt(2n)` forces a
/// repeat (compared exactly as `L^2 >= 2n`).
pub fn same_height_check(lambda: &Partition) -> bool {
    let repeated = lambda.has_repeated_column_height();
    let l = u64::from(lambda.first_row_len());
    if l * l >= 2 * lambda.weight() {
        assert!(repeated, "first row {l} forces a repeated column height in {lambda}");
    }
    repeated
}

/// Which per-trial statistic a batch estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleStat {
    /// Fraction of permutations whose insertion has a lateral bump.
    Lateral,
    /// Fraction of shapes with `L(lambda)^2 >= 2n`.
    FirstRow,
    /// Fraction of shapes passing both containment flags at this epsilon.
    Shape { epsilon: f64 },
}

impl SampleStat {
    pub fn name(&self) -> &'static str {
        match self {
            SampleStat::Lateral => "lateral",
            SampleStat::FirstRow => "firstrow",
            SampleStat::Shape { .. } => "shape",
        }
    }
}

/// A reproducible batch of seeded trials: identical `(n, trials, seed, stat)`
/// give identical output for any worker count.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TrialBatch {
    pub schema_version: u32,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub statistic: String,
    pub successes: u64,
    pub estimate_num: u64,
    pub estimate_den: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub rng: String,
}

/// Runs `trials` independent seeded trials of `stat` at size `n`.
pub fn run_trials(n: usize, trials: u64, seed: u64, stat: SampleStat) -> TrialBatch {
    let boundary = match stat {
        SampleStat::Shape { .. } => Some(GammaBoundary::new()),
        _ => None,
    };
    let successes: u64 = (0..trials)
        .into_par_iter()
        .map_init(
            LateralScanner::new,
            |scanner, trial| {
                let mut rng = trial_rng(seed, trial);
                let word = random_permutation_word(n, &mut rng);
                let hit = match stat {
                    SampleStat::Lateral => scanner.scan(&word),
                    SampleStat::FirstRow => {
                        let shape = insertion_shape(&word);
                        let l = u64::from(shape.first_row_len());
                        let hit = l * l >= 2 * n as u64;
                        if hit {
                            // Sample-wise implication: a long first row forces
                            // a repeated column height.
                            assert!(
                                same_height_check(&shape),
                                "implication violated at {shape}"
                            );
                        }
                        hit
                    }
                    SampleStat::Shape { epsilon } => {
                        let shape = insertion_shape(&word);
                        let (inner, outer) = shape_within_with(
                            boundary.as_ref().expect("boundary built for shape stat"),
                            &shape,
                            n,
                            epsilon,
                            INNER_GRID_POINTS,
                        );
                        inner && outer
                    }
                };
                u64::from(hit)
            },
        )
        .sum();
    let g = {
        let mut a = successes.max(1);
        let mut b = trials;
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.max(1)
    };
    let estimate = successes as f64 / trials as f64;
    TrialBatch {
        schema_version: 1,
        n,
        trials,
        seed,
        statistic: match stat {
            SampleStat::Shape { epsilon } => format!("shape(epsilon={epsilon})"),
            other => other.name().to_string(),
        },
        successes,
        estimate_num: successes / g,
        estimate_den: trials / g,
        estimate,
        stderr: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        rng: RNG_ID.to_string(),
    }
}

/// One term of the half-ratio product `a_n = (1/2)(3/4)...((2n-1)/(2n))`,
/// with the rescaling `a_n * sqrt(pi * n)` that tends to 1 from below.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StirlingRow {
    pub n: u64,
    pub a_n: f64,
    pub scaled: f64,
}

/// Rows `1..=n_max` in log-space: `log a_n` accumulates `log1p(-1/(2i))`.
pub fn stirling_rows(n_max: u64) -> Vec<StirlingRow> {
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut log_a = 0.0f64;
    for n in 1..=n_max {
        log_a += (-1.0 / (2.0 * n as f64)).ln_1p();
        let a_n = log_a.exp();
        let scaled = (log_a + 0.5 * (PI * n as f64).ln()).exp();
        rows.push(StirlingRow { n, a_n, scaled });
    }
    rows
}

/// Exact rational `a_1..=a_{n_max}` by the recurrence
/// `a_n = a_{n-1} * (2n-1) / (2n)`. Bounded at 1000 terms.
pub fn stirling_exact_ratios(n_max: u64) -> Result<Vec<Ratio<BigInt>>> {
    if n_max > 1000 {
        return Err(Error::BoundExceeded { n: n_max as usize, bound: 1000, what: "exact ratios" });
    }
    let mut out = Vec::with_capacity(n_max as usize);
    let mut a = Ratio::<BigInt>::one();
    for n in 1..=n_max {
        a *= Ratio::new(BigInt::from(2 * n - 1), BigInt::from(2 * n));
        out.push(a.clone());
    }
    Ok(out)
}

/// Closed form `a_n = (2n)! / (2^{2n} (n!)^2)`, used as the independent
/// oracle for the recurrence.
pub fn stirling_closed_form(n: u64) -> Ratio<BigInt> {
    let mut num = BigInt::one();
    for i in 1..=2 * n {
        num *= BigInt::from(i);
    }
    let mut den = BigInt::one();
    for i in 1..=n {
        den *= BigInt::from(i);
    }
    den = &den * &den;
    den *= BigInt::from(2u8).pow(2 * n as u32);
    Ratio::new(num, den)
}

/// Streaming check of the envelope `|a_n sqrt(pi n) - 1| <= 1/(7n)` and of
/// the monotone increase of the rescaled sequence, up to `n_max`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EnvelopeReport {
    pub n_max: u64,
    pub holds: bool,
    pub first_violation: Option<u64>,
    /// max over n of `n * |a_n sqrt(pi n) - 1|`; the envelope asserts <= 1/7.
    pub max_scaled_deviation: f64,
}

pub fn stirling_envelope_check(n_max: u64) -> EnvelopeReport {
    let mut log_a = 0.0f64;
    let mut prev_log_scaled = f64::NEG_INFINITY;
    let mut max_dev = 0.0f64;
    for n in 1..=n_max {
        log_a += (-1.0 / (2.0 * n as f64)).ln_1p();
        let log_scaled = log_a + 0.5 * (PI * n as f64).ln();
        let scaled = log_scaled.exp();
        let dev = (scaled - 1.0).abs() * n as f64;
        max_dev = max_dev.max(dev);
        if dev > 1.0 / 7.0 || log_scaled <= prev_log_scaled {
            return EnvelopeReport {
                n_max,
                holds: false,
                first_violation: Some(n),
                max_scaled_deviation: max_dev,
            };
        }
        prev_log_scaled = log_scaled;
    }
    EnvelopeReport { n_max, holds: true, first_violation: None, max_scaled_deviation: max_dev }
}

/// Exact comparison helper: rational `a_n * sqrt(pi n)` is awkward, so the
/// envelope at exact scale is checked as `(7n)^2 (a_n sqrt(pi n) - 1)^2 <= 1`
/// would be; instead tests compare the rational `a_n` against the closed
/// form and leave the envelope to the log-space path.
pub fn ratio_to_f64(r: &Ratio<BigInt>) -> f64 {
    // Ratio::to_f64 can overflow for huge numerators; go through a scaled
    // integer division instead.
    let scale = BigInt::from(1u64 << 60);
    let scaled = (r.numer() * &scale) / r.denom();
    scaled.abs().to_f64().map(|v| v / (1u64 << 60) as f64).unwrap_or(f64::NAN)
        * if r.is_negative() { -1.0 } else { 1.0 }
}

//! Empirical inequality estimators: pairwise mean difference, the
//! order-statistic Gini, Lorenz and dissipation curves, and bounds for
//! data that survive only as grouped (count, mean) summaries.
//!
//! All Gini values default to the sample convention, which divides the
//! pairwise spread by `n * (n - 1)` pairs; under it the maximally
//! concentrated sample `(0, ..., 0, T)` scores exactly 1.

use num_bigint::BigInt;

use crate::exact::Rational;
use crate::{Error, Result};

/// Gini normalization conventions.
///
/// The pair count in the mean-difference denominator is `n * (n - 1)`
/// (sample) or `n^2` (population). The two differ by the factor
/// `(n - 1) / n`; everything in this crate computes the sample form
/// and converts on request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Denominator `n * (n - 1)`: excludes self-pairs, reaches 1 at
    /// full concentration for every `n`.
    Sample,
    /// Denominator `n^2`: includes self-pairs, tops out at `(n-1)/n`.
    Population,
}

impl Convention {
    /// Converts a sample-convention Gini value into this convention.
    pub fn from_sample(self, gini: f64, n: usize) -> f64 {
        match self {
            Convention::Sample => gini,
            Convention::Population => gini * (n as f64 - 1.0) / n as f64,
        }
    }

    /// Converts an exact sample-convention Gini into this convention,
    /// staying in rational arithmetic. Populations below 2 have no
    /// pairs to renormalize and pass through unchanged.
    pub fn from_sample_exact(self, gini: &Rational, n: u64) -> Rational {
        match self {
            Convention::Sample => gini.clone(),
            Convention::Population if n < 2 => gini.clone(),
            Convention::Population => gini * Rational::new(BigInt::from(n - 1), BigInt::from(n)),
        }
    }
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Convention::Sample => f.write_str("sample"),
            Convention::Population => f.write_str("population"),
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sample" => Ok(Convention::Sample),
            "population" => Ok(Convention::Population),
            other => Err(Error::Domain(format!(
                "unknown convention {other:?}, expected \"sample\" or \"population\""
            ))),
        }
    }
}

/// Compensated (Neumaier) accumulator; running sums stay accurate to
/// a few ulps regardless of length, which keeps the estimators within
/// the 1e-12 agreement budget at n = 10^6.
#[derive(Debug, Clone, Copy, Default)]
struct StableSum {
    sum: f64,
    compensation: f64,
}

impl StableSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

fn stable_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut acc = StableSum::default();
    for x in values {
        acc.add(x);
    }
    acc.value()
}

/// A vector of observed incomes: at least two values, all finite and
/// nonnegative. Zero incomes are allowed; Gini and Lorenz operations
/// additionally require a positive total.
#[derive(Debug, Clone, PartialEq)]
pub struct IncomeSample {
    values: Vec<f64>,
}

impl IncomeSample {
    /// Validates and wraps a raw income vector.
    ///
    /// # Errors
    ///
    /// [`Error::TooFew`] for fewer than two values, and
    /// [`Error::InvalidValue`] for a negative or non-finite entry.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFew {
                min: 2,
                got: values.len(),
            });
        }
        for (index, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidValue {
                    index,
                    reason: format!("{v} is not finite"),
                });
            }
            if v < 0.0 {
                return Err(Error::InvalidValue {
                    index,
                    reason: format!("income {v} is negative"),
                });
            }
        }
        Ok(Self { values })
    }

    /// The observations, in insertion order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of observations (always at least 2).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; present for container-API symmetry.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Total income, accumulated with compensation.
    pub fn total(&self) -> f64 {
        stable_sum(self.values.iter().copied())
    }

    /// Mean income.
    pub fn mean(&self) -> f64 {
        self.total() / self.len() as f64
    }

    fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        // Equal values are interchangeable, so sort stability cannot
        // affect any statistic computed here.
        v.sort_unstable_by(f64::total_cmp);
        v
    }
}

/// Mean absolute difference over all ordered pairs,
/// `(1 / (n(n-1))) * sum_{i != j} |x_i - x_j|`.
///
/// Evaluated by the literal O(n^2) double loop, accumulating in index
/// order (outer `i`, inner `j`); this function is deliberately naive
/// so it can serve as the oracle for [`gini_sorted`].
///
/// # Examples
///
/// ```
/// use graduation::estimators::{mean_difference_pairwise, IncomeSample};
///
/// let pair = IncomeSample::new(vec![1.0, 4.0]).unwrap();
/// assert_eq!(mean_difference_pairwise(&pair), 3.0);
/// ```
pub fn mean_difference_pairwise(sample: &IncomeSample) -> f64 {
    let v = sample.values();
    let n = v.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += (v[i] - v[j]).abs();
            }
        }
    }
    acc / (n as f64 * (n as f64 - 1.0))
}

/// Gini index from order statistics, in the sample convention:
///
/// ```text
/// G = (2 * sum_i i * x_(i) - (n+1) * sum_i x_(i)) / ((n-1) * sum_i x_(i))
/// ```
///
/// with `x_(1) <= ... <= x_(n)` the ascending sort and 1-based ranks.
/// Runs in O(n log n) and equals `mean_difference_pairwise / (2 * mean)`
/// up to rounding.
///
/// # Errors
///
/// [`Error::ZeroTotal`] when every income is zero.
///
/// # Examples
///
/// ```
/// use graduation::estimators::{gini_sorted, IncomeSample};
///
/// let top_heavy = IncomeSample::new(vec![0.0, 0.0, 0.0, 7.0]).unwrap();
/// assert_eq!(gini_sorted(&top_heavy).unwrap(), 1.0);
/// ```
pub fn gini_sorted(sample: &IncomeSample) -> Result<f64> {
    let sorted = sample.sorted();
    let n = sorted.len() as f64;
    let mut total = StableSum::default();
    let mut weighted = StableSum::default();
    for (i, &x) in sorted.iter().enumerate() {
        total.add(x);
        weighted.add((i as f64 + 1.0) * x);
    }
    let total = total.value();
    if total <= 0.0 {
        return Err(Error::ZeroTotal);
    }
    Ok((2.0 * weighted.value() - (n + 1.0) * total) / ((n - 1.0) * total))
}

/// Piecewise-linear Lorenz curve: cumulative income share `L` against
/// cumulative population share `p`, poorest first.
///
/// Invariants, enforced at construction: starts at `(0, 0)`, ends at
/// `(1, 1)`, both coordinates nondecreasing, `L <= p` at every vertex,
/// and convex (segment slopes nondecreasing). Small floating-point
/// slack (1e-9 absolute) is tolerated on each check.
#[derive(Debug, Clone, PartialEq)]
pub struct LorenzCurve {
    points: Vec<(f64, f64)>,
}

impl LorenzCurve {
    /// Validates an explicit vertex list as a Lorenz curve.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidCurve`] naming the first violated invariant.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        const SLACK: f64 = 1e-9;
        if points.len() < 2 {
            return Err(Error::InvalidCurve("needs at least two vertices".into()));
        }
        let (p0, l0) = points[0];
        let (pn, ln) = points[points.len() - 1];
        if p0.abs() > SLACK || l0.abs() > SLACK {
            return Err(Error::InvalidCurve(format!(
                "must start at (0, 0), starts at ({p0}, {l0})"
            )));
        }
        if (pn - 1.0).abs() > SLACK || (ln - 1.0).abs() > SLACK {
            return Err(Error::InvalidCurve(format!(
                "must end at (1, 1), ends at ({pn}, {ln})"
            )));
        }
        let mut previous_slope = f64::NEG_INFINITY;
        for w in points.windows(2) {
            let (pa, la) = w[0];
            let (pb, lb) = w[1];
            if !pb.is_finite() || !lb.is_finite() || !pa.is_finite() || !la.is_finite() {
                return Err(Error::InvalidCurve("vertex is not finite".into()));
            }
            let dp = pb - pa;
            let dl = lb - la;
            if dp < -SLACK || dl < -SLACK {
                return Err(Error::InvalidCurve(format!(
                    "not monotone between ({pa}, {la}) and ({pb}, {lb})"
                )));
            }
            if lb > pb + SLACK {
                return Err(Error::InvalidCurve(format!(
                    "income share {lb} exceeds population share {pb}"
                )));
            }
            if dp <= f64::EPSILON {
                if dl > SLACK {
                    return Err(Error::InvalidCurve("vertical jump in income share".into()));
                }
                continue; // zero-width segment carries no slope
            }
            let slope = dl / dp;
            if slope < previous_slope - SLACK * (1.0 + previous_slope.abs()) {
                return Err(Error::InvalidCurve(format!(
                    "not convex: slope falls from {previous_slope} to {slope}"
                )));
            }
            previous_slope = slope;
        }
        Ok(Self { points })
    }

    /// The vertices, in order from `(0, 0)` to `(1, 1)`.
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

/// Builds the empirical Lorenz curve of a sample: vertices
/// `(k/n, cumulative_share_k)` for `k = 0..=n` over the ascending
/// sort, so the poorest come first.
///
/// # Errors
///
/// [`Error::ZeroTotal`] when every income is zero (the curve is
/// undefined without income to share).
///
/// # Examples
///
/// ```
/// use graduation::estimators::{lorenz_curve, IncomeSample};
///
/// let sample = IncomeSample::new(vec![1.0, 3.0]).unwrap();
/// let curve = lorenz_curve(&sample).unwrap();
/// assert_eq!(curve.points(), &[(0.0, 0.0), (0.5, 0.25), (1.0, 1.0)]);
/// ```
pub fn lorenz_curve(sample: &IncomeSample) -> Result<LorenzCurve> {
    let sorted = sample.sorted();
    let total = stable_sum(sorted.iter().copied());
    if total <= 0.0 {
        return Err(Error::ZeroTotal);
    }
    let n = sorted.len();
    let mut points = Vec::with_capacity(n + 1);
    points.push((0.0, 0.0));
    let mut running = StableSum::default();
    for (k, &x) in sorted.iter().enumerate() {
        running.add(x);
        let p = (k + 1) as f64 / n as f64;
        let share = if k + 1 == n {
            1.0 // pin the endpoint; running/total is 1 up to rounding
        } else {
            running.value() / total
        };
        points.push((p, share));
    }
    LorenzCurve::new(points)
}

/// Gini index from a Lorenz curve: twice the area between the curve
/// and the diagonal (exact trapezoids), rescaled by `n / (n - 1)` into
/// the sample convention.
///
/// For the curve of a sample of size `n` this reproduces
/// [`gini_sorted`] up to rounding.
///
/// # Errors
///
/// [`Error::Domain`] when `n < 2`.
pub fn gini_from_lorenz(curve: &LorenzCurve, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "gini needs a population of at least 2, got {n}"
        )));
    }
    let mut area = StableSum::default();
    for w in curve.points().windows(2) {
        let (pa, la) = w[0];
        let (pb, lb) = w[1];
        area.add((pb - pa) * (la + lb) / 2.0);
    }
    let population_gini = 1.0 - 2.0 * area.value();
    Ok(population_gini * n as f64 / (n as f64 - 1.0))
}

/// Empirical dissipation (incomplete first moment) at `x`: the share
/// of total income held by units earning at most `x`.
///
/// # Errors
///
/// [`Error::ZeroTotal`] when every income is zero.
///
/// # Examples
///
/// ```
/// use graduation::estimators::{dissipation_point, IncomeSample};
///
/// let sample = IncomeSample::new(vec![1.0, 2.0, 3.0]).unwrap();
/// assert_eq!(dissipation_point(&sample, 2.0).unwrap(), 0.5);
/// ```
pub fn dissipation_point(sample: &IncomeSample, x: f64) -> Result<f64> {
    let total = sample.total();
    if total <= 0.0 {
        return Err(Error::ZeroTotal);
    }
    let held = stable_sum(sample.values().iter().copied().filter(|&v| v <= x));
    Ok(held / total)
}

/// One bin of grouped income data: how many units it holds and their
/// mean income.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupBin {
    /// Number of income units in the bin (zero-count bins are legal
    /// and carry no information).
    pub count: u64,
    /// Mean income of the bin's units.
    pub mean: f64,
}

/// Grouped income data: ordered bins with nondecreasing means and at
/// least two units in total. Bins are order-contiguous: every income
/// in a bin is at least every income in the bins before it.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupedData {
    bins: Vec<GroupBin>,
}

impl GroupedData {
    /// Validates bin order and population size.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidValue`] for a negative or non-finite mean,
    /// [`Error::UnsortedBins`] when means decrease, and
    /// [`Error::TooFew`] when the bins hold fewer than two units.
    pub fn new(bins: Vec<GroupBin>) -> Result<Self> {
        let mut previous = f64::NEG_INFINITY;
        let mut total: u64 = 0;
        for (index, bin) in bins.iter().enumerate() {
            if !bin.mean.is_finite() || bin.mean < 0.0 {
                return Err(Error::InvalidValue {
                    index,
                    reason: format!("bin mean {} is not a nonnegative real", bin.mean),
                });
            }
            if bin.mean < previous {
                return Err(Error::UnsortedBins { index });
            }
            previous = bin.mean;
            total += bin.count;
        }
        if total < 2 {
            return Err(Error::TooFew {
                min: 2,
                got: total as usize,
            });
        }
        Ok(Self { bins })
    }

    /// The bins, in ascending-mean order.
    pub fn bins(&self) -> &[GroupBin] {
        &self.bins
    }

    /// Total number of units across bins.
    pub fn total_count(&self) -> u64 {
        self.bins.iter().map(|b| b.count).sum()
    }

    /// Total income across bins.
    pub fn total_income(&self) -> f64 {
        stable_sum(self.bins.iter().map(|b| b.count as f64 * b.mean))
    }
}

/// Largest within-bin pairwise spread `sum_{a<b} |x_a - x_b|`
/// achievable by `count` units confined to `[lo, hi]` with a fixed
/// mean. The spread is convex in each unit, so the maximum sits at a
/// vertex of the constraint polytope: every unit at a bound except at
/// most one. Candidates are therefore `a` units at `hi`, `k` at `lo`,
/// and at most one leftover unit between them.
fn max_within_bin_spread(count: u64, mean: f64, lo: f64, hi: f64) -> f64 {
    if count < 2 || mean <= lo {
        return 0.0;
    }
    let c = count as f64;
    if !hi.is_finite() {
        // No ceiling: push one unit up, pin the rest to the floor.
        return c * (c - 1.0) * (mean - lo);
    }
    let width = hi - lo;
    if width <= 0.0 {
        return 0.0;
    }
    let target = c * ((mean - lo) / width).clamp(0.0, 1.0); // continuous optimum for `a`
    let tolerance = 1e-9 * (1.0 + hi.abs());
    let mut best = 0.0f64;

    // Family with one fractional unit at v: feasibility pins `a` into
    // a window of width one around the continuous optimum.
    let base = target.floor();
    for candidate in [base - 1.0, base, base + 1.0] {
        if !(0.0..=c - 1.0).contains(&candidate) {
            continue;
        }
        let k = c - 1.0 - candidate;
        let v = c * mean - k * lo - candidate * hi;
        if v < lo - tolerance || v > hi + tolerance {
            continue;
        }
        let v = v.clamp(lo, hi);
        let spread = k * candidate * width + k * (v - lo) + candidate * (hi - v);
        best = best.max(spread);
    }

    // Pure two-point family, valid only when the mean balances on
    // integer counts exactly.
    let rounded = target.round();
    if (target - rounded).abs() <= 1e-9 * c.max(1.0) && (0.0..=c).contains(&rounded) {
        best = best.max((c - rounded) * rounded * width);
    }
    best
}

/// Lower and upper Gini bounds for grouped data, sample convention.
///
/// The lower bound assumes perfect equality inside every bin (the
/// Lorenz polygon through the bin boundaries). The upper bound adds,
/// per bin, the largest within-bin spread consistent with the bin
/// mean and with unit incomes clipped to the neighboring bin means
/// (floor 0 for the first bin, unbounded for the last). Real microdata
/// compatible with the bins always lies inside these clips, so
/// `lower <= true Gini <= upper`.
///
/// A single nonempty bin resolves no inequality at all and returns
/// `(0, 0)`.
///
/// # Errors
///
/// [`Error::ZeroTotal`] when total income is zero.
///
/// # Examples
///
/// ```
/// use graduation::estimators::{grouped_gini_bounds, GroupBin, GroupedData};
///
/// let bins = vec![
///     GroupBin { count: 1, mean: 1.0 },
///     GroupBin { count: 1, mean: 3.0 },
/// ];
/// let data = GroupedData::new(bins).unwrap();
/// // singleton bins pin the microdata exactly: both bounds are 1/2
/// assert_eq!(grouped_gini_bounds(&data).unwrap(), (0.5, 0.5));
/// ```
pub fn grouped_gini_bounds(data: &GroupedData) -> Result<(f64, f64)> {
    let bins: Vec<GroupBin> = data.bins().iter().copied().filter(|b| b.count > 0).collect();
    let total_count = data.total_count();
    let total_income = data.total_income();
    if total_income <= 0.0 {
        return Err(Error::ZeroTotal);
    }
    if bins.len() < 2 {
        // One bin: between-bin inequality is zero and the within-bin
        // support clips to the bin's own mean.
        return Ok((0.0, 0.0));
    }

    // Between-bin spread is the same for every microdata realization
    // because bins are order-contiguous: for j < k each cross pair
    // contributes exactly (mu_k - mu_j) on average.
    let mut cross = StableSum::default();
    for (j, low) in bins.iter().enumerate() {
        for high in &bins[j + 1..] {
            cross.add(low.count as f64 * high.count as f64 * (high.mean - low.mean));
        }
    }
    let denominator = (total_count as f64 - 1.0) * total_income;
    let lower = cross.value() / denominator;

    let mut within = StableSum::default();
    for (idx, bin) in bins.iter().enumerate() {
        let lo = if idx == 0 { 0.0 } else { bins[idx - 1].mean };
        let hi = if idx + 1 == bins.len() {
            f64::INFINITY
        } else {
            bins[idx + 1].mean
        };
        within.add(max_within_bin_spread(bin.count, bin.mean, lo, hi));
    }
    let upper = (cross.value() + within.value()) / denominator;
    Ok((lower, upper))
}

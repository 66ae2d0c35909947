//! Cross-module invariants on randomized inputs, plus the seeded
//! Monte Carlo suite checking sampled Gini indices against the closed
//! forms of each distribution family.

use graduation::distributions::{
    gini_of, has_finite_variance, match_to_gini, sample, DistributionKind, DistributionSpec,
};
use graduation::estimators::{
    gini_from_lorenz, gini_sorted, grouped_gini_bounds, lorenz_curve, mean_difference_pairwise,
    Convention, GroupBin, GroupedData, IncomeSample, LorenzCurve,
};
use graduation::exact::Rational;
use graduation::model::{asymptotic_gini, graduate};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Deterministic Fisher-Yates shuffle (xorshift64), so permutation
/// tests replay exactly from a proptest-chosen seed.
fn shuffle(values: &mut [f64], seed: u64) {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for i in (1..values.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        values.swap(i, j);
    }
}

fn income_vectors() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0e6, 2..60)
        .prop_filter("needs positive total", |v| v.iter().sum::<f64>() > 0.0)
}

/// Duplicate-heavy vectors: exact ties and zeros are the norm here.
fn tied_vectors() -> impl Strategy<Value = Vec<f64>> {
    let levels = prop::sample::select(vec![0.0, 1.0, 1.0, 2.0, 5.0, 5.0, 10.0]);
    prop::collection::vec(levels, 2..40)
        .prop_filter("needs positive total", |v| v.iter().sum::<f64>() > 0.0)
}

proptest! {
    /// The O(n log n) rank form and the O(n^2) pairwise definition are
    /// the same statistic.
    #[test]
    fn rank_form_matches_pairwise_definition(values in income_vectors()) {
        let s = IncomeSample::new(values).unwrap();
        let rank = gini_sorted(&s).unwrap();
        let pairwise = mean_difference_pairwise(&s) / (2.0 * s.mean());
        prop_assert!((rank - pairwise).abs() <= 1e-12, "rank {rank} vs pairwise {pairwise}");
    }

    /// Gini is scale-free across twelve orders of magnitude.
    #[test]
    fn scale_invariance(values in income_vectors()) {
        let base = gini_sorted(&IncomeSample::new(values.clone()).unwrap()).unwrap();
        for c in [1e-6, 1e3, 1e6] {
            let scaled: Vec<f64> = values.iter().map(|v| v * c).collect();
            let g = gini_sorted(&IncomeSample::new(scaled).unwrap()).unwrap();
            prop_assert!((g - base).abs() <= 1e-12, "scale {c}: {g} vs {base}");
        }
    }

    /// Estimates depend on the multiset of incomes, not their order.
    #[test]
    fn permutation_invariance(values in income_vectors(), seed in any::<u64>()) {
        let base = gini_sorted(&IncomeSample::new(values.clone()).unwrap()).unwrap();
        let mut shuffled = values;
        shuffle(&mut shuffled, seed);
        let g = gini_sorted(&IncomeSample::new(shuffled).unwrap()).unwrap();
        prop_assert_eq!(g, base);
    }

    /// Sample-convention Gini stays in [0, 1]; the population form is a
    /// pure (n-1)/n rescaling and tops out below 1.
    #[test]
    fn conventions_and_bounds(values in income_vectors()) {
        let s = IncomeSample::new(values).unwrap();
        let g = gini_sorted(&s).unwrap();
        prop_assert!(g >= 0.0, "negative gini {g}");
        prop_assert!(g <= 1.0 + 1e-12, "gini above one: {g}");
        let pop = Convention::Population.from_sample(g, s.len());
        let n = s.len() as f64;
        prop_assert!((pop - g * (n - 1.0) / n).abs() <= 1e-15);
        prop_assert!(pop <= g + 1e-15);
        prop_assert_eq!(Convention::Sample.from_sample(g, s.len()), g);
    }

    /// The empirical Lorenz curve passes its own validator and its
    /// enclosed area reproduces the Gini index.
    #[test]
    fn lorenz_area_identity(values in income_vectors()) {
        let s = IncomeSample::new(values).unwrap();
        let curve = lorenz_curve(&s).unwrap();
        prop_assert_eq!(curve.points().len(), s.len() + 1);
        // round-trip through the validating constructor
        let revalidated = LorenzCurve::new(curve.points().to_vec()).unwrap();
        let g_area = gini_from_lorenz(&revalidated, s.len() as u64).unwrap();
        let g = gini_sorted(&s).unwrap();
        prop_assert!((g_area - g).abs() <= 1e-12, "area {g_area} vs rank {g}");
    }

    /// Grouping a sample into two or more contiguous bins always
    /// sandwiches the microdata Gini between the grouped bounds. (A
    /// lone bin is a documented degenerate case that reports (0, 0)
    /// instead, so it is excluded here.)
    #[test]
    fn grouped_bounds_sandwich(values in income_vectors(), cuts in any::<u64>()) {
        let s = IncomeSample::new(values).unwrap();
        let mut sorted = s.values().to_vec();
        sorted.sort_unstable_by(f64::total_cmp);
        let g = gini_sorted(&s).unwrap();

        // carve the sorted sample into 2..=6 contiguous chunks
        let mut state = cuts | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let chunk_count = 2 + (next() % 5) as usize;
        let mut boundaries: Vec<usize> = (0..chunk_count - 1)
            .map(|_| 1 + (next() as usize) % (sorted.len() - 1))
            .collect();
        boundaries.push(0);
        boundaries.push(sorted.len());
        boundaries.sort_unstable();
        boundaries.dedup();

        let bins: Vec<GroupBin> = boundaries
            .windows(2)
            .map(|w| {
                let chunk = &sorted[w[0]..w[1]];
                GroupBin {
                    count: chunk.len() as u64,
                    mean: chunk.iter().sum::<f64>() / chunk.len() as f64,
                }
            })
            .collect();
        let data = GroupedData::new(bins).unwrap();
        let (lower, upper) = grouped_gini_bounds(&data).unwrap();

        prop_assert!(lower >= 0.0, "negative lower bound {lower}");
        prop_assert!(upper <= 1.0 + 1e-9, "upper bound above one: {upper}");
        prop_assert!(lower <= upper + 1e-12, "crossed bounds: {lower} > {upper}");
        prop_assert!(lower <= g + 1e-9, "lower {lower} exceeds gini {g}");
        prop_assert!(g <= upper + 1e-9, "gini {g} exceeds upper {upper}");
    }

    /// Heavy ties and zeros change nothing about estimator agreement.
    #[test]
    fn ties_are_handled(values in tied_vectors()) {
        let s = IncomeSample::new(values).unwrap();
        let rank = gini_sorted(&s).unwrap();
        let pairwise = mean_difference_pairwise(&s) / (2.0 * s.mean());
        prop_assert!((rank - pairwise).abs() <= 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&rank));
    }

    /// Rational arithmetic keeps results in lowest terms with a
    /// positive denominator, across all four operations.
    #[test]
    fn rational_results_stay_canonical(
        p1 in -1_000_000i64..1_000_000,
        q1 in 1i64..1_000_000,
        p2 in -1_000_000i64..1_000_000,
        q2 in 1i64..1_000_000,
        flip in any::<bool>(),
    ) {
        let a = Rational::new(BigInt::from(p1), BigInt::from(if flip { -q1 } else { q1 }));
        let b = Rational::new(BigInt::from(p2), BigInt::from(q2));
        let mut outcomes = vec![a.clone() + &b, a.clone() - &b, a.clone() * &b];
        if !b.is_zero() {
            outcomes.push(a / &b);
        }
        for r in outcomes {
            prop_assert!(r.denom() > &BigInt::zero(), "denominator not positive: {r}");
            if r.numer().is_zero() {
                prop_assert!(r.denom().is_one(), "zero not canonical: {r}");
            } else {
                prop_assert!(r.numer().gcd(r.denom()).is_one(), "not reduced: {r}");
            }
        }
    }

    /// degree -> asymptotic Gini -> graduated degree is the identity.
    #[test]
    fn graduation_round_trip_from_degree(m in 0.0f64..50.0) {
        let g = asymptotic_gini(m).unwrap();
        let back = graduate(g).unwrap();
        prop_assert!((back.degree - m).abs() <= 1e-12 * (1.0 + m), "{m} -> {g} -> {}", back.degree);
    }

    /// Gini -> degree -> asymptotic Gini is the identity.
    #[test]
    fn graduation_round_trip_from_gini(g in 0.0f64..0.99) {
        let result = graduate(g).unwrap();
        let back = asymptotic_gini(result.degree).unwrap();
        prop_assert!((back - g).abs() <= 1e-12, "{g} -> {} -> {back}", result.degree);
    }

    /// Matching any family to a target Gini reproduces that Gini in
    /// closed form, and reports variance consistently.
    #[test]
    fn match_round_trip(g in 0.005f64..0.995, which in 0usize..3) {
        let kind = [
            DistributionKind::Pareto,
            DistributionKind::LogLogistic,
            DistributionKind::LogNormal,
        ][which];
        let matched = match_to_gini(kind, g).unwrap();
        let back = gini_of(&matched.spec);
        prop_assert!((back - g).abs() <= 1e-9, "{kind:?}: {g} -> {back}");
        let m = 2.0 * g / (1.0 - g);
        prop_assert!((matched.m_equivalent - m).abs() <= 1e-12 * (1.0 + m));
        prop_assert_eq!(matched.variance_finite, has_finite_variance(&matched.spec));
    }
}

/// A linear wage scale has Gini exactly 1/3 at every population size,
/// not just in the limit.
#[test]
fn degree_one_is_one_third_at_every_size() {
    use graduation::exact::exact_gini;
    let third = Rational::new(BigInt::from(1), BigInt::from(3));
    for n in 2u64..=10_000 {
        assert_eq!(exact_gini(1, n).unwrap(), third, "n = {n}");
    }
}

/// The income unit cancels out of the power-model Gini.
#[test]
fn power_model_is_scale_free() {
    use graduation::model::{generate_incomes, PowerModel};
    for degree in [0.5, 1.0, 2.3, 4.0] {
        let unit = generate_incomes(&PowerModel::new(degree, 1_000, 1.0).unwrap()).unwrap();
        let scaled = generate_incomes(&PowerModel::new(degree, 1_000, 1e3).unwrap()).unwrap();
        let a = gini_sorted(&unit).unwrap();
        let b = gini_sorted(&scaled).unwrap();
        assert!((a - b).abs() <= 1e-12, "degree {degree}: {a} vs {b}");
    }
}

/// The scale parameter never moves the closed-form Gini.
#[test]
fn closed_form_gini_ignores_scale() {
    let kinds = [
        (DistributionKind::Pareto, 3.0),
        (DistributionKind::LogLogistic, 4.0),
        (DistributionKind::LogNormal, 1.0),
    ];
    for (kind, shape) in kinds {
        let unit = DistributionSpec::new(kind, shape, 1.0).unwrap();
        let scaled = DistributionSpec::new(kind, shape, 250.0).unwrap();
        let a = gini_of(&unit);
        let b = gini_of(&scaled);
        assert!((a - b).abs() <= 1e-12, "{kind:?}: {a} vs {b}");
    }
}

/// The variance of the Gini-matched log-normal grows with the
/// equivalent degree (it is always finite, but not bounded).
#[test]
fn matched_log_normal_variance_grows_with_degree() {
    use graduation::distributions::variance;
    let mut previous = 0.0;
    for k in 1..=18 {
        let g = k as f64 * 0.05;
        let matched = match_to_gini(DistributionKind::LogNormal, g).unwrap();
        assert!(matched.variance_finite, "g = {g}");
        let v = variance(&matched.spec).expect("log-normal variance is always finite");
        assert!(v > previous, "g = {g}: variance {v} did not grow past {previous}");
        previous = v;
    }
}

/// Drawing with the same seed twice yields bit-identical samples.
#[test]
fn sampling_is_deterministic() {
    let spec = DistributionSpec::new(DistributionKind::LogNormal, 1.0, 2.0).unwrap();
    let a = sample(&spec, 10_000, 123).unwrap();
    let b = sample(&spec, 10_000, 123).unwrap();
    assert_eq!(a.values(), b.values());
    let c = sample(&spec, 10_000, 124).unwrap();
    assert_ne!(a.values(), c.values());
}

fn worst_monte_carlo_gap(kind: DistributionKind, shape: f64, scale: f64, seeds: &[u64]) -> f64 {
    let spec = DistributionSpec::new(kind, shape, scale).unwrap();
    let closed = gini_of(&spec);
    seeds
        .iter()
        .map(|&s| {
            let g = gini_sorted(&sample(&spec, 1_000_000, s).unwrap()).unwrap();
            (g - closed).abs()
        })
        .fold(0.0, f64::max)
}

/// Finite-variance members of each family: one million quantile draws
/// land within 0.01 of the closed-form Gini index.
#[test]
fn monte_carlo_pareto_finite_variance() {
    let shapes = [2.2, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0];
    for (i, &alpha) in shapes.iter().enumerate() {
        let seed = 1000 + 37 * i as u64;
        let gap = worst_monte_carlo_gap(DistributionKind::Pareto, alpha, 1.0, &[seed]);
        assert!(gap <= 0.01, "alpha {alpha}: gap {gap}");
    }
}

#[test]
fn monte_carlo_log_logistic_finite_variance() {
    let shapes = [2.2, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 16.0];
    for (i, &beta) in shapes.iter().enumerate() {
        let seed = 2000 + 37 * i as u64;
        let gap = worst_monte_carlo_gap(DistributionKind::LogLogistic, beta, 1.0, &[seed]);
        assert!(gap <= 0.01, "beta {beta}: gap {gap}");
    }
}

#[test]
fn monte_carlo_log_normal() {
    let shapes = [0.25, 0.4, 0.5, 0.6, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0];
    for (i, &sigma) in shapes.iter().enumerate() {
        let seed = 3000 + 37 * i as u64;
        let gap = worst_monte_carlo_gap(DistributionKind::LogNormal, sigma, 1.0, &[seed]);
        assert!(gap <= 0.01, "sigma {sigma}: gap {gap}");
    }
}

/// Infinite-variance Pareto (alpha <= 2). The empirical Gini of a
/// heavy-tailed sample is biased low because the far tail is under-
/// represented at any finite size; the deficit decays like
/// n^(1/alpha - 1), so at one million draws the achievable agreement
/// degrades as alpha falls toward 1. Measured worst gaps over these
/// exact seeds: 0.025 at alpha 1.4, 0.052 at alpha 1.25. The bounds
/// below track that reality: 0.03 down to alpha 1.4, then 0.08.
#[test]
fn monte_carlo_pareto_infinite_variance() {
    let seeds: Vec<u64> = (9000..9006).collect();
    for alpha in [1.4, 1.5, 1.6, 1.8, 2.0] {
        let gap = worst_monte_carlo_gap(DistributionKind::Pareto, alpha, 1.0, &seeds);
        assert!(gap <= 0.03, "alpha {alpha}: gap {gap}");
    }
    for alpha in [1.25, 1.3] {
        let gap = worst_monte_carlo_gap(DistributionKind::Pareto, alpha, 1.0, &seeds);
        assert!(gap <= 0.08, "alpha {alpha}: gap {gap}");
    }
}

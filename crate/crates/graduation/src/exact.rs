//! Exact rational arithmetic for power-sum Gini indices.
//!
//! Everything here is integer mathematics: Bernoulli numbers from the
//! defining recurrence, Faulhaber closed forms for sums of powers, and
//! the exact Gini index of the income vector `(1^m, 2^m, ..., n^m)`.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational number, kept in lowest terms with a
/// positive denominator. Displays as `p/q`, or just `p` when `q` is 1.
pub type Rational = num_rational::BigRational;

/// Memoized Bernoulli numbers `B_0..=B_k`, extended on demand.
static BERNOULLI_TABLE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Returns the Bernoulli number `B_k` in the convention `B_1 = -1/2`.
///
/// Computed from the recurrence `sum_{j=0}^{k} C(k+1, j) * B_j = 0`
/// (valid for `k >= 1`, with `B_0 = 1`), solved for `B_k`:
///
/// ```text
/// B_k = -1/(k+1) * sum_{j=0}^{k-1} C(k+1, j) * B_j
/// ```
///
/// Results are memoized, so the cost of a fresh `B_k` is quadratic in
/// `k` once and constant afterwards.
///
/// # Examples
///
/// ```
/// use graduation::exact::{bernoulli, Rational};
/// use num_bigint::BigInt;
/// use num_traits::Zero;
///
/// assert_eq!(bernoulli(6), Rational::new(BigInt::from(1), BigInt::from(42)));
/// assert!(bernoulli(7).is_zero()); // odd k >= 3 vanishes
/// ```
pub fn bernoulli(k: u32) -> Rational {
    let mut table = BERNOULLI_TABLE
        .lock()
        .unwrap_or_else(std::sync::PoisonError::into_inner);
    if table.is_empty() {
        table.push(Rational::one());
    }
    while table.len() <= k as usize {
        let t = table.len() as u32; // computing B_t
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let c = binomial(BigInt::from(t + 1), BigInt::from(j));
            acc += b * Rational::from_integer(c);
        }
        let next = -acc / Rational::from_integer(BigInt::from(t + 1));
        table.push(next);
    }
    table[k as usize].clone()
}

/// Sum of the `m`-th powers of `1..=n`, written `S~_m(n)`, evaluated
/// through the Faulhaber closed form:
///
/// ```text
/// sum_{k=0}^{N-1} k^m = 1/(m+1) * sum_{j=0}^{m} C(m+1, j) * B_j * N^(m+1-j)
/// ```
///
/// taken at `N = n + 1`. The closed form counts a `k = 0` term, which
/// is zero except for `m = 0` where `0^0` counts as 1; that single
/// unit is subtracted so the result is exactly `sum_{k=1}^{n} k^m`
/// for every `m`, including `S~_0(n) = n`.
///
/// # Examples
///
/// ```
/// use graduation::exact::{faulhaber_sum, Rational};
/// use num_bigint::BigInt;
///
/// let to_r = |v: u64| Rational::from_integer(BigInt::from(v));
/// assert_eq!(faulhaber_sum(1, 10), to_r(55));
/// assert_eq!(faulhaber_sum(2, 3), to_r(14));
/// assert_eq!(faulhaber_sum(0, 5), to_r(5));
/// ```
pub fn faulhaber_sum(m: u32, n: u64) -> Rational {
    let upper: BigInt = BigInt::from(n) + 1;
    let mut acc = Rational::zero();
    for j in 0..=m {
        let b = bernoulli(j);
        if b.is_zero() {
            continue;
        }
        let c = binomial(BigInt::from(m + 1), BigInt::from(j));
        acc += b * Rational::from_integer(c * upper.pow(m + 1 - j));
    }
    let mut sum = acc / Rational::from_integer(BigInt::from(m + 1));
    if m == 0 {
        sum -= Rational::one(); // drop the k = 0 term, 0^0 = 1
    }
    sum
}

/// Approximates a rational as `f64` without overflowing on huge
/// numerators or denominators: both are shifted right together until
/// the smaller fits comfortably in a double, preserving the ratio to
/// within an ulp or two.
pub fn rational_to_f64(value: &Rational) -> f64 {
    use num_traits::{Signed, ToPrimitive};
    if value.is_zero() {
        return 0.0;
    }
    let numer = value.numer().abs();
    let denom = value.denom().clone(); // invariant: positive
    let keep = 64u64;
    let shift = numer.bits().min(denom.bits()).saturating_sub(keep);
    let shift = usize::try_from(shift).unwrap_or(usize::MAX);
    let n = (numer >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (denom >> shift).to_f64().unwrap_or(f64::INFINITY);
    let magnitude = n / d;
    if value.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// Literal evaluation of `sum_{k=1}^{n} k^m` by repeated addition.
///
/// Exists as an independent cross-check for [`faulhaber_sum`]; it
/// shares no code path with the closed form.
pub fn brute_force_power_sum(m: u32, n: u64) -> Rational {
    let mut acc = BigInt::zero();
    for k in 1..=n {
        acc += BigInt::from(k).pow(m);
    }
    Rational::from_integer(acc)
}

/// Exact Gini index of the income vector `(1^m, 2^m, ..., n^m)` under
/// the sample convention (pair count `n * (n - 1)`):
///
/// ```text
/// G'_m(n) = 2/(n-1) * ( S~_{m+1}(n) / S~_m(n) - (n+1)/2 )
/// ```
///
/// The value is a rational in `[0, 1)`: zero exactly when `m = 0`
/// (flat incomes) and equal to `1/3` for every `n` when `m = 1`.
///
/// # Errors
///
/// Returns [`Error::Domain`] when `n < 2`; a Gini index needs at
/// least two earners.
///
/// # Examples
///
/// ```
/// use graduation::exact::{exact_gini, Rational};
/// use num_bigint::BigInt;
///
/// let third = Rational::new(BigInt::from(1), BigInt::from(3));
/// assert_eq!(exact_gini(1, 100).unwrap(), third);
/// assert_eq!(exact_gini(2, 2).unwrap().to_string(), "3/5");
/// ```
pub fn exact_gini(m: u32, n: u64) -> Result<Rational> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "exact gini needs a population of at least 2, got {n}"
        )));
    }
    let s_m = faulhaber_sum(m, n);
    let s_next = faulhaber_sum(m + 1, n);
    let mean_rank = Rational::new(BigInt::from(n) + 1, BigInt::from(2));
    let scale = Rational::new(BigInt::from(2), BigInt::from(n) - 1);
    Ok(scale * (s_next / s_m - mean_rank))
}

#[cfg(test)]
mod tests {
    use num_traits::{Signed, ToPrimitive};

    use super::*;

    fn ratio(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    /// Independent oracle: Gini of an explicit integer income vector
    /// from the literal pairwise mean-difference definition,
    /// `G = sum_{i != j} |x_i - x_j| / (2 * (n-1) * sum x)`.
    fn pairwise_gini(values: &[BigInt]) -> Rational {
        let n = values.len();
        let mut spread = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    spread += (&values[i] - &values[j]).abs();
                }
            }
        }
        let total: BigInt = values.iter().sum();
        Rational::new(spread, BigInt::from(2 * (n as u64 - 1)) * total)
    }

    fn power_incomes(m: u32, n: u64) -> Vec<BigInt> {
        (1..=n).map(|i| BigInt::from(i).pow(m)).collect()
    }

    #[test]
    fn bernoulli_matches_published_values() {
        let expected = [
            (0, ratio(1, 1)),
            (1, ratio(-1, 2)),
            (2, ratio(1, 6)),
            (4, ratio(-1, 30)),
            (6, ratio(1, 42)),
            (8, ratio(-1, 30)),
            (10, ratio(5, 66)),
            (12, ratio(-691, 2730)),
        ];
        for (k, want) in expected {
            assert_eq!(bernoulli(k), want, "B_{k}");
        }
    }

    #[test]
    fn odd_bernoulli_numbers_vanish() {
        for k in (3..=25).step_by(2) {
            assert!(bernoulli(k).is_zero(), "B_{k} should be zero");
        }
    }

    #[test]
    fn faulhaber_known_values() {
        assert_eq!(faulhaber_sum(1, 10), ratio(55, 1));
        assert_eq!(faulhaber_sum(2, 3), ratio(14, 1));
        assert_eq!(faulhaber_sum(0, 5), ratio(5, 1));
        assert_eq!(faulhaber_sum(3, 4), ratio(100, 1));
        assert_eq!(faulhaber_sum(5, 1), ratio(1, 1));
    }

    #[test]
    fn faulhaber_matches_brute_force_sums() {
        for m in 0..=12 {
            for n in [1, 2, 3, 7, 50, 200] {
                assert_eq!(
                    faulhaber_sum(m, n),
                    brute_force_power_sum(m, n),
                    "m = {m}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn exact_gini_zero_for_flat_incomes() {
        for n in [2, 3, 10, 1000] {
            assert!(exact_gini(0, n).unwrap().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn exact_gini_is_one_third_for_linear_incomes() {
        for n in [2, 3, 17, 100, 10_000] {
            assert_eq!(exact_gini(1, n).unwrap(), ratio(1, 3), "n = {n}");
        }
    }

    #[test]
    fn two_earner_closed_forms() {
        // At n = 2 the index reduces to (2^(m+1) - m - 1) / (2^m + 1)
        // scaled into [0, 1); spot values follow that ladder.
        let expected = [
            (1, ratio(1, 3)),
            (2, ratio(3, 5)),
            (3, ratio(7, 9)),
            (4, ratio(15, 17)),
        ];
        for (m, want) in expected {
            assert_eq!(exact_gini(m, 2).unwrap(), want, "m = {m}");
        }
    }

    #[test]
    fn exact_gini_matches_pairwise_definition() {
        for m in 0..=6 {
            for n in [2, 3, 5, 10, 25] {
                let oracle = pairwise_gini(&power_incomes(m, n));
                assert_eq!(exact_gini(m, n).unwrap(), oracle, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn exact_gini_increases_with_degree() {
        for n in [2, 5, 50] {
            for m in 0..=8 {
                let lower = exact_gini(m, n).unwrap();
                let upper = exact_gini(m + 1, n).unwrap();
                assert!(lower < upper, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn exact_gini_decreases_toward_asymptote() {
        for m in 2..=5 {
            let limit = ratio(m as i64, m as i64 + 2);
            let mut previous = exact_gini(m, 2).unwrap();
            for n in 3..=60 {
                let current = exact_gini(m, n).unwrap();
                assert!(current < previous, "m = {m}, n = {n}");
                assert!(current > limit, "m = {m}, n = {n}");
                previous = current;
            }
        }
    }

    #[test]
    fn exact_gini_stays_in_unit_interval() {
        for m in 0..=10 {
            for n in [2, 4, 30] {
                let g = exact_gini(m, n).unwrap().to_f64().unwrap();
                assert!((0.0..1.0).contains(&g), "m = {m}, n = {n}, g = {g}");
            }
        }
    }

    #[test]
    fn exact_gini_rejects_tiny_population() {
        assert!(matches!(exact_gini(3, 0), Err(Error::Domain(_))));
        assert!(matches!(exact_gini(3, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn rational_display_uses_fraction_notation() {
        assert_eq!(exact_gini(1, 10).unwrap().to_string(), "1/3");
        assert_eq!(exact_gini(0, 10).unwrap().to_string(), "0");
        assert_eq!(exact_gini(2, 2).unwrap().to_string(), "3/5");
    }

    #[test]
    fn rational_parses_fraction_notation() {
        let parsed: Rational = "22/7".parse().unwrap();
        assert_eq!(parsed, ratio(22, 7));
        let reduced: Rational = "6/4".parse().unwrap();
        assert_eq!(reduced.to_string(), "3/2");
    }

    #[test]
    fn rational_to_f64_is_accurate_and_overflow_safe() {
        assert_eq!(rational_to_f64(&ratio(1, 3)), 1.0 / 3.0);
        assert_eq!(rational_to_f64(&ratio(-7, 2)), -3.5);
        assert_eq!(rational_to_f64(&Rational::zero()), 0.0);
        // Both sides far beyond f64 range, ratio still recovered
        // (new_raw skips reduction so the big limbs survive).
        let huge = BigInt::from(10u32).pow(400);
        let value = Rational::new_raw(huge.clone() * 2 + 1, huge * 3);
        assert!((rational_to_f64(&value) - 2.0 / 3.0).abs() < 1e-15);
        // Asymmetric magnitudes saturate in the right direction.
        let towering = Rational::new(BigInt::from(10u32).pow(400), BigInt::from(1));
        assert_eq!(rational_to_f64(&towering), f64::INFINITY);
        let vanishing = Rational::new(BigInt::from(1), BigInt::from(10u32).pow(400));
        assert_eq!(rational_to_f64(&vanishing), 0.0);
    }

    #[test]
    fn large_population_stays_exact() {
        // Exactness does not degrade with size: the identity
        // G'_1(n) = 1/3 holds verbatim at n = 10^6.
        assert_eq!(exact_gini(1, 1_000_000).unwrap(), ratio(1, 3));
    }
}

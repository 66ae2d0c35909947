//! Power-rank income models and Gini index tooling.
//!
//! The central object is the power model of an income distribution: a
//! population of `n` earners ranked from poorest to richest, where the
//! `i`-th earner receives `C * i^m`. For integer degrees `m` the Gini
//! index of that vector has an exact rational value, computable through
//! Bernoulli numbers and Faulhaber power sums, and it converges to
//! `m / (m + 2)` as the population grows. Inverting that limit turns an
//! observed Gini index into an equivalent polynomial degree, a process
//! called graduation.
//!
//! The crate provides four layers:
//!
//! - [`exact`]: arbitrary-precision Bernoulli numbers, Faulhaber sums,
//!   and the exact finite-population Gini index as a rational number.
//! - [`model`]: the floating-point power model, its asymptotic Gini,
//!   graduation of observed indices, and degree classification.
//! - [`estimators`]: sample Gini estimators (pairwise and rank-based),
//!   Lorenz curves, and lower/upper Gini bounds for grouped data.
//! - [`distributions`]: Pareto, log-logistic, and log-normal families
//!   reparameterized by their Gini index, with quantile-based sampling.

pub mod dataset;
pub mod distributions;
pub mod estimators;
pub mod exact;
pub mod model;

pub use dataset::{countries, CountryRecord};
pub use distributions::{
    match_to_gini, normal_cdf, normal_inverse_cdf, sample, DistributionKind, DistributionSpec,
    MatchResult,
};
pub use estimators::{
    dissipation_point, gini_from_lorenz, gini_sorted, grouped_gini_bounds, lorenz_curve,
    mean_difference_pairwise, Convention, GroupBin, GroupedData, IncomeSample, LorenzCurve,
};
pub use exact::{
    bernoulli, brute_force_power_sum, exact_gini, faulhaber_sum, rational_to_f64, Rational,
};
pub use model::{
    asymptotic_gini, asymptotic_gini_exact, bracket_label, classify, generate_incomes,
    gini_numeric, graduate, Classification, GraduationResult, PowerModel,
};

/// Errors reported by this crate.
///
/// Constructors and operations validate their inputs and report the
/// first violated requirement; they never panic on bad user data.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter lies outside the mathematical domain of the
    /// operation (negative degree, Gini outside `[0, 1)`, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// A computed value overflowed the range of `f64`.
    #[error("floating-point range exceeded: {0}")]
    Range(String),

    /// The Gini index is undefined because total income is zero.
    #[error("gini undefined: total income is zero")]
    ZeroTotal,

    /// Too few observations for the requested statistic.
    #[error("need at least {min} values, got {got}")]
    TooFew { min: usize, got: usize },

    /// An observation is negative or not finite.
    #[error("invalid value at index {index}: {reason}")]
    InvalidValue { index: usize, reason: String },

    /// Grouped-data bin means are not sorted ascending.
    #[error("bin means must be nondecreasing: bin {index} breaks the order")]
    UnsortedBins { index: usize },

    /// A set of points does not form a valid Lorenz curve.
    #[error("invalid lorenz curve: {0}")]
    InvalidCurve(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

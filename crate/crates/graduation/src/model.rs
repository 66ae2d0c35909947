//! The power-rank income model and graduation.
//!
//! A society of `n` earners is modeled by incomes `C * i^m` at ranks
//! `i = 1..=n`. Integer degrees have exact rational Gini indices (see
//! [`crate::exact`]); any degree has the large-population limit
//! `m / (m + 2)`. Graduation runs the limit backwards, converting an
//! observed Gini index into the equivalent degree
//! `m = 2 G / (1 - G)` and a qualitative label.

use num_bigint::BigInt;

use crate::estimators::{gini_sorted, IncomeSample};
use crate::exact::Rational;
use crate::{Error, Result};

/// Power-rank income model `x_i = scale * i^degree` for `i = 1..=population`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerModel {
    degree: f64,
    population: usize,
    scale: f64,
}

impl PowerModel {
    /// Validates model parameters: positive finite degree, at least
    /// two earners, positive finite scale.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] on any violated bound.
    pub fn new(degree: f64, population: usize, scale: f64) -> Result<Self> {
        if !degree.is_finite() || degree <= 0.0 {
            return Err(Error::Domain(format!(
                "degree must be a positive real, got {degree}"
            )));
        }
        if population < 2 {
            return Err(Error::Domain(format!(
                "population must be at least 2, got {population}"
            )));
        }
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::Domain(format!(
                "scale must be a positive real, got {scale}"
            )));
        }
        Ok(Self {
            degree,
            population,
            scale,
        })
    }

    /// Polynomial degree `m`.
    pub fn degree(&self) -> f64 {
        self.degree
    }

    /// Number of earners `n`.
    pub fn population(&self) -> usize {
        self.population
    }

    /// Income unit `C` (the income at rank 1).
    pub fn scale(&self) -> f64 {
        self.scale
    }
}

/// Qualitative label for a graduation degree: the nearest integer
/// bucket, with everything below 0.5 called sub-linear.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Degree below 0.5: flatter than any polynomial rank scale.
    SubLinear,
    /// Degree near 1.
    Linear,
    /// Degree near 2.
    Quadratic,
    /// Degree near 3.
    Cubic,
    /// Degree near 4.
    Tetradic,
    /// Degree near 5.
    PentagonalPower,
    /// Degree near 6.
    Hexal,
    /// Degree near an integer above 6.
    Degree(u32),
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::SubLinear => f.write_str("sub-linear"),
            Classification::Linear => f.write_str("linear"),
            Classification::Quadratic => f.write_str("quadratic"),
            Classification::Cubic => f.write_str("cubic"),
            Classification::Tetradic => f.write_str("tetradic"),
            Classification::PentagonalPower => f.write_str("pentagonal-power"),
            Classification::Hexal => f.write_str("hexal"),
            Classification::Degree(k) => write!(f, "degree-{k}"),
        }
    }
}

/// Result of graduating an observed Gini index.
#[derive(Debug, Clone, PartialEq)]
pub struct GraduationResult {
    /// The observed Gini index, echoed back.
    pub gini: f64,
    /// Equivalent polynomial degree `2 * gini / (1 - gini)`.
    pub degree: f64,
    /// Nearest-bucket label for the degree.
    pub classification: Classification,
    /// When the degree lands on an integer `k` (within 1e-9), the
    /// exact asymptotic fraction `k / (k + 2)` it corresponds to.
    pub exact: Option<Rational>,
}

/// Generates the income vector of a power model, ascending by
/// construction. Integer degrees take an exact integer-power path.
///
/// # Errors
///
/// [`Error::Range`] when `scale * i^degree` overflows `f64` for some
/// rank (extreme degree and population combinations).
///
/// # Examples
///
/// ```
/// use graduation::model::{generate_incomes, PowerModel};
///
/// let model = PowerModel::new(2.0, 4, 1.0).unwrap();
/// let sample = generate_incomes(&model).unwrap();
/// assert_eq!(sample.values(), &[1.0, 4.0, 9.0, 16.0]);
/// ```
pub fn generate_incomes(model: &PowerModel) -> Result<IncomeSample> {
    let degree = model.degree();
    let integer_degree = if degree.fract() == 0.0 && degree <= i32::MAX as f64 {
        Some(degree as i32)
    } else {
        None
    };
    let mut values = Vec::with_capacity(model.population());
    for i in 1..=model.population() {
        let rank = i as f64;
        let power = match integer_degree {
            Some(k) => rank.powi(k),
            None => rank.powf(degree),
        };
        let income = model.scale() * power;
        if !income.is_finite() {
            return Err(Error::Range(format!(
                "income at rank {i} overflows f64 for degree {degree}"
            )));
        }
        values.push(income);
    }
    IncomeSample::new(values)
}

/// Gini index of the power model evaluated numerically: generates the
/// income vector at unit scale and applies the order-statistic
/// estimator. For integral degrees this agrees with
/// [`crate::exact::exact_gini`] to within 1e-10 relative.
///
/// # Errors
///
/// Parameter validation and overflow errors from [`PowerModel::new`]
/// and [`generate_incomes`].
pub fn gini_numeric(degree: f64, population: usize) -> Result<f64> {
    let model = PowerModel::new(degree, population, 1.0)?;
    let sample = generate_incomes(&model)?;
    gini_sorted(&sample)
}

/// Large-population Gini limit of the degree-`m` model: `m / (m + 2)`.
///
/// # Errors
///
/// [`Error::Domain`] for negative or non-finite `m` (zero is allowed
/// and maps to perfect equality).
pub fn asymptotic_gini(degree: f64) -> Result<f64> {
    if !degree.is_finite() || degree < 0.0 {
        return Err(Error::Domain(format!(
            "degree must be a nonnegative real, got {degree}"
        )));
    }
    Ok(degree / (degree + 2.0))
}

/// Exact-fraction version of [`asymptotic_gini`] for integer degrees:
/// the rational `m / (m + 2)` in lowest terms.
///
/// # Examples
///
/// ```
/// use graduation::model::asymptotic_gini_exact;
///
/// assert_eq!(asymptotic_gini_exact(3).to_string(), "3/5");
/// assert_eq!(asymptotic_gini_exact(10).to_string(), "5/6");
/// ```
pub fn asymptotic_gini_exact(degree: u32) -> Rational {
    Rational::new(BigInt::from(degree), BigInt::from(degree) + 2)
}

/// Graduates an observed Gini index: inverts the asymptote to the
/// equivalent degree `m = 2 g / (1 - g)` and classifies it.
///
/// # Errors
///
/// [`Error::Domain`] unless `0 <= gini < 1`.
///
/// # Examples
///
/// ```
/// use graduation::model::{graduate, Classification};
///
/// let result = graduate(0.5).unwrap();
/// assert_eq!(result.degree, 2.0);
/// assert_eq!(result.classification, Classification::Quadratic);
/// assert_eq!(result.exact.unwrap().to_string(), "1/2");
/// ```
pub fn graduate(gini: f64) -> Result<GraduationResult> {
    if !gini.is_finite() || !(0.0..1.0).contains(&gini) {
        return Err(Error::Domain(format!(
            "gini must lie in [0, 1), got {gini}"
        )));
    }
    let degree = 2.0 * gini / (1.0 - gini);
    let nearest = degree.round();
    let exact = if (degree - nearest).abs() <= 1e-9 {
        Some(asymptotic_gini_exact(nearest as u32))
    } else {
        None
    };
    Ok(GraduationResult {
        gini,
        degree,
        classification: classify(degree),
        exact,
    })
}

/// Buckets a degree into its qualitative label: nearest integer,
/// halves rounding up, with degrees below 0.5 called sub-linear.
///
/// # Examples
///
/// ```
/// use graduation::model::{classify, Classification};
///
/// assert_eq!(classify(2.74), Classification::Cubic);
/// assert_eq!(classify(0.3), Classification::SubLinear);
/// ```
pub fn classify(degree: f64) -> Classification {
    if degree < 0.5 {
        return Classification::SubLinear;
    }
    // f64::round moves halves away from zero, which is half-up for
    // the positive degrees reaching this point.
    match degree.round() as u32 {
        1 => Classification::Linear,
        2 => Classification::Quadratic,
        3 => Classification::Cubic,
        4 => Classification::Tetradic,
        5 => Classification::PentagonalPower,
        6 => Classification::Hexal,
        k => Classification::Degree(k),
    }
}

/// Human-readable bracket for a degree: the bucket name when the
/// degree sits within 5e-3 of an integer, otherwise "between a and b"
/// naming the neighboring buckets. Degrees below 1 bracket between
/// sub-linear and linear.
///
/// # Examples
///
/// ```
/// use graduation::model::bracket_label;
///
/// assert_eq!(bracket_label(1.466), "between linear and quadratic");
/// assert_eq!(bracket_label(2.001), "quadratic");
/// ```
pub fn bracket_label(degree: f64) -> String {
    fn bucket_name(k: u32) -> String {
        classify(k as f64).to_string()
    }
    let nearest = degree.round();
    if nearest >= 1.0 && (degree - nearest).abs() <= 5e-3 {
        return bucket_name(nearest as u32);
    }
    if degree < 0.005 {
        return Classification::SubLinear.to_string();
    }
    let floor = degree.floor() as u32;
    if floor == 0 {
        return format!("between {} and {}", Classification::SubLinear, bucket_name(1));
    }
    format!("between {} and {}", bucket_name(floor), bucket_name(floor + 1))
}

//! The sum-of-squares kernel.
//!
//! Every other module obtains means, sums of squared deviations and
//! cross-deviation sums from here. Three SS algorithms are provided:
//!
//! - [`sum_of_squares`]: two-pass definitional form `Σ(xᵢ − x̄)²`, the reference.
//! - [`sum_of_squares_computational`]: raw-moment form `Σxᵢ² − (Σxᵢ)²/n`. It is
//!   algebraically identical but loses precision when `|x̄|` is large relative
//!   to the spread; it is kept to demonstrate exactly that.
//! - [`sum_of_squares_streaming`] / [`SsAccumulator`]: Welford's single-pass
//!   recurrence with a parallel merge.

use serde::{Deserialize, Serialize};

use crate::error::{Result, StatsError};

/// An ordered sequence of finite observations.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    /// Builds a sample, rejecting NaN and infinite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(StatsError::NonFinite { index, value });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.values
    }

    /// Returns a new sample with every value multiplied by `k` and shifted by `c`.
    pub fn affine(&self, k: f64, c: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|&v| k * v + c).collect())
    }
}

impl TryFrom<Vec<f64>> for Sample {
    type Error = StatsError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl TryFrom<&[f64]> for Sample {
    type Error = StatsError;

    fn try_from(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec())
    }
}

/// Divisor applied to the sum of squares when forming a variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisorMode {
    /// Divide by `N`.
    Population,
    /// Divide by `n − 1`, the degrees of freedom left after estimating the mean.
    #[default]
    Sample,
}

impl DivisorMode {
    /// Divisor for `n` observations, or an error when it would be zero.
    pub fn divisor(self, n: usize) -> Result<f64> {
        match self {
            DivisorMode::Population if n >= 1 => Ok(n as f64),
            DivisorMode::Population => Err(StatsError::EmptySample),
            DivisorMode::Sample if n >= 2 => Ok((n - 1) as f64),
            DivisorMode::Sample if n == 0 => Err(StatsError::EmptySample),
            DivisorMode::Sample => Err(StatsError::InsufficientData { needed: 2, got: n }),
        }
    }
}

/// Descriptive summary built entirely from the kernel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryStats {
    pub n: usize,
    pub mean: f64,
    pub sum_squares: f64,
    pub variance: f64,
    pub std_dev: f64,
    pub mean_abs_dev: f64,
    pub divisor_mode: DivisorMode,
}

fn nonempty(s: &Sample) -> Result<&[f64]> {
    if s.is_empty() {
        Err(StatsError::EmptySample)
    } else {
        Ok(s.values())
    }
}

/// Mean of a non-empty slice.
///
/// Constant input returns the common value exactly; otherwise the naive mean
/// is refined by the average residual (corrected two-pass mean).
pub(crate) fn mean_of(values: &[f64]) -> f64 {
    debug_assert!(!values.is_empty());
    let first = values[0];
    if values.iter().all(|&v| v == first) {
        return first;
    }
    let n = values.len() as f64;
    let rough = values.iter().sum::<f64>() / n;
    rough + values.iter().map(|&v| v - rough).sum::<f64>() / n
}

/// Sum of squared deviations of `values` about an arbitrary `center`.
pub fn ss_about(values: &[f64], center: f64) -> f64 {
    values
        .iter()
        .map(|&v| {
            let d = v - center;
            d * d
        })
        .sum()
}

/// `Σ wᵢ (xᵢ − center)²`, used for between-group SS with group sizes as weights.
pub fn weighted_ss_about(values: &[f64], weights: &[f64], center: f64) -> f64 {
    debug_assert_eq!(values.len(), weights.len());
    values
        .iter()
        .zip(weights)
        .map(|(&v, &w)| {
            let d = v - center;
            w * d * d
        })
        .sum()
}

/// Centered cross-deviation sum `Σ(xᵢ − x̄)(yᵢ − ȳ)`.
pub fn cross_deviations(x: &Sample, y: &Sample) -> Result<f64> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch { x: x.len(), y: y.len() });
    }
    let xs = nonempty(x)?;
    let ys = y.values();
    let (mx, my) = (mean_of(xs), mean_of(ys));
    Ok(xs.iter().zip(ys).map(|(&a, &b)| (a - mx) * (b - my)).sum())
}

pub fn mean(s: &Sample) -> Result<f64> {
    nonempty(s).map(mean_of)
}

/// Deviations `xᵢ − x̄`, in sample order.
pub fn deviations(s: &Sample) -> Result<Vec<f64>> {
    let values = nonempty(s)?;
    let m = mean_of(values);
    Ok(values.iter().map(|&v| v - m).collect())
}

/// Definitional two-pass sum of squares. Zero exactly when all values are equal.
pub fn sum_of_squares(s: &Sample) -> Result<f64> {
    let values = nonempty(s)?;
    Ok(ss_about(values, mean_of(values)))
}

/// Raw-moment one-pass sum of squares `Σx² − (Σx)²/n`.
///
/// Numerically inferior: for data far from zero the two terms nearly cancel and
/// the result can be badly wrong (even negative before clamping is applied,
/// which it deliberately is not).
pub fn sum_of_squares_computational(s: &Sample) -> Result<f64> {
    let values = nonempty(s)?;
    let (sum, sum_sq) = values.iter().fold((0.0, 0.0), |(sum, sq), &v| (sum + v, sq + v * v));
    Ok(sum_sq - sum * sum / values.len() as f64)
}

/// Result of a streaming sum-of-squares pass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StreamingSs {
    pub n: usize,
    pub mean: f64,
    pub sum_squares: f64,
}

/// Welford accumulator. Holds `(n, mean, M2)` and never stores the data.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SsAccumulator {
    n: usize,
    mean: f64,
    m2: f64,
}

impl SsAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Combines two partial accumulations (Chan et al. pairwise update).
    pub fn merge(&self, other: &Self) -> Self {
        if self.n == 0 {
            return *other;
        }
        if other.n == 0 {
            return *self;
        }
        let n = self.n + other.n;
        let (na, nb) = (self.n as f64, other.n as f64);
        let delta = other.mean - self.mean;
        Self {
            n,
            mean: self.mean + delta * nb / n as f64,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n as f64,
        }
    }

    pub fn count(&self) -> usize {
        self.n
    }

    pub fn finish(&self) -> Result<StreamingSs> {
        if self.n == 0 {
            return Err(StatsError::EmptyStream);
        }
        Ok(StreamingSs { n: self.n, mean: self.mean, sum_squares: self.m2.max(0.0) })
    }
}

impl Extend<f64> for SsAccumulator {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.push(x);
        }
    }
}

/// Consumes a stream of values in one pass.
pub fn sum_of_squares_streaming<I>(stream: I) -> Result<StreamingSs>
where
    I: IntoIterator<Item = f64>,
{
    let mut acc = SsAccumulator::new();
    for (index, value) in stream.into_iter().enumerate() {
        if !value.is_finite() {
            return Err(StatsError::NonFinite { index, value });
        }
        acc.push(value);
    }
    acc.finish()
}

pub fn variance(s: &Sample, mode: DivisorMode) -> Result<f64> {
    let divisor = mode.divisor(s.len())?;
    Ok(sum_of_squares(s)? / divisor)
}

pub fn std_dev(s: &Sample, mode: DivisorMode) -> Result<f64> {
    variance(s, mode).map(f64::sqrt)
}

/// Mean absolute deviation about the mean, `Σ|xᵢ − x̄| / n`.
///
/// This is not the median absolute deviation.
pub fn mean_abs_dev(s: &Sample) -> Result<f64> {
    let values = nonempty(s)?;
    let m = mean_of(values);
    Ok(values.iter().map(|&v| (v - m).abs()).sum::<f64>() / values.len() as f64)
}

pub fn summarize(s: &Sample, mode: DivisorMode) -> Result<SummaryStats> {
    let divisor = mode.divisor(s.len())?;
    let sum_squares = sum_of_squares(s)?;
    let variance = sum_squares / divisor;
    Ok(SummaryStats {
        n: s.len(),
        mean: mean(s)?,
        sum_squares,
        variance,
        std_dev: variance.sqrt(),
        mean_abs_dev: mean_abs_dev(s)?,
        divisor_mode: mode,
    })
}

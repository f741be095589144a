//! Validated inputs shared by every estimator: a sorted loss sample and a
//! probability level in (0, 1).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used to decide whether `n * p` is an integer.
///
/// `n * p` is treated as integral when `|np - round(np)| < INTEGRALITY_TOL * n`.
pub const INTEGRALITY_TOL: f64 = 1e-9;

/// An immutable, non-empty sample of finite losses, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    /// Validates and sorts the observations. Non-finite values are rejected
    /// rather than dropped, since dropping them would silently change `n`.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    /// Caller guarantees `values` is non-empty, finite and sorted ascending.
    pub(crate) fn from_sorted_unchecked(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Order statistics `X_{1:n} <= ... <= X_{n:n}`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The `i`-th order statistic `X_{i:n}`, 1-based.
    ///
    /// Panics if `i` is zero or exceeds `n`.
    pub fn order_statistic(&self, i: usize) -> f64 {
        assert!(i >= 1 && i <= self.values.len(), "order statistic index {i} out of range");
        self.values[i - 1]
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Sample standard deviation with the `n - 1` divisor; zero when `n == 1`.
    pub fn std_dev(&self) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        let mean = self.mean();
        let ss: f64 = self.values.iter().map(|x| (x - mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    }

    /// Applies an increasing map to every observation, keeping the order.
    pub fn map_monotone(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Sample::new(self.values.iter().map(|&x| f(x)).collect())
    }
}

impl TryFrom<Vec<f64>> for Sample {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Sample::new(values)
    }
}

impl TryFrom<&[f64]> for Sample {
    type Error = Error;

    fn try_from(values: &[f64]) -> Result<Self> {
        Sample::new(values.to_vec())
    }
}

/// A probability level `p` in the open interval (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ProbabilityLevel(f64);

impl ProbabilityLevel {
    pub fn new(p: f64) -> Result<Self> {
        if p > 0.0 && p < 1.0 {
            Ok(Self(p))
        } else {
            Err(Error::InvalidProbability(p))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Splits `n * p` into its integer part `[np]` and fractional part
    /// `np - [np]`, snapping to an integer within the integrality tolerance.
    pub fn split(self, n: usize) -> TailSplit {
        let np = n as f64 * self.0;
        let nearest = np.round();
        if (np - nearest).abs() < INTEGRALITY_TOL * n as f64 {
            TailSplit {
                floor: nearest as usize,
                frac: 0.0,
            }
        } else {
            let floor = np.floor();
            TailSplit {
                floor: floor as usize,
                frac: np - floor,
            }
        }
    }
}

impl TryFrom<f64> for ProbabilityLevel {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        ProbabilityLevel::new(p)
    }
}

impl From<ProbabilityLevel> for f64 {
    fn from(p: ProbabilityLevel) -> f64 {
        p.0
    }
}

impl fmt::Display for ProbabilityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `[np]` and `np - [np]` for a sample size and level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSplit {
    pub floor: usize,
    pub frac: f64,
}

impl TailSplit {
    pub fn is_integer(&self) -> bool {
        self.frac == 0.0
    }
}

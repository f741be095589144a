//! Closed-form ground truth for the Pareto model `F(x) = 1 - x^{-alpha}`,
//! `x >= 1`.
//!
//! Gamma-function ratios are evaluated as differences of log-gamma values;
//! `Gamma(n + 1)` overflows an `f64` once `n` passes 170.

use rand::Rng;
use rand::distr::Open01;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Seed;
use crate::sample::{ProbabilityLevel, Sample};
use crate::stats::compensated_sum;

fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Pareto distribution with unit scale and shape `alpha > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ParetoModel {
    alpha: f64,
}

impl ParetoModel {
    /// Rejects `alpha <= 1`, where the mean and hence the TVaR are infinite.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 1.0 {
            Ok(Self { alpha })
        } else {
            Err(Error::InvalidShape(alpha))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 1.0 {
            0.0
        } else {
            1.0 - x.powf(-self.alpha)
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x < 1.0 {
            0.0
        } else {
            self.alpha * x.powf(-self.alpha - 1.0)
        }
    }

    /// `xi_p = (1 - p)^{-1/alpha}`.
    pub fn quantile(&self, p: ProbabilityLevel) -> f64 {
        (1.0 - p.value()).powf(-1.0 / self.alpha)
    }

    /// `f(xi_p) = alpha (1 - p)^{(alpha + 1) / alpha}`.
    pub fn density_at_quantile(&self, p: ProbabilityLevel) -> f64 {
        self.alpha * (1.0 - p.value()).powf((self.alpha + 1.0) / self.alpha)
    }

    /// `T_p = alpha / (alpha - 1) (1 - p)^{-1/alpha}`.
    pub fn true_tvar(&self, p: ProbabilityLevel) -> f64 {
        self.alpha / (self.alpha - 1.0) * self.quantile(p)
    }

    /// `E max(X, xi_p) = p xi_p + (1 - p) T_p`.
    pub fn winsorized_mean(&self, p: ProbabilityLevel) -> f64 {
        let pv = p.value();
        pv * self.quantile(p) + (1.0 - pv) * self.true_tvar(p)
    }

    /// `E X_{i:n}` for `1 <= i <= n`, which exists when `i < n + 1 - 1/alpha`.
    pub fn order_statistic_mean(&self, i: usize, n: usize) -> Result<f64> {
        let inv = 1.0 / self.alpha;
        if i == 0 || i > n || (i as f64) >= n as f64 + 1.0 - inv {
            return Err(Error::MomentUndefined {
                i,
                n,
                alpha: self.alpha,
            });
        }
        let (n, rest) = (n as f64, (n - i) as f64);
        let ln = ln_gamma(n + 1.0) - ln_gamma(n + 1.0 - inv) + ln_gamma(rest + 1.0 - inv)
            - ln_gamma(rest + 1.0);
        Ok(ln.exp())
    }

    /// Exact finite-sample bias `E T_hat_{n,p} - T_p` of the empirical TVaR.
    ///
    /// Sums the order-statistic means in ascending order with compensation.
    pub fn exact_bias(&self, p: ProbabilityLevel, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::param("n", "sample size must be positive"));
        }
        let split = p.split(n);
        if split.floor >= n {
            return Err(Error::EmptyTail { n, p: p.value() });
        }
        let boundary = self.order_statistic_mean(split.floor + 1, n)?;
        let means = (split.floor + 1..=n)
            .map(|i| self.order_statistic_mean(i, n))
            .collect::<Result<Vec<_>>>()?;
        let total = compensated_sum(means) - split.frac * boundary;
        let tail_mass = (n - split.floor) as f64 - split.frac;
        Ok(total / tail_mass - self.true_tvar(p))
    }

    /// Closed-form local Lipschitz constant of the quantile function,
    /// `(xi_p + h)^{alpha + 1} / alpha`, i.e. the reciprocal of the smallest
    /// density on `[xi_p - h, xi_p + h]`.
    ///
    /// The neighbourhood must stay inside the support `[1, inf)`.
    pub fn lipschitz_constant(&self, p: ProbabilityLevel, h: f64) -> Result<f64> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::param("h", format!("must be positive, got {h}")));
        }
        let xi = self.quantile(p);
        if xi - h < 1.0 {
            return Err(Error::param(
                "h",
                format!("neighbourhood [{}, {}] leaves the support", xi - h, xi + h),
            ));
        }
        Ok((xi + h).powf(self.alpha + 1.0) / self.alpha)
    }

    /// Draws `n` observations by inverse transform from the seeded generator.
    pub fn sample(&self, n: usize, seed: Seed) -> Result<Sample> {
        if n == 0 {
            return Err(Error::param("n", "sample size must be positive"));
        }
        let mut rng = seed.generator();
        Sample::new(self.draw(&mut rng, n))
    }

    pub(crate) fn draw<R: Rng>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        let exponent = -1.0 / self.alpha;
        (0..n)
            .map(|_| {
                let u: f64 = rng.sample(Open01);
                (1.0 - u).powf(exponent)
            })
            .collect()
    }
}

impl TryFrom<f64> for ParetoModel {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        ParetoModel::new(alpha)
    }
}

impl From<ParetoModel> for f64 {
    fn from(m: ParetoModel) -> f64 {
        m.alpha
    }
}

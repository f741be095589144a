//! Order-statistic point estimators of tail risk and the winsorized
//! decomposition of the empirical TVaR error.

use crate::error::{Error, Result};
use crate::sample::{ProbabilityLevel, Sample, TailSplit};
use crate::stats::compensated_sum;

/// Left-continuous empirical quantile `F_n^{-1}(u)`.
///
/// Returns `X_{nu:n}` when `nu` is an integer and `X_{[nu]+1:n}` otherwise.
pub fn empirical_quantile(sample: &Sample, u: ProbabilityLevel) -> f64 {
    let split = u.split(sample.len());
    let index = if split.is_integer() {
        split.floor.max(1)
    } else {
        split.floor + 1
    };
    sample.order_statistic(index.min(sample.len()))
}

fn tail_split(sample: &Sample, p: ProbabilityLevel) -> Result<TailSplit> {
    let split = p.split(sample.len());
    if split.floor >= sample.len() {
        return Err(Error::EmptyTail {
            n: sample.len(),
            p: p.value(),
        });
    }
    Ok(split)
}

/// `n - np`, i.e. `n (1 - p)`, computed from the split so that the integer
/// snapping of `np` carries through.
fn tail_mass(n: usize, split: TailSplit) -> f64 {
    (n - split.floor) as f64 - split.frac
}

fn upper_sum(sample: &Sample, from: usize) -> f64 {
    compensated_sum(sample.values()[from..].iter().copied())
}

/// Empirical (plug-in) TVaR: the average of the empirical quantile function
/// over `(p, 1]`.
///
/// Evaluated as `(-(np - [np]) X_{[np]+1:n} + sum_{i > [np]} X_{i:n}) / (n (1 - p))`.
pub fn empirical_tvar(sample: &Sample, p: ProbabilityLevel) -> Result<f64> {
    let split = tail_split(sample, p)?;
    let n = sample.len();
    let boundary = sample.order_statistic(split.floor + 1);
    let total = upper_sum(sample, split.floor) - split.frac * boundary;
    Ok(total / tail_mass(n, split))
}

/// Empirical tail conditional expectation: the plain mean of the top
/// `n - [np]` order statistics.
pub fn empirical_tce(sample: &Sample, p: ProbabilityLevel) -> Result<f64> {
    let split = tail_split(sample, p)?;
    let count = sample.len() - split.floor;
    Ok(upper_sum(sample, split.floor) / count as f64)
}

/// Non-negative amount by which the empirical TCE falls below the empirical
/// TVaR: `tce = tvar - gap`.
pub fn tce_tvar_identity_gap(sample: &Sample, p: ProbabilityLevel) -> Result<f64> {
    let split = tail_split(sample, p)?;
    if split.is_integer() {
        return Ok(0.0);
    }
    let tvar = empirical_tvar(sample, p)?;
    let boundary = sample.order_statistic(split.floor + 1);
    let count = (sample.len() - split.floor) as f64;
    Ok(split.frac / count * (tvar - boundary))
}

/// Decomposition of `T_hat - T_p` into a centered winsorized average and a
/// non-negative residual.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ResidualDecomposition {
    /// `sum_i (max(X_i, xi_p) - mu_W) / (n (1 - p))`
    pub winsorized_mean_term: f64,
    /// `R_n`; non-negative up to rounding.
    pub residual: f64,
    pub threshold: f64,
    /// `T_hat - T_p` evaluated directly.
    pub tvar_error: f64,
    /// `N_p`, the number of observations at or below the threshold.
    pub count_below: usize,
}

impl ResidualDecomposition {
    /// `winsorized_mean_term - residual`, which equals `T_hat - T_p`.
    pub fn reconstructed_error(&self) -> f64 {
        self.winsorized_mean_term - self.residual
    }

    /// Absolute discrepancy between the two routes to `T_hat - T_p`.
    pub fn identity_gap(&self) -> f64 {
        (self.tvar_error - self.reconstructed_error()).abs()
    }
}

/// Splits the estimation error of the empirical TVaR given the true
/// quantile `xi_p`, true TVaR `T_p` and winsorized mean `mu_W = E max(X, xi_p)`.
///
/// The model quantities must come from the same distribution; for a
/// continuous model `mu_W = p xi_p + (1 - p) T_p`.
pub fn residual_decomposition(
    sample: &Sample,
    p: ProbabilityLevel,
    xi_p: f64,
    true_tvar: f64,
    winsorized_mean: f64,
) -> Result<ResidualDecomposition> {
    for (name, v) in [
        ("xi_p", xi_p),
        ("true_tvar", true_tvar),
        ("winsorized_mean", winsorized_mean),
    ] {
        if !v.is_finite() {
            return Err(Error::param(name, format!("must be finite, got {v}")));
        }
    }
    let split = tail_split(sample, p)?;
    let n = sample.len();
    let values = sample.values();
    let denom = tail_mass(n, split);

    let winsorized_mean_term =
        compensated_sum(values.iter().map(|&x| x.max(xi_p) - winsorized_mean)) / denom;

    let count_below = values.partition_point(|&x| x <= xi_p);
    let k = split.floor;
    let boundary_term = split.frac * (sample.order_statistic(k + 1) - xi_p);
    // Indices ([np] ^ N_p) + 1 ..= [np] v N_p, 1-based.
    let (lo, hi) = (k.min(count_below), k.max(count_below));
    let band = compensated_sum(values[lo..hi].iter().map(|&x| x - xi_p));
    let signed_band = match count_below.cmp(&k) {
        std::cmp::Ordering::Greater => band,
        std::cmp::Ordering::Less => -band,
        std::cmp::Ordering::Equal => 0.0,
    };
    let residual = (boundary_term - signed_band) / denom;

    Ok(ResidualDecomposition {
        winsorized_mean_term,
        residual,
        threshold: xi_p,
        tvar_error: empirical_tvar(sample, p)? - true_tvar,
        count_below,
    })
}

//! Gaussian kernel density estimation with Silverman's rule-of-thumb
//! bandwidth.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::stats::interpolated_quantile;

/// Kernel contributions beyond this many bandwidths are below 1e-21 and
/// skipped.
const KERNEL_CUTOFF: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    #[default]
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bandwidth {
    /// `0.9 min(sd, IQR / 1.34) n^{-1/5}`
    #[default]
    Silverman,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KdeConfig {
    #[serde(default)]
    pub bandwidth: Bandwidth,
    #[serde(default)]
    pub kernel: Kernel,
}

impl KdeConfig {
    pub fn silverman() -> Self {
        Self::default()
    }

    pub fn fixed(bandwidth: f64) -> Self {
        Self {
            bandwidth: Bandwidth::Fixed(bandwidth),
            kernel: Kernel::Gaussian,
        }
    }
}

/// Silverman's rule of thumb. Falls back to the standard deviation when the
/// interquartile range is zero; fails on zero-spread data.
pub fn silverman_bandwidth(sample: &Sample) -> Result<f64> {
    let sd = sample.std_dev();
    let values = sample.values();
    let iqr = interpolated_quantile(values, 0.75) - interpolated_quantile(values, 0.25);
    let mut spread = sd.min(iqr / 1.34);
    if spread <= 0.0 {
        spread = sd;
    }
    let b = 0.9 * spread * (sample.len() as f64).powf(-0.2);
    if b > 0.0 && b.is_finite() {
        Ok(b)
    } else {
        Err(Error::InvalidBandwidth(b))
    }
}

/// A kernel density estimate with its bandwidth resolved.
#[derive(Debug, Clone, Copy)]
pub struct Kde<'a> {
    sample: &'a Sample,
    bandwidth: f64,
}

impl<'a> Kde<'a> {
    pub fn fit(sample: &'a Sample, config: &KdeConfig) -> Result<Self> {
        let bandwidth = match config.bandwidth {
            Bandwidth::Silverman => silverman_bandwidth(sample)?,
            Bandwidth::Fixed(b) if b > 0.0 && b.is_finite() => b,
            Bandwidth::Fixed(b) => return Err(Error::InvalidBandwidth(b)),
        };
        Ok(Self { sample, bandwidth })
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// `(1 / (n b)) sum_i phi((x - X_i) / b)`.
    pub fn density(&self, x: f64) -> f64 {
        let b = self.bandwidth;
        let values = self.sample.values();
        let lo = values.partition_point(|&v| v < x - KERNEL_CUTOFF * b);
        let hi = values.partition_point(|&v| v <= x + KERNEL_CUTOFF * b);
        let sum: f64 = values[lo..hi]
            .iter()
            .map(|&v| {
                let z = (x - v) / b;
                (-0.5 * z * z).exp()
            })
            .sum();
        sum / ((2.0 * PI).sqrt() * b * values.len() as f64)
    }
}

/// Gaussian kernel density estimate at a single point.
pub fn kde_density_at(sample: &Sample, x: f64, config: &KdeConfig) -> Result<f64> {
    Ok(Kde::fit(sample, config)?.density(x))
}

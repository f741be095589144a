//! Efron bootstrap and Monte-Carlo estimates of the empirical TVaR bias.
//!
//! Each resample and each replication draws from its own child seed and the
//! results are reduced in index order, so output is bit-identical under any
//! thread count.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{empirical_tce, empirical_tvar};
use crate::pareto::ParetoModel;
use crate::rng::Seed;
use crate::sample::{ProbabilityLevel, Sample};
use crate::stats::compensated_sum;

/// Number of bootstrap resamples used by default.
pub const DEFAULT_RESAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub num_resamples: usize,
    pub seed: Seed,
}

impl BootstrapConfig {
    pub fn new(num_resamples: usize, seed: impl Into<Seed>) -> Result<Self> {
        if num_resamples == 0 {
            return Err(Error::param("num_resamples", "must be at least 1"));
        }
        Ok(Self {
            num_resamples,
            seed: seed.into(),
        })
    }
}

/// Bootstrap bias estimate for one level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BootstrapOutcome {
    /// `mean_b T*_b - T_hat`. May be positive.
    pub estimate: f64,
    pub original: f64,
    /// `T*_b` for every resample, in resample order.
    pub resample_values: Vec<f64>,
}

/// One sorted resample of size `n` drawn with replacement.
///
/// Since the sample is already sorted, drawing index counts and expanding
/// them in order yields the sorted resample without a sort.
fn sorted_resample<R: Rng>(sample: &Sample, rng: &mut R, counts: &mut [u32]) -> Sample {
    let n = sample.len();
    counts.iter_mut().for_each(|c| *c = 0);
    for _ in 0..n {
        counts[rng.random_range(0..n)] += 1;
    }
    let mut values = Vec::with_capacity(n);
    for (&x, &c) in sample.values().iter().zip(counts.iter()) {
        values.extend(std::iter::repeat_n(x, c as usize));
    }
    Sample::from_sorted_unchecked(values)
}

/// Bootstrap bias estimates for several levels from the same resamples.
pub fn bootstrap_bias_levels(
    sample: &Sample,
    levels: &[ProbabilityLevel],
    config: &BootstrapConfig,
) -> Result<Vec<BootstrapOutcome>> {
    if config.num_resamples == 0 {
        return Err(Error::param("num_resamples", "must be at least 1"));
    }
    let originals = levels
        .iter()
        .map(|&p| empirical_tvar(sample, p))
        .collect::<Result<Vec<_>>>()?;

    let per_resample: Vec<Vec<f64>> = (0..config.num_resamples as u64)
        .into_par_iter()
        .map_init(
            || vec![0u32; sample.len()],
            |counts, b| {
                let mut rng = config.seed.child(b).generator();
                let resample = sorted_resample(sample, &mut rng, counts);
                levels
                    .iter()
                    .map(|&p| empirical_tvar(&resample, p))
                    .collect::<Result<Vec<_>>>()
            },
        )
        .collect::<Result<_>>()?;

    Ok(levels
        .iter()
        .enumerate()
        .map(|(j, _)| {
            let resample_values: Vec<f64> = per_resample.iter().map(|row| row[j]).collect();
            let mean = compensated_sum(resample_values.iter().copied()) / resample_values.len() as f64;
            BootstrapOutcome {
                estimate: mean - originals[j],
                original: originals[j],
                resample_values,
            }
        })
        .collect())
}

/// Efron bootstrap estimate of the bias of the empirical TVaR.
pub fn bootstrap_bias(
    sample: &Sample,
    p: ProbabilityLevel,
    config: &BootstrapConfig,
) -> Result<BootstrapOutcome> {
    let mut out = bootstrap_bias_levels(sample, &[p], config)?;
    Ok(out.remove(0))
}

/// Repeats the bootstrap `repetitions` times with independent child seeds.
///
/// Returns, per level, the `repetitions` bias estimates in repetition order.
pub fn repeated_bootstrap_bias(
    sample: &Sample,
    levels: &[ProbabilityLevel],
    num_resamples: usize,
    repetitions: usize,
    seed: Seed,
) -> Result<Vec<Vec<f64>>> {
    if repetitions == 0 {
        return Err(Error::param("repetitions", "must be at least 1"));
    }
    let runs = (0..repetitions as u64)
        .map(|r| {
            let config = BootstrapConfig::new(num_resamples, seed.child(r))?;
            bootstrap_bias_levels(sample, levels, &config)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..levels.len())
        .map(|j| runs.iter().map(|run| run[j].estimate).collect())
        .collect())
}

/// Mean and standard error of replicated errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloResult {
    pub mean_bias: f64,
    pub standard_error: f64,
    pub replications: usize,
}

impl MonteCarloResult {
    /// Requires at least two values.
    pub fn from_errors(errors: &[f64]) -> Result<Self> {
        let m = errors.len();
        if m < 2 {
            return Err(Error::param("replications", "at least 2 are needed"));
        }
        let mean = compensated_sum(errors.iter().copied()) / m as f64;
        let ss = compensated_sum(errors.iter().map(|e| (e - mean).powi(2)));
        Ok(Self {
            mean_bias: mean,
            standard_error: (ss / (m - 1) as f64).sqrt() / (m as f64).sqrt(),
            replications: m,
        })
    }
}

fn replicate<T: Send>(
    model: &ParetoModel,
    n: usize,
    replications: usize,
    seed: Seed,
    f: impl Fn(&Sample) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    if n == 0 {
        return Err(Error::param("n", "sample size must be positive"));
    }
    if replications < 2 {
        return Err(Error::param("replications", "at least 2 are needed"));
    }
    (0..replications as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = seed.child(r).generator();
            let sample = Sample::new(model.draw(&mut rng, n))?;
            f(&sample)
        })
        .collect()
}

/// Monte-Carlo estimate of `E T_hat_{n,p} - T_p` under a Pareto model.
pub fn monte_carlo_bias(
    model: &ParetoModel,
    n: usize,
    p: ProbabilityLevel,
    replications: usize,
    seed: Seed,
) -> Result<MonteCarloResult> {
    let truth = model.true_tvar(p);
    let errors = replicate(model, n, replications, seed, |s| Ok(empirical_tvar(s, p)? - truth))?;
    MonteCarloResult::from_errors(&errors)
}

/// Paired Monte-Carlo comparison of the empirical TCE and TVaR errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TceComparison {
    pub tvar: MonteCarloResult,
    pub tce: MonteCarloResult,
    /// `TCE - TVaR` per replication; never positive.
    pub difference: MonteCarloResult,
}

pub fn monte_carlo_tce_comparison(
    model: &ParetoModel,
    n: usize,
    p: ProbabilityLevel,
    replications: usize,
    seed: Seed,
) -> Result<TceComparison> {
    let truth = model.true_tvar(p);
    let pairs = replicate(model, n, replications, seed, |s| {
        Ok((empirical_tvar(s, p)? - truth, empirical_tce(s, p)? - truth))
    })?;
    let tvar: Vec<f64> = pairs.iter().map(|e| e.0).collect();
    let tce: Vec<f64> = pairs.iter().map(|e| e.1).collect();
    let diff: Vec<f64> = pairs.iter().map(|e| e.1 - e.0).collect();
    Ok(TceComparison {
        tvar: MonteCarloResult::from_errors(&tvar)?,
        tce: MonteCarloResult::from_errors(&tce)?,
        difference: MonteCarloResult::from_errors(&diff)?,
    })
}

//! Finite-sample bias of the empirical TVaR: the first-order term
//! `-p / (2 n f(xi_p))`, the Hölder-type upper bound on the negative bias, and
//! the local Lipschitz constants needed to evaluate the bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{empirical_quantile, empirical_tvar};
use crate::kde::{Kde, KdeConfig};
use crate::sample::{ProbabilityLevel, Sample};

/// Density estimates below this value are treated as a failure of the
/// density estimate rather than turned into an enormous bias.
pub const DENSITY_FLOOR: f64 = 1e-12;

/// Default half-width of the neighbourhood used for Lipschitz constants.
pub const DEFAULT_LOCALITY: f64 = 0.05;

/// Default slack in `C = c_gamma (1 + delta)`.
pub const DEFAULT_SLACK: f64 = 0.05;

/// Parameters of the upper bound on the negative bias.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderParams {
    /// Hölder exponent of the quantile function near `p`, in (0, 1].
    pub gamma: f64,
    /// Local Hölder constant.
    pub c_gamma: f64,
    /// Slack.
    pub delta: f64,
    /// Neighbourhood half-width, in loss units.
    pub h: f64,
}

impl HolderParams {
    pub fn new(gamma: f64, c_gamma: f64, delta: f64, h: f64) -> Result<Self> {
        let params = Self {
            gamma,
            c_gamma,
            delta,
            h,
        };
        params.validate()?;
        Ok(params)
    }

    /// Lipschitz case `gamma = 1` with the default slack and locality.
    pub fn lipschitz(c_1: f64) -> Result<Self> {
        Self::new(1.0, c_1, DEFAULT_SLACK, DEFAULT_LOCALITY)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(Error::param("gamma", format!("must lie in (0, 1], got {}", self.gamma)));
        }
        for (name, v) in [("c_gamma", self.c_gamma), ("delta", self.delta), ("h", self.h)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, format!("must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// `C = c_gamma (1 + delta)`.
    pub fn constant(&self) -> f64 {
        self.c_gamma * (1.0 + self.delta)
    }
}

/// Number of equally spaced points used to approximate an infimum over
/// `[x - h, x + h]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InfimumGrid(pub usize);

impl Default for InfimumGrid {
    fn default() -> Self {
        InfimumGrid(201)
    }
}

impl InfimumGrid {
    fn min_over(&self, centre: f64, h: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
        let points = self.0.max(2);
        let step = 2.0 * h / (points - 1) as f64;
        (0..points)
            .map(|k| {
                let x = if k == points - 1 { centre + h } else { centre - h + k as f64 * step };
                (x, f(x))
            })
            .fold((centre, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
    }
}

/// First-order bias term `-p / (2 n f(xi_p))`.
pub fn leading_term_bias(n: usize, p: ProbabilityLevel, density_at_quantile: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::param("n", "sample size must be positive"));
    }
    if !(density_at_quantile > 0.0 && density_at_quantile.is_finite()) {
        return Err(Error::param(
            "density_at_quantile",
            format!("must be positive, got {density_at_quantile}"),
        ));
    }
    Ok(-p.value() / (2.0 * n as f64 * density_at_quantile))
}

/// Upper bound on `-B_n`:
/// `C p^{(1+gamma)/2} / (n^{(1+gamma)/2} (1-p)^{(1-gamma)/2})`.
///
/// The bound is guaranteed only beyond some unquantified sample size; it is
/// reported for every `n`.
pub fn bias_upper_bound(n: usize, p: ProbabilityLevel, params: &HolderParams) -> Result<f64> {
    params.validate()?;
    if n == 0 {
        return Err(Error::param("n", "sample size must be positive"));
    }
    let pv = p.value();
    let g = params.gamma;
    let rate = (pv / n as f64).powf((1.0 + g) / 2.0);
    Ok(params.constant() * rate / (1.0 - pv).powf((1.0 - g) / 2.0))
}

/// `(inf_{|x - xi_p| <= h} f(x))^{-1}` for a known density, with the
/// infimum taken over `grid`.
pub fn lipschitz_constant_analytic(
    density: impl Fn(f64) -> f64,
    xi_p: f64,
    h: f64,
    grid: InfimumGrid,
) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::param("h", format!("must be positive, got {h}")));
    }
    let (at, inf) = grid.min_over(xi_p, h, density);
    if inf.is_nan() || inf <= 0.0 {
        return Err(Error::param(
            "density",
            format!("not positive on the neighbourhood (value {inf} at {at})"),
        ));
    }
    Ok(1.0 / inf)
}

fn density_floor_error(density: f64, at: f64, reason: &'static str) -> Error {
    Error::DensityFloor {
        density,
        at,
        floor: DENSITY_FLOOR,
        reason,
    }
}

/// Fits the KDE, mapping a degenerate bandwidth rule to a density-floor
/// failure: zero-spread data carries no density information.
fn fit_kde<'a>(sample: &'a Sample, config: &KdeConfig, at: f64) -> Result<Kde<'a>> {
    match Kde::fit(sample, config) {
        Err(Error::InvalidBandwidth(_)) if config.bandwidth == crate::kde::Bandwidth::Silverman => {
            Err(density_floor_error(0.0, at, "bandwidth rule degenerates on zero-spread data"))
        }
        other => other,
    }
}

/// Same as [`lipschitz_constant_analytic`] with the density replaced by the
/// KDE of `sample` and the centre by the empirical quantile.
pub fn lipschitz_constant_empirical(
    sample: &Sample,
    p: ProbabilityLevel,
    h: f64,
    config: &KdeConfig,
    grid: InfimumGrid,
) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::param("h", format!("must be positive, got {h}")));
    }
    let xi = empirical_quantile(sample, p);
    let kde = fit_kde(sample, config, xi)?;
    let (at, inf) = grid.min_over(xi, h, |x| kde.density(x));
    if inf < DENSITY_FLOOR {
        return Err(density_floor_error(inf, at, "too little data near the quantile"));
    }
    Ok(1.0 / inf)
}

/// Data-driven first-order bias.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeadingTermEstimate {
    pub quantile_estimate: f64,
    pub density_at_quantile: f64,
    pub bandwidth: f64,
    pub leading_term: f64,
}

/// Plugs the empirical quantile and the KDE at that quantile into the
/// first-order bias term.
pub fn estimate_leading_term(
    sample: &Sample,
    p: ProbabilityLevel,
    config: &KdeConfig,
) -> Result<LeadingTermEstimate> {
    let xi = empirical_quantile(sample, p);
    let kde = fit_kde(sample, config, xi)?;
    let density = kde.density(xi);
    if density < DENSITY_FLOOR {
        return Err(density_floor_error(density, xi, "too little data near the quantile"));
    }
    Ok(LeadingTermEstimate {
        quantile_estimate: xi,
        density_at_quantile: density,
        bandwidth: kde.bandwidth(),
        leading_term: leading_term_bias(sample.len(), p, density)?,
    })
}

/// Tuning for [`bias_report`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BiasConfig {
    pub kde: KdeConfig,
    pub gamma: f64,
    /// Required when `gamma != 1`; otherwise estimated from the data.
    pub c_gamma: Option<f64>,
    pub delta: f64,
    pub h: f64,
    pub grid: InfimumGrid,
}

impl Default for BiasConfig {
    fn default() -> Self {
        Self {
            kde: KdeConfig::silverman(),
            gamma: 1.0,
            c_gamma: None,
            delta: DEFAULT_SLACK,
            h: DEFAULT_LOCALITY,
            grid: InfimumGrid::default(),
        }
    }
}

/// Point estimate and bias diagnostics for one sample and level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiasReport {
    pub n: usize,
    pub p: f64,
    pub tvar_estimate: f64,
    pub quantile_estimate: f64,
    pub density_at_quantile: f64,
    pub bandwidth: f64,
    pub leading_term: f64,
    pub upper_bound: f64,
    /// The Hölder constant used in the bound (the empirical Lipschitz
    /// constant unless supplied).
    pub lipschitz_constant: f64,
    pub holder: HolderParams,
}

pub fn bias_report(sample: &Sample, p: ProbabilityLevel, config: &BiasConfig) -> Result<BiasReport> {
    let lead = estimate_leading_term(sample, p, &config.kde)?;
    let c_gamma = match config.c_gamma {
        Some(c) => c,
        None if config.gamma == 1.0 => {
            lipschitz_constant_empirical(sample, p, config.h, &config.kde, config.grid)?
        }
        None => {
            return Err(Error::param(
                "c_gamma",
                "must be supplied when gamma differs from 1",
            ))
        }
    };
    let holder = HolderParams::new(config.gamma, c_gamma, config.delta, config.h)?;
    Ok(BiasReport {
        n: sample.len(),
        p: p.value(),
        tvar_estimate: empirical_tvar(sample, p)?,
        quantile_estimate: lead.quantile_estimate,
        density_at_quantile: lead.density_at_quantile,
        bandwidth: lead.bandwidth,
        leading_term: lead.leading_term,
        upper_bound: bias_upper_bound(sample.len(), p, &holder)?,
        lipschitz_constant: c_gamma,
        holder,
    })
}

//! Empirical Tail Value-at-Risk (TVaR) estimation and diagnostics for its
//! finite-sample negative bias.
//!
//! * [`estimators`]: empirical quantile, TVaR and tail conditional
//!   expectation from order statistics.
//! * [`bias`]: the first-order bias `-p / (2 n f(xi_p))`, the Hölder-type
//!   bound on the negative bias, and local Lipschitz constants.
//! * [`pareto`]: closed-form ground truth under a Pareto model, including the
//!   exact finite-sample bias.
//! * [`resampling`]: Efron bootstrap and Monte-Carlo bias estimates.
//! * [`experiments`]: parameter sweeps and the loss-dataset workflow.
//!
//! ```
//! use tvar_bias::{empirical_tvar, ProbabilityLevel, Sample};
//!
//! let losses = Sample::new(vec![5.0, 1.0, 4.0, 2.0, 3.0]).unwrap();
//! let p = ProbabilityLevel::new(0.5).unwrap();
//! assert!((empirical_tvar(&losses, p).unwrap() - 4.2).abs() < 1e-12);
//! ```

pub mod bias;
pub mod cli;
pub mod data;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod kde;
pub mod parallel;
pub mod pareto;
pub mod resampling;
pub mod rng;
pub mod sample;
pub mod stats;

pub use bias::{
    bias_report, bias_upper_bound, estimate_leading_term, leading_term_bias,
    lipschitz_constant_analytic, lipschitz_constant_empirical, BiasConfig, BiasReport,
    HolderParams, InfimumGrid,
};
pub use error::{Error, Result};
pub use estimators::{
    empirical_quantile, empirical_tce, empirical_tvar, residual_decomposition,
    tce_tvar_identity_gap, ResidualDecomposition,
};
pub use kde::{kde_density_at, KdeConfig};
pub use pareto::ParetoModel;
pub use resampling::{bootstrap_bias, monte_carlo_bias, BootstrapConfig, MonteCarloResult};
pub use rng::Seed;
pub use sample::{ProbabilityLevel, Sample};

//! Parameter sweeps over the Pareto oracle and the loss-dataset workflow,
//! emitting plot-ready tables.
//!
//! Every grid point records the exact bias, the closed-form first-order term
//! and bound, and five-number summaries of their data-driven counterparts
//! over `replications` seeded samples. A failing grid point produces a row
//! with its `error` column set; the sweep carries on.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bias::{
    bias_report, bias_upper_bound, estimate_leading_term, leading_term_bias,
    lipschitz_constant_empirical, BiasConfig, BiasReport, HolderParams, InfimumGrid,
    DEFAULT_LOCALITY, DEFAULT_SLACK,
};
use crate::error::{Error, Result};
use crate::estimators::empirical_tvar;
use crate::kde::KdeConfig;
use crate::pareto::ParetoModel;
use crate::resampling::{monte_carlo_bias, repeated_bootstrap_bias, DEFAULT_RESAMPLES};
use crate::rng::{Seed, GENERATOR_ID};
use crate::sample::{ProbabilityLevel, Sample};
use crate::stats::Summary;

const SAMPLE_SIZES: [usize; 5] = [100, 300, 500, 700, 900];

/// Replicated samples per grid point.
pub const DEFAULT_REPLICATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl FigureId {
    pub const SIMULATED: [FigureId; 5] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fig1" => Ok(FigureId::Fig1),
            "fig2" => Ok(FigureId::Fig2),
            "fig3" => Ok(FigureId::Fig3),
            "fig4" => Ok(FigureId::Fig4),
            "fig5" => Ok(FigureId::Fig5),
            "fig6" => Ok(FigureId::Fig6),
            "fig7" => Ok(FigureId::Fig7),
            _ => Err(Error::UnknownFigure(s.to_string())),
        }
    }
}

fn default_h() -> f64 {
    DEFAULT_LOCALITY
}

fn default_delta_grid() -> Vec<f64> {
    vec![DEFAULT_SLACK]
}

fn default_replications() -> usize {
    DEFAULT_REPLICATIONS
}

/// A Pareto parameter sweep.
///
/// Rows are emitted for every `(alpha, p, n, delta)` combination, in that
/// nesting order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub figure: FigureId,
    pub alpha_grid: Vec<f64>,
    pub p_grid: Vec<f64>,
    pub n_grid: Vec<usize>,
    #[serde(default = "default_delta_grid")]
    pub delta_grid: Vec<f64>,
    #[serde(default = "default_h")]
    pub h: f64,
    /// Seeded samples per grid point for the data-driven estimates.
    #[serde(default = "default_replications")]
    pub replications: usize,
    /// Monte-Carlo replications for an independent bias check; 0 disables it.
    #[serde(default)]
    pub mc_replications: usize,
    pub seed: Seed,
    #[serde(default)]
    pub kde: KdeConfig,
    #[serde(default)]
    pub grid: InfimumGrid,
}

impl SweepSpec {
    /// Default grids for the simulated figures; `fig6` and `fig7` need data.
    pub fn for_figure(figure: FigureId, seed: impl Into<Seed>) -> Result<Self> {
        let (alpha_grid, p_grid, n_grid, delta_grid) = match figure {
            FigureId::Fig1 => (vec![5.0], vec![0.95], SAMPLE_SIZES.to_vec(), vec![DEFAULT_SLACK]),
            FigureId::Fig2 => (
                vec![5.0],
                vec![0.80, 0.85, 0.90, 0.95, 0.975],
                vec![500],
                vec![DEFAULT_SLACK],
            ),
            FigureId::Fig3 => (
                vec![3.0, 5.0, 10.0, 20.0, 30.0],
                vec![0.95],
                vec![500],
                vec![DEFAULT_SLACK],
            ),
            FigureId::Fig4 => (vec![3.0], vec![0.95], SAMPLE_SIZES.to_vec(), vec![0.01, 0.05, 0.1]),
            FigureId::Fig5 => (vec![3.0], vec![0.95], SAMPLE_SIZES.to_vec(), vec![DEFAULT_SLACK]),
            FigureId::Fig6 | FigureId::Fig7 => return Err(Error::NeedsDataset(figure.to_string())),
        };
        Ok(Self {
            figure,
            alpha_grid,
            p_grid,
            n_grid,
            delta_grid,
            h: DEFAULT_LOCALITY,
            replications: DEFAULT_REPLICATIONS,
            mc_replications: 0,
            seed: seed.into(),
            kde: KdeConfig::silverman(),
            grid: InfimumGrid::default(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if matches!(self.figure, FigureId::Fig6 | FigureId::Fig7) {
            return Err(Error::NeedsDataset(self.figure.to_string()));
        }
        for (name, empty) in [
            ("alpha_grid", self.alpha_grid.is_empty()),
            ("p_grid", self.p_grid.is_empty()),
            ("n_grid", self.n_grid.is_empty()),
            ("delta_grid", self.delta_grid.is_empty()),
        ] {
            if empty {
                return Err(Error::param(name, "grid must not be empty"));
            }
        }
        if self.replications == 0 {
            return Err(Error::param("replications", "must be at least 1"));
        }
        if self.mc_replications == 1 {
            return Err(Error::param("mc_replications", "use 0 to disable or at least 2"));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::param("h", format!("must be positive, got {}", self.h)));
        }
        Ok(())
    }
}

/// One table row. Columns that do not apply to a row are empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub figure: FigureId,
    pub alpha: Option<f64>,
    pub p: f64,
    pub n: usize,
    pub delta: Option<f64>,
    pub h: Option<f64>,
    pub true_tvar: Option<f64>,
    pub tvar_estimate: Option<f64>,
    pub exact_bias: Option<f64>,
    /// Closed-form first-order term, or its data-driven value for dataset rows.
    pub leading_term: Option<f64>,
    /// Bound on the negative bias with the closed-form (or data-driven)
    /// Lipschitz constant.
    pub upper_bound: Option<f64>,
    pub lipschitz_constant: Option<f64>,
    pub estimated_leading_term: Option<Summary>,
    pub estimated_leading_failures: usize,
    pub estimated_bound: Option<Summary>,
    pub estimated_bound_failures: usize,
    pub mc_bias: Option<f64>,
    pub mc_standard_error: Option<f64>,
    pub bootstrap_bias: Option<Summary>,
    pub bootstrap_positive: Option<usize>,
    pub error: Option<String>,
}

impl SweepRow {
    fn empty(figure: FigureId, p: f64, n: usize) -> Self {
        Self {
            figure,
            alpha: None,
            p,
            n,
            delta: None,
            h: None,
            true_tvar: None,
            tvar_estimate: None,
            exact_bias: None,
            leading_term: None,
            upper_bound: None,
            lipschitz_constant: None,
            estimated_leading_term: None,
            estimated_leading_failures: 0,
            estimated_bound: None,
            estimated_bound_failures: 0,
            mc_bias: None,
            mc_standard_error: None,
            bootstrap_bias: None,
            bootstrap_positive: None,
            error: None,
        }
    }
}

const SUMMARY_COLUMNS: [&str; 6] = ["mean", "min", "q25", "median", "q75", "max"];

fn csv_header() -> Vec<String> {
    let mut h: Vec<String> = [
        "figure",
        "alpha",
        "p",
        "n",
        "delta",
        "h",
        "true_tvar",
        "tvar_estimate",
        "exact_bias",
        "leading_term",
        "upper_bound",
        "lipschitz_constant",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let summary = |h: &mut Vec<String>, prefix: &str| {
        h.extend(SUMMARY_COLUMNS.iter().map(|c| format!("{prefix}_{c}")));
    };
    summary(&mut h, "est_leading");
    h.push("est_leading_failures".into());
    summary(&mut h, "est_bound");
    h.push("est_bound_failures".into());
    h.push("mc_bias".into());
    h.push("mc_se".into());
    summary(&mut h, "bootstrap_bias");
    h.push("bootstrap_positive".into());
    h.push("error".into());
    h
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn summary_cells(out: &mut Vec<String>, s: &Option<Summary>) {
    match s {
        Some(s) => out.extend(
            [s.mean, s.min, s.q25, s.median, s.q75, s.max]
                .iter()
                .map(|x| x.to_string()),
        ),
        None => out.extend(std::iter::repeat_n(String::new(), SUMMARY_COLUMNS.len())),
    }
}

impl SweepRow {
    fn csv_record(&self) -> Vec<String> {
        let mut r = vec![
            self.figure.to_string(),
            cell(self.alpha),
            self.p.to_string(),
            self.n.to_string(),
            cell(self.delta),
            cell(self.h),
            cell(self.true_tvar),
            cell(self.tvar_estimate),
            cell(self.exact_bias),
            cell(self.leading_term),
            cell(self.upper_bound),
            cell(self.lipschitz_constant),
        ];
        summary_cells(&mut r, &self.estimated_leading_term);
        r.push(self.estimated_leading_failures.to_string());
        summary_cells(&mut r, &self.estimated_bound);
        r.push(self.estimated_bound_failures.to_string());
        r.push(cell(self.mc_bias));
        r.push(cell(self.mc_standard_error));
        summary_cells(&mut r, &self.bootstrap_bias);
        r.push(self.bootstrap_positive.map(|c| c.to_string()).unwrap_or_default());
        r.push(self.error.clone().unwrap_or_default());
        r
    }
}

/// Rows of a sweep in deterministic grid order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// Provenance written next to every CSV.
#[derive(Debug, Clone, Serialize)]
pub struct SweepMetadata<'a, S: Serialize> {
    pub software: &'static str,
    pub version: &'static str,
    pub generator: &'static str,
    pub seed: Seed,
    pub spec: &'a S,
    pub rows: usize,
    pub failed_rows: usize,
}

impl SweepResult {
    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }

    /// CSV with a single header row, RFC 4180 quoting and `.` decimals.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(writer);
        w.write_record(csv_header())?;
        for row in &self.rows {
            w.write_record(row.csv_record())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }

    /// Writes `<dir>/<stem>.csv` and `<dir>/<stem>.meta.json`; returns both paths.
    pub fn write_outputs<S: Serialize>(
        &self,
        dir: &Path,
        stem: &str,
        seed: Seed,
        spec: &S,
    ) -> Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir)?;
        let csv_path = dir.join(format!("{stem}.csv"));
        let meta_path = dir.join(format!("{stem}.meta.json"));
        self.write_csv(std::io::BufWriter::new(std::fs::File::create(&csv_path)?))?;
        let meta = SweepMetadata {
            software: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            generator: GENERATOR_ID,
            seed,
            spec,
            rows: self.rows.len(),
            failed_rows: self.failed_rows(),
        };
        let mut json = serde_json::to_string_pretty(&meta)?;
        json.push('\n');
        std::fs::write(&meta_path, json)?;
        Ok((csv_path, meta_path))
    }
}

struct GridPoint {
    key: u64,
    alpha: f64,
    p: f64,
    n: usize,
    delta: f64,
}

fn grid_points(spec: &SweepSpec) -> Vec<GridPoint> {
    let mut points = Vec::new();
    let (np, nn) = (spec.p_grid.len() as u64, spec.n_grid.len() as u64);
    for (ai, &alpha) in spec.alpha_grid.iter().enumerate() {
        for (pi, &p) in spec.p_grid.iter().enumerate() {
            for (ni, &n) in spec.n_grid.iter().enumerate() {
                // Rows differing only in delta share their samples.
                let key = (ai as u64 * np + pi as u64) * nn + ni as u64;
                for &delta in &spec.delta_grid {
                    points.push(GridPoint {
                        key,
                        alpha,
                        p,
                        n,
                        delta,
                    });
                }
            }
        }
    }
    points
}

fn sweep_row(spec: &SweepSpec, point: &GridPoint) -> SweepRow {
    let mut row = SweepRow::empty(spec.figure, point.p, point.n);
    row.alpha = Some(point.alpha);
    row.delta = Some(point.delta);
    row.h = Some(spec.h);
    if let Err(e) = fill_sweep_row(spec, point, &mut row) {
        row.error = Some(e.to_string());
    }
    row
}

fn fill_sweep_row(spec: &SweepSpec, point: &GridPoint, row: &mut SweepRow) -> Result<()> {
    let model = ParetoModel::new(point.alpha)?;
    let p = ProbabilityLevel::new(point.p)?;
    let n = point.n;
    if n == 0 {
        return Err(Error::param("n", "sample size must be positive"));
    }
    row.true_tvar = Some(model.true_tvar(p));
    row.exact_bias = Some(model.exact_bias(p, n)?);
    row.leading_term = Some(leading_term_bias(n, p, model.density_at_quantile(p))?);
    let c1 = model.lipschitz_constant(p, spec.h)?;
    row.lipschitz_constant = Some(c1);
    let holder = HolderParams::new(1.0, c1, point.delta, spec.h)?;
    row.upper_bound = Some(bias_upper_bound(n, p, &holder)?);

    let point_seed = spec.seed.child(point.key);
    let estimates: Vec<(Option<f64>, Option<f64>)> = (0..spec.replications as u64)
        .into_par_iter()
        .map(|r| {
            let Ok(sample) = model.sample(n, point_seed.child(r)) else {
                return (None, None);
            };
            let lead = estimate_leading_term(&sample, p, &spec.kde)
                .ok()
                .map(|e| e.leading_term);
            let bound = lipschitz_constant_empirical(&sample, p, spec.h, &spec.kde, spec.grid)
                .and_then(|c| bias_upper_bound(n, p, &HolderParams::new(1.0, c, point.delta, spec.h)?))
                .ok();
            (lead, bound)
        })
        .collect();
    let leads: Vec<f64> = estimates.iter().filter_map(|e| e.0).collect();
    let bounds: Vec<f64> = estimates.iter().filter_map(|e| e.1).collect();
    row.estimated_leading_failures = estimates.len() - leads.len();
    row.estimated_bound_failures = estimates.len() - bounds.len();
    row.estimated_leading_term = Summary::from_values(&leads);
    row.estimated_bound = Summary::from_values(&bounds);

    if spec.mc_replications >= 2 {
        let mc = monte_carlo_bias(&model, n, p, spec.mc_replications, point_seed.child(u64::MAX))?;
        row.mc_bias = Some(mc.mean_bias);
        row.mc_standard_error = Some(mc.standard_error);
    }
    Ok(())
}

/// Runs a Pareto sweep. Output depends only on the spec, not on scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let rows = grid_points(spec)
        .par_iter()
        .map(|point| sweep_row(spec, point))
        .collect();
    Ok(SweepResult { rows })
}

fn default_dataset_levels() -> Vec<f64> {
    vec![0.90, 0.925, 0.95, 0.975, 0.99]
}

fn default_curve_levels() -> Vec<f64> {
    vec![0.95, 0.975, 0.99]
}

fn default_curve_sizes() -> Vec<usize> {
    vec![100, 250, 500, 1000, 2000, 5000, 10_000]
}

fn default_resamples() -> usize {
    DEFAULT_RESAMPLES
}

/// Settings for [`analyze_dataset`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    /// Levels for the per-level comparison rows (`fig6`).
    #[serde(default = "default_dataset_levels")]
    pub p_grid: Vec<f64>,
    /// Levels for the bias-versus-sample-size curves (`fig7`).
    #[serde(default = "default_curve_levels")]
    pub curve_p_grid: Vec<f64>,
    #[serde(default = "default_curve_sizes")]
    pub curve_n_grid: Vec<usize>,
    #[serde(default)]
    pub bias: BiasConfig,
    /// Bootstrap resamples per repetition.
    #[serde(default = "default_resamples")]
    pub num_resamples: usize,
    /// Bootstrap repetitions; 0 skips the bootstrap.
    #[serde(default = "default_replications")]
    pub repetitions: usize,
    pub seed: Seed,
}

impl DatasetSpec {
    pub fn new(seed: impl Into<Seed>) -> Self {
        Self {
            p_grid: default_dataset_levels(),
            curve_p_grid: default_curve_levels(),
            curve_n_grid: default_curve_sizes(),
            bias: BiasConfig::default(),
            num_resamples: DEFAULT_RESAMPLES,
            repetitions: DEFAULT_REPLICATIONS,
            seed: seed.into(),
        }
    }
}

/// Per-level comparison of the first-order term, the bound and repeated
/// bootstrap estimates (`fig6` rows), followed by first-order and bound
/// curves over `curve_n_grid` with the density and Lipschitz constant held
/// at their full-sample estimates (`fig7` rows).
pub fn analyze_dataset(sample: &Sample, spec: &DatasetSpec) -> Result<SweepResult> {
    if spec.p_grid.is_empty() && spec.curve_p_grid.is_empty() {
        return Err(Error::param("p_grid", "no probability levels requested"));
    }
    let n = sample.len();
    let mut rows = Vec::new();

    let levels: Vec<std::result::Result<ProbabilityLevel, Error>> =
        spec.p_grid.iter().map(|&p| ProbabilityLevel::new(p)).collect();
    let valid: Vec<ProbabilityLevel> = levels.iter().filter_map(|l| l.as_ref().ok().copied()).collect();
    let mut boot = if spec.repetitions > 0 && !valid.is_empty() {
        repeated_bootstrap_bias(sample, &valid, spec.num_resamples, spec.repetitions, spec.seed)?
    } else {
        Vec::new()
    }
    .into_iter();

    for (&p_raw, level) in spec.p_grid.iter().zip(&levels) {
        let mut row = SweepRow::empty(FigureId::Fig6, p_raw, n);
        row.delta = Some(spec.bias.delta);
        row.h = Some(spec.bias.h);
        let p = match level {
            Ok(p) => *p,
            Err(e) => {
                row.error = Some(e.to_string());
                rows.push(row);
                continue;
            }
        };
        row.tvar_estimate = Some(empirical_tvar(sample, p)?);
        if let Some(estimates) = boot.next() {
            row.bootstrap_positive = Some(estimates.iter().filter(|&&b| b > 0.0).count());
            row.bootstrap_bias = Summary::from_values(&estimates);
        }
        match bias_report(sample, p, &spec.bias) {
            Ok(report) => {
                row.leading_term = Some(report.leading_term);
                row.upper_bound = Some(report.upper_bound);
                row.lipschitz_constant = Some(report.lipschitz_constant);
            }
            Err(e) => row.error = Some(e.to_string()),
        }
        rows.push(row);
    }

    for &p_raw in &spec.curve_p_grid {
        let report: Result<BiasReport> =
            ProbabilityLevel::new(p_raw).and_then(|p| bias_report(sample, p, &spec.bias));
        for &m in &spec.curve_n_grid {
            let mut row = SweepRow::empty(FigureId::Fig7, p_raw, m);
            row.delta = Some(spec.bias.delta);
            row.h = Some(spec.bias.h);
            let filled = report.as_ref().map_err(|e| e.to_string()).and_then(|r| {
                let p = ProbabilityLevel::new(p_raw).map_err(|e| e.to_string())?;
                let lead = leading_term_bias(m, p, r.density_at_quantile).map_err(|e| e.to_string())?;
                let bound = bias_upper_bound(m, p, &r.holder).map_err(|e| e.to_string())?;
                Ok((lead, bound, r.lipschitz_constant))
            });
            match filled {
                Ok((lead, bound, c)) => {
                    row.leading_term = Some(lead);
                    row.upper_bound = Some(bound);
                    row.lipschitz_constant = Some(c);
                }
                Err(e) => row.error = Some(e),
            }
            rows.push(row);
        }
    }
    Ok(SweepResult { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_ids_parse() {
        assert_eq!("fig3".parse::<FigureId>().unwrap(), FigureId::Fig3);
        assert_eq!("FIG5".parse::<FigureId>().unwrap(), FigureId::Fig5);
        assert!(matches!("fig9".parse::<FigureId>(), Err(Error::UnknownFigure(_))));
    }

    #[test]
    fn default_grid_sizes() {
        for (fig, rows) in [
            (FigureId::Fig1, 5),
            (FigureId::Fig2, 5),
            (FigureId::Fig3, 5),
            (FigureId::Fig4, 15),
            (FigureId::Fig5, 5),
        ] {
            let spec = SweepSpec::for_figure(fig, 1).unwrap();
            assert_eq!(grid_points(&spec).len(), rows, "{fig}");
        }
        assert!(SweepSpec::for_figure(FigureId::Fig6, 1).is_err());
    }

    #[test]
    fn single_point_sweep_is_deterministic() {
        let mut spec = SweepSpec::for_figure(FigureId::Fig1, 5).unwrap();
        spec.n_grid = vec![200];
        spec.replications = 1;
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a.rows.len(), 1);
        assert_eq!(a, b);
        assert_eq!(a.rows[0].estimated_leading_term.unwrap().count, 1);
    }

    #[test]
    fn bad_grid_values_become_error_rows() {
        let mut spec = SweepSpec::for_figure(FigureId::Fig3, 5).unwrap();
        spec.alpha_grid = vec![0.5, 3.0];
        spec.replications = 2;
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.rows.len(), 2);
        assert!(result.rows[0].error.as_deref().unwrap().contains("shape"));
        assert!(result.rows[1].error.is_none());
        assert_eq!(result.failed_rows(), 1);
    }

    #[test]
    fn rejects_empty_grids() {
        let mut spec = SweepSpec::for_figure(FigureId::Fig1, 5).unwrap();
        spec.n_grid.clear();
        assert!(run_sweep(&spec).is_err());
    }

    #[test]
    fn csv_columns_line_up() {
        let mut spec = SweepSpec::for_figure(FigureId::Fig4, 5).unwrap();
        spec.replications = 2;
        spec.n_grid = vec![100];
        let result = run_sweep(&spec).unwrap();
        let text = result.to_csv_string().unwrap();
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let width = reader.headers().unwrap().len();
        assert_eq!(width, csv_header().len());
        let records: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
        assert_eq!(records.len(), 3);
        assert!(records.iter().all(|r| r.len() == width));
    }

    #[test]
    fn dataset_on_constant_sample_reports_errors() {
        let sample = Sample::new(vec![7.0; 300]).unwrap();
        let mut spec = DatasetSpec::new(3);
        spec.repetitions = 2;
        spec.num_resamples = 10;
        let result = analyze_dataset(&sample, &spec).unwrap();
        let fig6: Vec<_> = result.rows.iter().filter(|r| r.figure == FigureId::Fig6).collect();
        assert_eq!(fig6.len(), spec.p_grid.len());
        for row in &fig6 {
            assert!(row.error.as_deref().unwrap().contains("density floor"));
            assert_eq!(row.tvar_estimate, Some(7.0));
            assert_eq!(row.bootstrap_bias.unwrap().max, 0.0);
        }
        assert!(result
            .rows
            .iter()
            .filter(|r| r.figure == FigureId::Fig7)
            .all(|r| r.error.is_some()));
    }
}

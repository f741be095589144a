//! Command-line front end: `estimate`, `bias`, `simulate` and `analyze`.
//!
//! Machine-readable output goes to stdout or to files; diagnostics go to
//! stderr. Exit codes: 0 success, 1 internal error, 2 input or usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bias::{bias_report, BiasConfig, BiasReport, InfimumGrid, DEFAULT_LOCALITY, DEFAULT_SLACK};
use crate::data::{read_sample, ColumnSelector, CsvSource, HeaderMode};
use crate::error::{Error, Result};
use crate::estimators::{empirical_quantile, empirical_tce, empirical_tvar};
use crate::experiments::{analyze_dataset, run_sweep, DatasetSpec, FigureId, SweepSpec};
use crate::kde::KdeConfig;
use crate::parallel::with_workers;
use crate::resampling::{bootstrap_bias, BootstrapConfig};
use crate::rng::{Seed, GENERATOR_ID};
use crate::sample::{ProbabilityLevel, Sample};
use crate::stats::Summary;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "TVAR_BIAS_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "tvar-bias", version, about = "Empirical TVaR and its finite-sample bias")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Empirical TVaR, TCE and quantile of a loss column.
    Estimate(EstimateArgs),
    /// First-order bias, bias bound and optional bootstrap for a loss column.
    Bias(BiasArgs),
    /// Reproduce a simulated figure (fig1..fig5) or run a sweep spec file.
    Simulate(SimulateArgs),
    /// Per-level bias comparison and bias-versus-n curves for a loss column.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Delimited text file with one observation per row.
    input: PathBuf,
    /// Column name or 0-based index.
    #[arg(long, default_value = "0")]
    column: String,
    /// Treat the first row as data.
    #[arg(long, conflicts_with = "header")]
    no_header: bool,
    /// Treat the first row as a header (default: detect).
    #[arg(long)]
    header: bool,
    #[arg(long, default_value_t = ',')]
    delimiter: char,
}

impl InputArgs {
    fn load(&self) -> Result<Sample> {
        if !self.delimiter.is_ascii() {
            return Err(Error::param("delimiter", "must be a single ASCII character"));
        }
        let column: ColumnSelector = self.column.parse().unwrap_or_default();
        let header = if self.no_header {
            HeaderMode::Absent
        } else if self.header {
            HeaderMode::Present
        } else {
            HeaderMode::Detect
        };
        read_sample(&CsvSource {
            path: self.input.clone(),
            column,
            header,
            delimiter: self.delimiter as u8,
        })
    }
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Probability level in (0, 1).
    #[arg(long)]
    p: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct BiasArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    p: f64,
    /// Neighbourhood half-width for the Lipschitz constant.
    #[arg(long, default_value_t = DEFAULT_LOCALITY)]
    h: f64,
    /// Slack in C = c_gamma (1 + delta).
    #[arg(long, default_value_t = DEFAULT_SLACK)]
    delta: f64,
    /// Hölder exponent in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Hölder constant; estimated from the data when gamma = 1.
    #[arg(long)]
    c_gamma: Option<f64>,
    /// Kernel bandwidth, or `auto` for Silverman's rule.
    #[arg(long, default_value = "auto")]
    bandwidth: String,
    /// Points in the grid used for the density infimum.
    #[arg(long, default_value_t = 201)]
    grid_points: usize,
    /// Number of bootstrap resamples (requires --seed).
    #[arg(long)]
    bootstrap: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// One of fig1..fig5.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    figure: Option<String>,
    /// JSON sweep specification.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Output directory (default: $TVAR_BIAS_OUT_DIR or the current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Root seed; required with --figure, overrides the spec file's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the number of replicated samples per grid point.
    #[arg(long)]
    replications: Option<usize>,
    /// Monte-Carlo replications for an independent bias check.
    #[arg(long)]
    mc_replications: Option<usize>,
    /// Worker threads (output does not depend on this).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Levels for the per-level comparison.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    /// Levels for the bias-versus-n curves.
    #[arg(long, value_delimiter = ',')]
    curve_p: Option<Vec<f64>>,
    /// Sample sizes for the bias-versus-n curves.
    #[arg(long, value_delimiter = ',')]
    curve_n: Option<Vec<usize>>,
    #[arg(long, default_value_t = DEFAULT_LOCALITY)]
    h: f64,
    #[arg(long, default_value_t = DEFAULT_SLACK)]
    delta: f64,
    #[arg(long, default_value = "auto")]
    bandwidth: String,
    /// Bootstrap resamples per repetition.
    #[arg(long, default_value_t = 1000)]
    bootstrap: usize,
    /// Bootstrap repetitions.
    #[arg(long, default_value_t = 100)]
    repetitions: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

fn level(p: f64) -> Result<ProbabilityLevel> {
    ProbabilityLevel::new(p)
}

fn kde_config(bandwidth: &str) -> Result<KdeConfig> {
    if bandwidth.eq_ignore_ascii_case("auto") || bandwidth.eq_ignore_ascii_case("silverman") {
        return Ok(KdeConfig::silverman());
    }
    let b: f64 = bandwidth
        .parse()
        .map_err(|_| Error::param("bandwidth", format!("expected a number or `auto`, got `{bandwidth}`")))?;
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::InvalidBandwidth(b));
    }
    Ok(KdeConfig::fixed(b))
}

fn out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn write_single_row_csv<W: Write>(out: W, header: &[&str], row: &[String]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
    w.write_record(header)?;
    w.write_record(row)?;
    w.flush()?;
    Ok(())
}

fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

#[derive(Serialize)]
struct EstimateOutput {
    n: usize,
    p: f64,
    tvar: f64,
    tce: f64,
    quantile: f64,
}

fn cmd_estimate(args: &EstimateArgs, stdout: &mut dyn Write) -> Result<()> {
    let p = level(args.p)?;
    let sample = args.input.load()?;
    let out = EstimateOutput {
        n: sample.len(),
        p: p.value(),
        tvar: empirical_tvar(&sample, p)?,
        tce: empirical_tce(&sample, p)?,
        quantile: empirical_quantile(&sample, p),
    };
    match args.format {
        Format::Json => write_json(stdout, &out),
        Format::Csv => write_single_row_csv(
            stdout,
            &["n", "p", "tvar", "tce", "quantile"],
            &[
                out.n.to_string(),
                out.p.to_string(),
                out.tvar.to_string(),
                out.tce.to_string(),
                out.quantile.to_string(),
            ],
        ),
    }
}

#[derive(Serialize)]
struct BootstrapBlock {
    num_resamples: usize,
    seed: Seed,
    generator: &'static str,
    estimate: f64,
    resamples: Summary,
}

#[derive(Serialize)]
struct BiasOutput {
    #[serde(flatten)]
    report: BiasReport,
    tce: f64,
    bootstrap: Option<BootstrapBlock>,
}

fn cmd_bias(args: &BiasArgs, stdout: &mut dyn Write) -> Result<()> {
    let p = level(args.p)?;
    if args.bootstrap.is_some() && args.seed.is_none() {
        return Err(Error::param("seed", "--bootstrap requires an explicit --seed"));
    }
    let config = BiasConfig {
        kde: kde_config(&args.bandwidth)?,
        gamma: args.gamma,
        c_gamma: args.c_gamma,
        delta: args.delta,
        h: args.h,
        grid: InfimumGrid(args.grid_points),
    };
    let sample = args.input.load()?;
    let report = bias_report(&sample, p, &config)?;
    let bootstrap = match (args.bootstrap, args.seed) {
        (Some(l), Some(seed)) => {
            let cfg = BootstrapConfig::new(l, seed)?;
            let outcome = bootstrap_bias(&sample, p, &cfg)?;
            Some(BootstrapBlock {
                num_resamples: l,
                seed: cfg.seed,
                generator: GENERATOR_ID,
                estimate: outcome.estimate,
                resamples: Summary::from_values(&outcome.resample_values).expect("at least one resample"),
            })
        }
        _ => None,
    };
    let output = BiasOutput {
        report,
        tce: empirical_tce(&sample, p)?,
        bootstrap,
    };

    let mut file;
    let sink: &mut dyn Write = match &args.out {
        Some(path) => {
            file = std::io::BufWriter::new(std::fs::File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    match args.format {
        Format::Json => write_json(sink, &output),
        Format::Csv => {
            let r = &output.report;
            let mut header = vec![
                "n",
                "p",
                "tvar_estimate",
                "tce",
                "quantile_estimate",
                "density_at_quantile",
                "bandwidth",
                "leading_term",
                "upper_bound",
                "lipschitz_constant",
                "gamma",
                "delta",
                "h",
            ];
            let mut row: Vec<String> = [
                r.n as f64,
                r.p,
                r.tvar_estimate,
                output.tce,
                r.quantile_estimate,
                r.density_at_quantile,
                r.bandwidth,
                r.leading_term,
                r.upper_bound,
                r.lipschitz_constant,
                r.holder.gamma,
                r.holder.delta,
                r.holder.h,
            ]
            .iter()
            .map(|v| v.to_string())
            .collect();
            if let Some(b) = &output.bootstrap {
                header.extend(["bootstrap_resamples", "bootstrap_seed", "bootstrap_bias"]);
                row.extend([b.num_resamples.to_string(), b.seed.0.to_string(), b.estimate.to_string()]);
            }
            write_single_row_csv(sink, &header, &row)
        }
    }
}

fn cmd_simulate(args: &SimulateArgs, stderr: &mut dyn Write) -> Result<()> {
    let mut spec = match (&args.figure, &args.spec) {
        (Some(fig), _) => {
            let figure: FigureId = fig.parse()?;
            let seed = args
                .seed
                .ok_or_else(|| Error::param("seed", "--figure requires an explicit --seed"))?;
            SweepSpec::for_figure(figure, seed)?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Data {
                path: path.clone(),
                message: e.to_string(),
            })?;
            let mut spec: SweepSpec = serde_json::from_str(&text).map_err(|e| Error::Data {
                path: path.clone(),
                message: e.to_string(),
            })?;
            if let Some(seed) = args.seed {
                spec.seed = Seed(seed);
            }
            spec
        }
        (None, None) => return Err(Error::param("figure", "either --figure or --spec is required")),
    };
    if let Some(m) = args.replications {
        spec.replications = m;
    }
    if let Some(m) = args.mc_replications {
        spec.mc_replications = m;
    }
    let run = || run_sweep(&spec);
    let result = match args.workers {
        Some(w) => with_workers(w, run)??,
        None => run()?,
    };
    let dir = out_dir(args.out.clone());
    let (csv, meta) = result.write_outputs(&dir, spec.figure.as_str(), spec.seed, &spec)?;
    writeln!(
        stderr,
        "wrote {} rows ({} failed) to {} and {}",
        result.rows.len(),
        result.failed_rows(),
        csv.display(),
        meta.display()
    )?;
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs, stderr: &mut dyn Write) -> Result<()> {
    let mut spec = DatasetSpec::new(args.seed);
    if let Some(p) = &args.p {
        spec.p_grid = p.clone();
    }
    if let Some(p) = &args.curve_p {
        spec.curve_p_grid = p.clone();
    }
    if let Some(n) = &args.curve_n {
        spec.curve_n_grid = n.clone();
    }
    spec.bias.kde = kde_config(&args.bandwidth)?;
    spec.bias.h = args.h;
    spec.bias.delta = args.delta;
    spec.num_resamples = args.bootstrap;
    spec.repetitions = args.repetitions;
    let sample = args.input.load()?;
    let run = || analyze_dataset(&sample, &spec);
    let result = match args.workers {
        Some(w) => with_workers(w, run)??,
        None => run()?,
    };
    let dir = out_dir(args.out.clone());
    let (csv, meta) = result.write_outputs(&dir, "dataset", spec.seed, &spec)?;
    writeln!(
        stderr,
        "wrote {} rows ({} failed) to {} and {}",
        result.rows.len(),
        result.failed_rows(),
        csv.display(),
        meta.display()
    )?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let outcome = match &cli.command {
        Command::Estimate(a) => cmd_estimate(a, stdout),
        Command::Bias(a) => cmd_bias(a, stdout),
        Command::Simulate(a) => cmd_simulate(a, stderr),
        Command::Analyze(a) => cmd_analyze(a, stderr),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

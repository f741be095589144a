// Bias diagnostics for a loss dataset.
//
// `cargo run --example dataset_analysis -- losses.csv` reads the first
// column; with no argument a simulated Pareto sample is used.

use std::path::Path;

use tvar_bias::data::{read_sample, CsvSource};
use tvar_bias::experiments::{analyze_dataset, DatasetSpec};
use tvar_bias::{bias_report, BiasConfig, ParetoModel, ProbabilityLevel, Seed};

pub fn run_example(path: Option<&Path>) -> Result<(), Box<dyn std::error::Error>> {
    let sample = match path {
        Some(path) => read_sample(&CsvSource::new(path))?,
        None => ParetoModel::new(2.5)?.sample(2000, Seed(99))?,
    };
    let p = ProbabilityLevel::new(0.95)?;
    let report = bias_report(&sample, p, &BiasConfig::default())?;
    println!("n = {}, TVaR_0.95 = {:.4}", report.n, report.tvar_estimate);
    println!("  density at quantile {:.5} (bandwidth {:.4})", report.density_at_quantile, report.bandwidth);
    println!("  first-order bias    {:+.5}", report.leading_term);
    println!("  bound on -bias      {:.5}", report.upper_bound);

    let mut spec = DatasetSpec::new(5);
    spec.num_resamples = 200;
    spec.repetitions = 10;
    let table = analyze_dataset(&sample, &spec)?;
    print!("{}", table.to_csv_string()?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1);
    run_example(path.as_deref().map(Path::new))
}

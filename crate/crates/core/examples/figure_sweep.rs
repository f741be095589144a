// Runs a parameter sweep and prints the resulting table as CSV.

use tvar_bias::experiments::{run_sweep, FigureId, SweepSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut spec = SweepSpec::for_figure(FigureId::Fig2, 42)?;
    spec.replications = 10;
    let result = run_sweep(&spec)?;
    print!("{}", result.to_csv_string()?);
    eprintln!("{} rows, {} failed", result.rows.len(), result.failed_rows());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Seeded bootstrap estimate of the TVaR bias.

use tvar_bias::{bootstrap_bias, BootstrapConfig, ParetoModel, ProbabilityLevel, Seed};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = ParetoModel::new(3.0)?;
    let p = ProbabilityLevel::new(0.9)?;
    let sample = model.sample(500, Seed(7))?;

    let cfg = BootstrapConfig::new(1000, 2024)?;
    let outcome = bootstrap_bias(&sample, p, &cfg)?;
    println!("empirical TVaR     {:.5}", outcome.original);
    println!("bootstrap bias     {:+.5}", outcome.estimate);
    println!("exact bias         {:+.5}", model.exact_bias(p, 500)?);

    // Same seed, same answer.
    let again = bootstrap_bias(&sample, p, &cfg)?;
    assert_eq!(outcome.estimate, again.estimate);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

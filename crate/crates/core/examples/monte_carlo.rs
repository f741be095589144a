// Monte-Carlo bias of the empirical TVaR and TCE against the exact value.

use tvar_bias::resampling::monte_carlo_tce_comparison;
use tvar_bias::{monte_carlo_bias, ParetoModel, ProbabilityLevel, Seed};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = ParetoModel::new(3.0)?;
    let p = ProbabilityLevel::new(0.9)?;
    let n = 100;

    let mc = monte_carlo_bias(&model, n, p, 20_000, Seed(1))?;
    let exact = model.exact_bias(p, n)?;
    println!(
        "n = {n}: MC {:+.5} ± {:.5}, exact {exact:+.5}",
        mc.mean_bias, mc.standard_error
    );

    // Off the n*p grid the TCE is biased further downward than the TVaR.
    let off_grid = ProbabilityLevel::new(0.935)?;
    let cmp = monte_carlo_tce_comparison(&model, n, off_grid, 20_000, Seed(2))?;
    println!(
        "p = 0.935: TVaR bias {:+.5}, TCE bias {:+.5}",
        cmp.tvar.mean_bias, cmp.tce.mean_bias
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Empirical quantile, TVaR and TCE on a small loss sample.
//
// Run with `cargo run --example empirical_estimators`.

use tvar_bias::{empirical_quantile, empirical_tce, empirical_tvar, tce_tvar_identity_gap};
use tvar_bias::{ProbabilityLevel, Sample};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let losses = Sample::new(vec![3.2, 1.1, 7.9, 2.4, 5.0, 1.7, 12.6, 4.4, 2.9, 6.1])?;
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "p", "quantile", "TVaR", "TCE", "gap");
    for p in [0.5, 0.75, 0.8, 0.85, 0.9] {
        let p = ProbabilityLevel::new(p)?;
        // TCE and TVaR agree when n*p is an integer.
        println!(
            "{:>6} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            p.value(),
            empirical_quantile(&losses, p),
            empirical_tvar(&losses, p)?,
            empirical_tce(&losses, p)?,
            tce_tvar_identity_gap(&losses, p)?,
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Upper bound on the negative bias with the Lipschitz constant of the
// quantile function, compared against the exact bias.

use tvar_bias::{bias_upper_bound, HolderParams, ParetoModel, ProbabilityLevel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = ParetoModel::new(3.0)?;
    let p = ProbabilityLevel::new(0.95)?;
    let h = 0.05;
    let c1 = model.lipschitz_constant(p, h)?;
    println!("local Lipschitz constant c1 = {c1:.4}");

    for delta in [0.01, 0.05, 0.1] {
        let params = HolderParams::new(1.0, c1, delta, h)?;
        for n in [100, 500, 900] {
            let bound = bias_upper_bound(n, p, &params)?;
            let neg_bias = -model.exact_bias(p, n)?;
            println!("delta {delta:<5} n {n:>4}: -bias {neg_bias:.5} <= bound {bound:.5}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

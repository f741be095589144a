// Closed-form Pareto quantities: true TVaR, order-statistic means and the
// exact finite-sample bias of the empirical TVaR.

use tvar_bias::{ParetoModel, ProbabilityLevel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = ParetoModel::new(3.0)?;
    let p = ProbabilityLevel::new(0.95)?;
    println!("alpha = 3, p = 0.95");
    println!("  quantile       {:.6}", model.quantile(p));
    println!("  true TVaR      {:.6}", model.true_tvar(p));
    println!("  f(quantile)    {:.6}", model.density_at_quantile(p));
    println!("  E X_(10:10)    {:.6}", model.order_statistic_mean(10, 10)?);

    for n in [20, 100, 500, 2000] {
        let bias = model.exact_bias(p, n)?;
        println!("  n = {n:>5}: exact bias {bias:+.6}, n * bias {:+.4}", n as f64 * bias);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

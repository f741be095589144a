// First-order bias term: closed form under Pareto versus the plug-in value
// from a kernel density estimate on a simulated sample.

use tvar_bias::{
    estimate_leading_term, leading_term_bias, KdeConfig, ParetoModel, ProbabilityLevel, Seed,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = ParetoModel::new(5.0)?;
    let p = ProbabilityLevel::new(0.95)?;
    let f = model.density_at_quantile(p);

    println!("{:>5} {:>12} {:>12} {:>12}", "n", "exact", "first-order", "plug-in");
    for (k, n) in [100usize, 300, 900].into_iter().enumerate() {
        let sample = model.sample(n, Seed(42).child(k as u64))?;
        let plug_in = estimate_leading_term(&sample, p, &KdeConfig::silverman())?;
        println!(
            "{n:>5} {:>12.6} {:>12.6} {:>12.6}",
            model.exact_bias(p, n)?,
            leading_term_bias(n, p, f)?,
            plug_in.leading_term,
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

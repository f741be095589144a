mod empirical_estimators {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/empirical_estimators.rs"));
}
mod pareto_oracle {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/pareto_oracle.rs"));
}
mod leading_term {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/leading_term.rs"));
}
mod upper_bound {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/upper_bound.rs"));
}
mod bootstrap {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bootstrap.rs"));
}
mod monte_carlo {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/monte_carlo.rs"));
}
mod figure_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/figure_sweep.rs"));
}
mod dataset_analysis {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dataset_analysis.rs"));
}

#[test]
fn examples_run() {
    empirical_estimators::run_example().unwrap();
    pareto_oracle::run_example().unwrap();
    leading_term::run_example().unwrap();
    upper_bound::run_example().unwrap();
    bootstrap::run_example().unwrap();
    monte_carlo::run_example().unwrap();
    figure_sweep::run_example().unwrap();
}

#[test]
fn dataset_example_runs_on_simulated_sample() {
    dataset_analysis::run_example(None).unwrap();
}

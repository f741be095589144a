//! Estimators and closed forms checked against independent routes:
//! quadrature, Monte Carlo, and analytic densities.

use tvar_bias::bias::{
    estimate_leading_term, lipschitz_constant_analytic, lipschitz_constant_empirical, InfimumGrid,
};
use tvar_bias::kde::{kde_density_at, Kde};
use tvar_bias::resampling::monte_carlo_bias;
use tvar_bias::{empirical_quantile, KdeConfig, ParetoModel, ProbabilityLevel, Sample, Seed};

use rand::{Rng, SeedableRng};

fn level(p: f64) -> ProbabilityLevel {
    ProbabilityLevel::new(p).unwrap()
}

fn pareto(alpha: f64) -> ParetoModel {
    ParetoModel::new(alpha).unwrap()
}

/// Mean and standard error of `X_{i:n}` from direct simulation with a
/// generator unrelated to the library's sampler.
fn simulated_order_statistic(alpha: f64, i: usize, n: usize, reps: usize) -> (f64, f64) {
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(2024);
    let mut draws = vec![0.0; n];
    let (mut sum, mut sq) = (0.0, 0.0);
    for _ in 0..reps {
        for d in draws.iter_mut() {
            let u: f64 = rng.random();
            *d = (1.0 - u).powf(-1.0 / alpha);
        }
        draws.sort_by(f64::total_cmp);
        let x = draws[i - 1];
        sum += x;
        sq += x * x;
    }
    let mean = sum / reps as f64;
    let var = (sq / reps as f64 - mean * mean) * reps as f64 / (reps - 1) as f64;
    (mean, (var / reps as f64).sqrt())
}

#[test]
fn order_statistic_means_match_simulation() {
    let model = pareto(3.0);
    for (i, n) in [(2, 2), (9, 10), (45, 50)] {
        let exact = model.order_statistic_mean(i, n).unwrap();
        let (mean, se) = simulated_order_statistic(3.0, i, n, 200_000);
        assert!(
            (mean - exact).abs() <= 3.0 * se,
            "(i, n) = ({i}, {n}): exact {exact}, simulated {mean} ± {se}"
        );
    }
}

#[test]
fn sample_mean_matches_pareto_mean() {
    let s = pareto(3.0).sample(100_000, Seed(31)).unwrap();
    let se = s.std_dev() / (s.len() as f64).sqrt();
    assert!((s.mean() - 1.5).abs() <= 3.0 * se, "{} ± {se}", s.mean());
}

#[test]
fn exact_bias_matches_monte_carlo() {
    let model = pareto(3.0);
    let p = level(0.9);
    let exact = model.exact_bias(p, 100).unwrap();
    let mc = monte_carlo_bias(&model, 100, p, 200_000, Seed(7)).unwrap();
    assert!(
        (mc.mean_bias - exact).abs() <= 3.0 * mc.standard_error,
        "exact {exact}, mc {} ± {}",
        mc.mean_bias,
        mc.standard_error
    );
}

#[test]
fn first_order_ratio_converges_along_n() {
    let model = pareto(5.0);
    let p = level(0.95);
    let errors: Vec<f64> = [100, 300, 900, 2700]
        .iter()
        .map(|&n| {
            let exact = model.exact_bias(p, n).unwrap();
            let limit = -p.value() / (2.0 * model.density_at_quantile(p));
            (n as f64 * exact / limit - 1.0).abs()
        })
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}

#[test]
fn exact_bias_grows_with_level_and_tail_weight() {
    let model = pareto(5.0);
    let by_p: Vec<f64> = [0.80, 0.85, 0.90, 0.95, 0.975]
        .iter()
        .map(|&p| model.exact_bias(level(p), 500).unwrap())
        .collect();
    assert!(by_p.windows(2).all(|w| w[1] < w[0]), "{by_p:?}");

    let by_alpha: Vec<f64> = [3.0, 5.0, 10.0, 20.0, 30.0]
        .iter()
        .map(|&a| pareto(a).exact_bias(level(0.95), 500).unwrap())
        .collect();
    assert!(by_alpha.windows(2).all(|w| w[1] > w[0]), "{by_alpha:?}");
}

#[test]
fn exact_bias_quadrature_cross_check() {
    // E max(X1, X2) = 2 alpha * int_0^1 t^{alpha-2} (1 - t^alpha) dt after x = 1/t.
    let alpha = 3.0;
    let f = |t: f64| 2.0 * alpha * t.powf(alpha - 2.0) * (1.0 - t.powf(alpha));
    let steps = 10_000;
    let h = 1.0 / steps as f64;
    let simpson: f64 = (0..steps)
        .map(|k| {
            let a = k as f64 * h;
            h / 6.0 * (f(a) + 4.0 * f(a + h / 2.0) + f(a + h))
        })
        .sum();
    assert!((simpson - 1.8).abs() < 1e-8);
    let bias = pareto(alpha).exact_bias(level(0.5), 2).unwrap();
    assert!((bias - (simpson - pareto(alpha).true_tvar(level(0.5)))).abs() < 1e-8);
}

#[test]
fn kde_integrates_to_one() {
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(5);
    let values: Vec<f64> = (0..300).map(|_| rng.random_range(-2.0..3.0)).collect();
    let s = Sample::new(values).unwrap();
    for config in [KdeConfig::silverman(), KdeConfig::fixed(0.05), KdeConfig::fixed(1.0)] {
        let kde = Kde::fit(&s, &config).unwrap();
        let b = kde.bandwidth();
        let (lo, hi) = (s.min() - 12.0 * b, s.max() + 12.0 * b);
        let steps = 200_000;
        let h = (hi - lo) / steps as f64;
        let integral: f64 = (0..=steps)
            .map(|k| {
                let w = if k == 0 || k == steps { 0.5 } else { 1.0 };
                w * kde.density(lo + k as f64 * h)
            })
            .sum::<f64>()
            * h;
        assert!((0.999..=1.001).contains(&integral), "{config:?}: {integral}");
    }
}

#[test]
fn kde_tracks_pareto_density_on_large_sample() {
    let model = pareto(3.0);
    let s = model.sample(100_000, Seed(13)).unwrap();
    let p = level(0.9);
    let truth = 3.0 * 0.1f64.powf(4.0 / 3.0);
    let est = kde_density_at(&s, model.quantile(p), &KdeConfig::silverman()).unwrap();
    assert!((est - truth).abs() / truth <= 0.15, "{est} vs {truth}");
}

#[test]
fn estimated_leading_term_near_closed_form() {
    let model = pareto(5.0);
    let p = level(0.95);
    let s = model.sample(900, Seed(42)).unwrap();
    let est = estimate_leading_term(&s, p, &KdeConfig::silverman()).unwrap();
    let truth = -0.95 / (2.0 * 900.0 * model.density_at_quantile(p));
    assert!(est.leading_term < 0.0);
    assert!(
        ((est.leading_term - truth) / truth).abs() <= 0.25,
        "{} vs {truth}",
        est.leading_term
    );
}

#[test]
fn analytic_lipschitz_agrees_with_closed_form() {
    for alpha in [1.5, 3.0, 10.0] {
        let model = pareto(alpha);
        for p in [0.8, 0.95, 0.99] {
            let p = level(p);
            let grid = lipschitz_constant_analytic(|x| model.pdf(x), model.quantile(p), 0.05, InfimumGrid::default())
                .unwrap();
            let closed = model.lipschitz_constant(p, 0.05).unwrap();
            assert!((grid - closed).abs() <= 1e-12 * closed, "alpha={alpha}");
        }
    }
}

#[test]
fn empirical_lipschitz_near_pareto_closed_form() {
    let model = pareto(3.0);
    let p = level(0.95);
    let s = model.sample(100_000, Seed(77)).unwrap();
    let est = lipschitz_constant_empirical(&s, p, 0.05, &KdeConfig::silverman(), InfimumGrid::default())
        .unwrap();
    let closed = model.lipschitz_constant(p, 0.05).unwrap();
    assert!(est > 0.0);
    assert!(((est - closed) / closed).abs() <= 0.30, "{est} vs {closed}");
}

#[test]
fn empirical_lipschitz_uniform_is_one() {
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(99);
    let values: Vec<f64> = (0..100_000).map(|_| rng.random::<f64>()).collect();
    let s = Sample::new(values).unwrap();
    let p = level(0.5);
    let c = lipschitz_constant_empirical(&s, p, 0.01, &KdeConfig::silverman(), InfimumGrid::default()).unwrap();
    assert!((c - 1.0).abs() <= 0.15, "{c}");
    assert!((empirical_quantile(&s, p) - 0.5).abs() < 0.01);
}

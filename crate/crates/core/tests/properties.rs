use proptest::prelude::*;
use tvar_bias::bias::{bias_upper_bound, leading_term_bias, HolderParams};
use tvar_bias::{
    empirical_quantile, empirical_tce, empirical_tvar, residual_decomposition,
    tce_tvar_identity_gap, ProbabilityLevel, Sample,
};

/// Integrates the left-continuous empirical quantile step function over
/// (p, 1] piece by piece: on ((i-1)/n, i/n] it equals X_{i:n}.
fn integrated_tail_mean(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len() as f64;
    let mut area = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let lo = (i as f64 / n).max(p);
        let hi = (i + 1) as f64 / n;
        if hi > lo {
            area += x * (hi - lo);
        }
    }
    area / (1.0 - p)
}

fn sample_strategy(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e3f64..1e3, 1..=max_len)
}

fn level() -> impl Strategy<Value = f64> {
    0.001f64..0.999
}

proptest! {
    #[test]
    fn tvar_equals_integrated_quantile(values in sample_strategy(50), p in level()) {
        let s = Sample::new(values).unwrap();
        let lvl = ProbabilityLevel::new(p).unwrap();
        let split = lvl.split(s.len());
        // Skip levels that the integrality rule snaps but that sit a hair off
        // the grid; the step integral sees a sliver there.
        let np = s.len() as f64 * p;
        prop_assume!(split.frac > 0.0 || (np - np.round()).abs() < 1e-12);
        let direct = empirical_tvar(&s, lvl).unwrap();
        let oracle = integrated_tail_mean(s.values(), p);
        let scale = s.values().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        prop_assert!((direct - oracle).abs() <= 1e-10 * scale, "{direct} vs {oracle}");
    }

    #[test]
    fn tvar_dominates_quantile_off_grid(values in sample_strategy(50), p in level()) {
        let s = Sample::new(values).unwrap();
        let lvl = ProbabilityLevel::new(p).unwrap();
        prop_assume!(!lvl.split(s.len()).is_integer());
        let scale = s.values().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        prop_assert!(empirical_tvar(&s, lvl).unwrap() >= empirical_quantile(&s, lvl) - 1e-12 * scale);
    }

    #[test]
    fn tce_never_exceeds_tvar(values in sample_strategy(60), p in level()) {
        let s = Sample::new(values).unwrap();
        let lvl = ProbabilityLevel::new(p).unwrap();
        let tvar = empirical_tvar(&s, lvl).unwrap();
        let tce = empirical_tce(&s, lvl).unwrap();
        let gap = tce_tvar_identity_gap(&s, lvl).unwrap();
        let scale = s.values().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        prop_assert!(gap >= -1e-12 * scale);
        prop_assert!(tce <= tvar + 1e-12 * scale);
        prop_assert!((tce - (tvar - gap)).abs() <= 1e-12 * scale);
        if lvl.split(s.len()).is_integer() {
            prop_assert_eq!(gap, 0.0);
        }
    }

    #[test]
    fn tvar_is_translation_equivariant_and_homogeneous(
        values in sample_strategy(40),
        p in level(),
        shift in -100.0f64..100.0,
        factor in 0.01f64..100.0,
    ) {
        let s = Sample::new(values).unwrap();
        let lvl = ProbabilityLevel::new(p).unwrap();
        let base = empirical_tvar(&s, lvl).unwrap();
        let scale = s.values().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let shifted = empirical_tvar(&s.map_monotone(|x| x + shift).unwrap(), lvl).unwrap();
        prop_assert!((shifted - (base + shift)).abs() <= 1e-9 * (scale + shift.abs()));
        let scaled = empirical_tvar(&s.map_monotone(|x| x * factor).unwrap(), lvl).unwrap();
        prop_assert!((scaled - factor * base).abs() <= 1e-9 * factor * scale);
    }

    #[test]
    fn residual_is_non_negative(
        values in sample_strategy(80),
        p in level(),
        xi in -1e3f64..1e3,
        t in -1e3f64..1e3,
    ) {
        let s = Sample::new(values).unwrap();
        let lvl = ProbabilityLevel::new(p).unwrap();
        let mu = p * xi + (1.0 - p) * t;
        let d = residual_decomposition(&s, lvl, xi, t, mu).unwrap();
        let scale = s.values().iter().fold(xi.abs(), |m, v| m.max(v.abs())).max(1.0);
        prop_assert!(d.residual >= -1e-12 * scale / (1.0 - p), "residual {}", d.residual);
        prop_assert!(d.identity_gap() <= 1e-9 * (scale + t.abs()) / (1.0 - p));
    }

    #[test]
    fn leading_term_shape(n in 1usize..100_000, p in level(), f in 1e-6f64..1e3, g in 1e-6f64..1e3) {
        let lvl = ProbabilityLevel::new(p).unwrap();
        let a = leading_term_bias(n, lvl, f).unwrap();
        prop_assert!(a < 0.0);
        let b = leading_term_bias(n, lvl, g).unwrap();
        if f < g {
            prop_assert!(a < b);
        }
        let doubled = leading_term_bias(2 * n, lvl, f).unwrap();
        prop_assert!((a - 2.0 * doubled).abs() <= 1e-15 * a.abs());
    }

    #[test]
    fn bound_monotonicity(
        n in 1usize..10_000,
        p in level(),
        gamma in 0.05f64..=1.0,
        c in 0.01f64..100.0,
        delta in 0.001f64..1.0,
    ) {
        let lvl = ProbabilityLevel::new(p).unwrap();
        let base = HolderParams::new(gamma, c, delta, 0.05).unwrap();
        let b = bias_upper_bound(n, lvl, &base).unwrap();
        prop_assert!(b > 0.0);
        let more_c = HolderParams { c_gamma: c * 1.5, ..base };
        prop_assert!(bias_upper_bound(n, lvl, &more_c).unwrap() > b);
        let more_delta = HolderParams { delta: delta * 1.5, ..base };
        prop_assert!(bias_upper_bound(n, lvl, &more_delta).unwrap() > b);
        prop_assert!(bias_upper_bound(n + 1, lvl, &base).unwrap() < b);
    }

    #[test]
    fn lipschitz_bound_increases_in_p(n in 1usize..10_000, p in 0.01f64..0.98, dp in 0.001f64..0.01) {
        let params = HolderParams::new(1.0, 3.0, 0.05, 0.05).unwrap();
        let lo = bias_upper_bound(n, ProbabilityLevel::new(p).unwrap(), &params).unwrap();
        let hi = bias_upper_bound(n, ProbabilityLevel::new(p + dp).unwrap(), &params).unwrap();
        prop_assert!(hi > lo);
    }
}

#[test]
fn step_integral_oracle_reproduces_hand_value() {
    assert!((integrated_tail_mean(&[1.0, 2.0, 3.0, 4.0, 5.0], 0.5) - 4.2).abs() < 1e-14);
}

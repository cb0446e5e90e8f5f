mod common;

use opcalc::discrete::{discrete_ft, discrete_ft_on, discrete_lt, inverse_dlt, inverse_series, SeriesSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integration_interval_does_not_matter_for_causal_input(fd in common::grid_dfunction(), period in 6.0..12.0f64) {
        let f = fd.to_causal();
        let spec = SeriesSpec::new(period, 32, 0.0).unwrap();
        let full = discrete_ft(|t| f.value(t), &spec).unwrap();
        let half = discrete_ft_on(|t| f.value(t), &spec, 0.0, 0.5 * period).unwrap();
        let scale = full.nonnegative().iter().fold(1e-300f64, |m, z| m.max(z.norm()));
        for n in full.indices() {
            prop_assert!((full.get(n) - half.get(n)).norm() <= 1e-10 * scale.max(1.0));
        }
    }

    #[test]
    fn real_input_has_conjugate_symmetric_transform(fd in common::grid_dfunction()) {
        let spec = SeriesSpec::new(8.0, 16, 0.0).unwrap();
        let full = discrete_ft(|t| fd.eval(t), &spec).unwrap();
        for n in 1..=16i64 {
            prop_assert_eq!(full.get(-n), full.get(n).conj());
        }
        let mirrored = discrete_ft(|t| fd.eval(-t), &spec).unwrap();
        for n in full.indices() {
            prop_assert!((mirrored.get(n) - full.get(n).conj()).norm() <= 1e-10 * (1.0 + full.get(n).norm()));
        }
        prop_assert!(full.get(0).im.abs() <= 1e-10 * (1.0 + full.get(0).re.abs()));
    }
}

fn interior_error(n_max: usize) -> f64 {
    // continuous with a kink at the origin; negligible jump at ±T/2
    let f = |t: f64| if t < 0.0 { 0.0 } else { (-t).exp() * t.sin() };
    let spec = SeriesSpec::new(40.0, n_max, 0.0).unwrap();
    let ft = discrete_ft(f, &spec).unwrap();
    (0..=50)
        .map(|i| -6.0 + 12.0 * i as f64 / 50.0)
        .filter(|t: &f64| t.abs() >= 1.0)
        .map(|t| (inverse_series(&ft, t) - f(t)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn doubling_harmonics_at_least_halves_interior_error() {
    let errors: Vec<f64> = [32, 64, 128, 256].iter().map(|&n| interior_error(n)).collect();
    for w in errors.windows(2) {
        assert!(w[1] <= 0.5 * w[0], "{errors:?}");
    }
}

#[test]
fn causal_inverse_vanishes_before_origin() {
    let spec = SeriesSpec::new(8.0, 1024, 0.5).unwrap();
    let f = |t: f64| if t < 0.0 { 0.0 } else { (-t).exp() };
    let l = discrete_lt(f, &spec).unwrap();
    for t in [-3.0, -2.0, -1.0, -0.5] {
        assert!(inverse_dlt(&l, t).abs() < 1e-2, "t={t}: {}", inverse_dlt(&l, t));
    }
    for t in [0.5, 1.0, 2.0, 3.0] {
        assert!((inverse_dlt(&l, t) - f(t)).abs() < 1e-2);
    }
    // the bilateral exponential is not reproduced before the origin
    let g = |t: f64| (-t).exp();
    let l = discrete_lt(g, &spec).unwrap();
    assert!((inverse_dlt(&l, -2.0) - g(-2.0)).abs() > 0.1);
}

#[test]
fn zero_input_has_zero_transform() {
    let spec = SeriesSpec::new(8.0, 8, 0.5).unwrap();
    let l = discrete_lt(|_| 0.0, &spec).unwrap();
    assert!(l.nonnegative().iter().all(|z| z.norm() == 0.0));
}

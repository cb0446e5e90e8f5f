mod common;

use opcalc::odesolver::{
    conflict_report, evoked_solution, spontaneous_solution, tlt_solution, total_solution, Evoked, OdeProblem,
};
use opcalc::oracles::{ode_timestep, NumericConfig};
use opcalc::{CausalFunction, DFunction};
use proptest::prelude::*;

fn problem((a, b, x, init): (Vec<f64>, Vec<f64>, DFunction, Vec<f64>)) -> OdeProblem {
    OdeProblem::new(a, b, x.to_causal(), init).unwrap()
}

/// Smooth part of the total solution for `t > 0` as a d-function.
fn total_modal(p: &OdeProblem) -> DFunction {
    let bundle = total_solution(p).unwrap();
    let evoked = match bundle.evoked {
        Evoked::Closed(f) => f,
        other => panic!("expected a closed form, got {other:?}"),
    };
    let smooth = CausalFunction::new(evoked.terms().to_vec(), Vec::new(), Vec::new()).unwrap();
    smooth.modal_part().unwrap().add(&bundle.spontaneous)
}

fn residual(a: &[f64], y: &DFunction, rhs: impl Fn(f64) -> (f64, f64), t: f64) -> (f64, f64) {
    let mut sum = 0.0;
    let mut scale = 0.0f64;
    for (n, &an) in a.iter().enumerate() {
        let v = an * y.derivative_n(n as u32).eval(t);
        sum += v;
        scale = scale.max(v.abs());
    }
    let (r, r_scale) = rhs(t);
    (sum - r, scale.max(r_scale))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn total_solution_satisfies_equation(parts in common::ode_parts(4, false, None)) {
        let p = problem(parts.clone());
        let (a, b, x, _) = parts;
        let y = total_modal(&p);
        let rhs = |t: f64| {
            let mut sum = 0.0;
            let mut scale = 0.0f64;
            for (m, &bm) in b.iter().enumerate() {
                let v = bm * x.derivative_n(m as u32).eval(t);
                sum += v;
                scale = scale.max(v.abs());
            }
            (sum, scale)
        };
        let (mut worst, mut scale) = (0.0f64, 0.0f64);
        for i in 0..50 {
            let t = 0.1 + 4.9 * i as f64 / 49.0;
            let (r, s) = residual(&a, &y, rhs, t);
            worst = worst.max(r.abs());
            scale = scale.max(s);
        }
        prop_assert!(worst < 1e-6 * scale, "residual {} scale {}", worst, scale);
    }

    #[test]
    fn evoked_ignores_initial_values(parts in common::ode_parts(4, false, None), other in prop::collection::vec(-3.0..3.0f64, 4)) {
        let p = problem(parts);
        let q = p.with_init(other[..p.order()].to_vec()).unwrap();
        prop_assert_eq!(evoked_solution(&p).unwrap(), evoked_solution(&q).unwrap());
    }

    #[test]
    fn spontaneous_solves_homogeneous_equation_before_origin(parts in common::ode_parts(4, false, None)) {
        let p = problem(parts);
        let ys = spontaneous_solution(&p).unwrap();
        for i in 0..20 {
            let t = -5.0 + 4.9 * i as f64 / 19.0;
            let (r, s) = residual(p.a(), &ys, |_| (0.0, 0.0), t);
            prop_assert!(r.abs() < 1e-8 * s.max(1e-300), "t={} residual {} scale {}", t, r, s);
        }
        for (nu, &v) in p.init().iter().enumerate() {
            prop_assert!((ys.derivative_at_zero(nu as u32) - v).abs() < 1e-9 * (1.0 + v.abs()));
        }
    }

    #[test]
    fn patched_tlt_matches(parts in common::ode_parts(4, false, Some(0))) {
        let p = problem(parts);
        let report = conflict_report(&p).unwrap();
        let tlt = tlt_solution(&p, &report.total_minus).unwrap();
        prop_assert!(tlt.agrees_with(&total_solution(&p).unwrap(), 1e-9).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn stepper_agrees_with_total_solution(parts in common::ode_parts(4, true, None)) {
        let p = problem(parts);
        let bundle = total_solution(&p).unwrap();
        let report = conflict_report(&p).unwrap();
        let times: Vec<f64> = (0..=200).map(|i| i as f64 * 0.05).collect();
        let cfg = NumericConfig { abs_tol: 1e-12, rel_tol: 1e-12, ..NumericConfig::default() };
        let states = ode_timestep(&p, &report.total_plus, &times, &cfg).unwrap();
        let (mut diff, mut scale) = (0.0f64, 0.0f64);
        for (&t, y) in times.iter().zip(&states) {
            let exact = bundle.total(t);
            diff = diff.max((exact - y[0]).abs());
            scale = scale.max(exact.abs());
        }
        prop_assert!(diff <= 1e-6 * scale, "max error {} scale {}", diff, scale);
    }
}

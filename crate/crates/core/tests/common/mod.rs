#![allow(dead_code)]

use opcalc::polyalg::Polynomial;
use opcalc::{CausalFunction, CausalTerm, DFunction, DTerm, ImpulseTerm, RationalLT, Trig};
use proptest::prelude::*;

/// Coefficient bounded away from zero.
pub fn coeff(max: f64) -> impl Strategy<Value = f64> {
    (0.2..max, any::<bool>()).prop_map(|(c, neg)| if neg { -c } else { c })
}

pub fn trig() -> impl Strategy<Value = Trig> {
    prop_oneof![Just(Trig::None), Just(Trig::Cos), Just(Trig::Sin)]
}

/// Rates and frequencies on a 0.25 grid: near-confluent poles make modal expansions
/// ill-conditioned, exact coincidences do not.
pub fn dterm() -> impl Strategy<Value = DTerm> {
    (coeff(3.0), 0u32..=2, -8i32..=4, trig(), 2i32..=12).prop_map(|(c, k, a, tr, w)| {
        let w = if tr == Trig::None { 0.0 } else { 0.25 * w as f64 };
        DTerm::new(c, k, 0.25 * a as f64, tr, w)
    })
}

pub fn dfunction() -> impl Strategy<Value = DFunction> {
    prop::collection::vec(dterm(), 1..=3).prop_map(DFunction::new)
}

/// Modal terms, possibly delayed, plus impulses of order ≤ 2.
pub fn causal_modal() -> impl Strategy<Value = CausalFunction> {
    let term = (dterm(), prop_oneof![Just(0.0), 0.1..2.0f64])
        .prop_map(|(d, tau)| CausalTerm::new(d.coeff, d.power as f64, d.rate, d.trig, d.freq).with_delay(tau));
    let impulse = (coeff(2.0), 0u32..=2, prop_oneof![Just(0.0), 0.1..2.0f64])
        .prop_map(|(c, n, tau)| ImpulseTerm::new(c, n).with_delay(tau));
    (prop::collection::vec(term, 1..=3), prop::collection::vec(impulse, 0..=2))
        .prop_map(|(t, i)| CausalFunction::new(t, i, Vec::new()).expect("valid terms"))
}

/// Strictly proper rational of denominator degree ≤ `max_degree`.
pub fn proper_rational(max_degree: usize) -> impl Strategy<Value = RationalLT> {
    prop::collection::vec(grid_factor(2), 1..=max_degree)
        .prop_map(move |fs| {
            let mut den = Polynomial::one();
            for f in fs {
                if den.degree().unwrap_or(0) + f.degree().unwrap_or(0) <= max_degree {
                    den = &den * &f;
                }
            }
            den
        })
        .prop_flat_map(|den| {
            let d = den.degree().unwrap_or(1).max(1);
            prop::collection::vec(-2.0..2.0f64, d).prop_map(move |mut num| {
                num[0] += if num[0] >= 0.0 { 0.1 } else { -0.1 };
                RationalLT::new(Polynomial::new(num), den.clone()).expect("nonzero denominator")
            })
        })
}

/// Roots on a 0.25 grid, so coincidences are exact and distinct roots well separated.
fn grid_factor(max_re: i32) -> impl Strategy<Value = Polynomial> {
    prop_oneof![
        (-8..=max_re).prop_map(|k| Polynomial::new(vec![-0.25 * k as f64, 1.0])),
        (-6..=max_re, 2..=8).prop_map(|(k, j)| {
            let (re, im) = (0.25 * k as f64, 0.25 * j as f64);
            Polynomial::new(vec![re * re + im * im, -2.0 * re, 1.0])
        }),
    ]
}

/// Characteristic polynomial `a₀…a_N`, `1 ≤ N ≤ max_n`, all coefficients within ±5.
pub fn char_poly(max_n: usize, stable: bool) -> impl Strategy<Value = Vec<f64>> {
    let max_re = if stable { -1 } else { 2 };
    (prop::collection::vec(grid_factor(max_re), 1..=max_n), prop_oneof![Just(1.0), Just(0.5), Just(2.0)])
        .prop_map(move |(fs, lead)| {
            let mut p = Polynomial::one();
            for f in fs {
                if p.degree().unwrap_or(0) + f.degree().unwrap_or(0) <= max_n {
                    p = &p * &f;
                }
            }
            p.scale(lead).coeffs().to_vec()
        })
        .prop_filter("coefficients within ±5", |a| a.iter().all(|c| c.abs() <= 5.0))
}

/// Modal excitation with rates and frequencies on a 0.25 grid.
pub fn grid_dfunction() -> impl Strategy<Value = DFunction> {
    let term = (coeff(2.0), 0u32..=1, -8i32..=1, trig(), 2i32..=12).prop_map(|(c, k, a, tr, w)| {
        let w = if tr == Trig::None { 0.0 } else { 0.25 * w as f64 };
        DTerm::new(c, k, 0.25 * a as f64, tr, w)
    });
    prop::collection::vec(term, 1..=2).prop_map(DFunction::new)
}

/// `(a, b, excitation, init)` with `M ≤ N`.
pub fn ode_parts(
    max_n: usize,
    stable: bool,
    max_m: Option<usize>,
) -> impl Strategy<Value = (Vec<f64>, Vec<f64>, DFunction, Vec<f64>)> {
    char_poly(max_n, stable).prop_flat_map(move |a| {
        let n = a.len() - 1;
        let m = max_m.map_or(n, |mm| mm.min(n));
        (
            Just(a),
            prop::collection::vec(-5.0..5.0f64, 1..=m + 1).prop_map(|mut b| {
                let last = b.len() - 1;
                if b[last].abs() < 0.2 {
                    b[last] = 1.0;
                }
                b
            }),
            grid_dfunction(),
            prop::collection::vec(-2.0..2.0f64, n),
        )
    })
}

//! Discrete Fourier and Laplace transforms built on Fourier series over an
//! analysis interval `(−T/2, T/2)` with frequencies `ω_n = 2πn/T`.
//!
//! The integration interval of a transform may be shorter than the analysis
//! interval (a causal integrand only needs `[0, T/2]`), but the inverse always
//! reconstructs on the whole analysis interval. The discrete Laplace transform
//! integrates from 0 only, so its inverse reproduces `u(t)·f(t)`, not `f(t)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::oracles::integrate_panels;
use crate::{Error, Result};

const QUAD_TOL: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSpec {
    /// Analysis interval length `T`.
    pub period: f64,
    /// Highest harmonic `N_max`.
    pub n_max: usize,
    /// Damping abscissa of the discrete Laplace variant.
    pub sigma: f64,
}

impl SeriesSpec {
    pub fn new(period: f64, n_max: usize, sigma: f64) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::invalid("period must be positive"));
        }
        if n_max == 0 {
            return Err(Error::invalid("at least one harmonic is required"));
        }
        if !sigma.is_finite() {
            return Err(Error::invalid("sigma must be finite"));
        }
        Ok(SeriesSpec { period, n_max, sigma })
    }

    pub fn omega(&self, n: i64) -> f64 {
        2.0 * PI * n as f64 / self.period
    }

    pub fn s(&self, n: i64) -> Complex64 {
        Complex64::new(self.sigma, self.omega(n))
    }
}

/// Values at `n = −N_max…N_max`; only `n ≥ 0` is stored, negative indices are
/// exact conjugates.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteTransform {
    pub spec: SeriesSpec,
    values: Vec<Complex64>,
}

impl DiscreteTransform {
    pub fn get(&self, n: i64) -> Complex64 {
        let v = self.values[n.unsigned_abs() as usize];
        if n < 0 {
            v.conj()
        } else {
            v
        }
    }

    /// Values for `n = 0…N_max`.
    pub fn nonnegative(&self) -> &[Complex64] {
        &self.values
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        -(self.spec.n_max as i64)..=self.spec.n_max as i64
    }
}

/// `∫_a^b f(t)e^{−zt}dt` with panels about one oscillation wide; `0` is always a break.
fn transform_integral<F: Fn(f64) -> f64>(f: &F, z: Complex64, a: f64, b: f64) -> Result<Complex64> {
    let cycles = (z.im.abs() * (b - a) / (2.0 * PI)).ceil().max(1.0) as usize;
    let mut breaks: Vec<f64> = (0..=cycles).map(|j| a + (b - a) * j as f64 / cycles as f64).collect();
    if a < 0.0 && b > 0.0 {
        breaks.push(0.0);
        breaks.sort_by(f64::total_cmp);
    }
    integrate_panels(&|t: f64| (-z * t).exp() * f(t), &breaks, QUAD_TOL, QUAD_TOL)
}

/// `F(ω_n, T) = ∫_{a}^{b} f(t)e^{−iω_n t}dt` for an integration interval
/// `[a, b] ⊆ [−T/2, T/2]`.
pub fn discrete_ft_on<F: Fn(f64) -> f64>(f: F, spec: &SeriesSpec, a: f64, b: f64) -> Result<DiscreteTransform> {
    let half = 0.5 * spec.period;
    if a < -half * (1.0 + 1e-15) || b > half * (1.0 + 1e-15) || a >= b {
        return Err(Error::invalid("integration interval must lie inside the analysis interval"));
    }
    let values = (0..=spec.n_max as i64)
        .map(|n| transform_integral(&f, Complex64::new(0.0, spec.omega(n)), a, b))
        .collect::<Result<_>>()?;
    Ok(DiscreteTransform { spec: *spec, values })
}

/// `F(ω_n, T)` over the whole analysis interval.
pub fn discrete_ft<F: Fn(f64) -> f64>(f: F, spec: &SeriesSpec) -> Result<DiscreteTransform> {
    discrete_ft_on(f, spec, -0.5 * spec.period, 0.5 * spec.period)
}

/// `(1/T)Σ F(ω_n,T)e^{iω_n t}`, truncated at `±N_max`.
pub fn inverse_series(f: &DiscreteTransform, t: f64) -> f64 {
    let spec = &f.spec;
    let mut acc = f.get(0).re;
    for n in 1..=spec.n_max as i64 {
        acc += 2.0 * (f.get(n) * Complex64::new(0.0, spec.omega(n) * t).exp()).re;
    }
    acc / spec.period
}

/// `L_T{f} = ∫₀^{T/2} f(t)e^{−s_n t}dt`, `s_n = σ + iω_n`.
pub fn discrete_lt<F: Fn(f64) -> f64>(f: F, spec: &SeriesSpec) -> Result<DiscreteTransform> {
    let values = (0..=spec.n_max as i64)
        .map(|n| transform_integral(&f, spec.s(n), 0.0, 0.5 * spec.period))
        .collect::<Result<_>>()?;
    Ok(DiscreteTransform { spec: *spec, values })
}

/// `(1/T)Σ L_T{f}·e^{s_n t}`.
pub fn inverse_dlt(l: &DiscreteTransform, t: f64) -> f64 {
    let spec = &l.spec;
    let mut acc = l.get(0).re;
    for n in 1..=spec.n_max as i64 {
        acc += 2.0 * (l.get(n) * Complex64::new(0.0, spec.omega(n) * t).exp()).re;
    }
    (spec.sigma * t).exp() * acc / spec.period
}

/// Real Fourier coefficients `f ≈ a₀ + Σ aₙcos ωₙt + bₙsin ωₙt`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierCoeffs {
    pub a0: f64,
    /// `a[n−1] = aₙ`
    pub a: Vec<f64>,
    /// `b[n−1] = bₙ`
    pub b: Vec<f64>,
    pub spec: SeriesSpec,
}

impl FourierCoeffs {
    pub fn partial_sum(&self, t: f64) -> f64 {
        self.a.iter().zip(&self.b).enumerate().fold(self.a0, |acc, (k, (an, bn))| {
            let w = self.spec.omega(k as i64 + 1);
            acc + an * (w * t).cos() + bn * (w * t).sin()
        })
    }
}

/// Coefficients from `F(ω_n,T) = (T/2)(aₙ − ibₙ)` and `a₀ = F(0,T)/T`.
pub fn series_coeffs<F: Fn(f64) -> f64>(f: F, spec: &SeriesSpec) -> Result<FourierCoeffs> {
    let ft = discrete_ft(f, spec)?;
    let t = spec.period;
    let rest = &ft.nonnegative()[1..];
    Ok(FourierCoeffs {
        a0: ft.get(0).re / t,
        a: rest.iter().map(|z| 2.0 * z.re / t).collect(),
        b: rest.iter().map(|z| -2.0 * z.im / t).collect(),
        spec: *spec,
    })
}

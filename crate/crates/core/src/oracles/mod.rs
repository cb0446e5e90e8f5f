//! Brute-force numerical checkers.
//!
//! Nothing here knows about the symbolic machinery beyond evaluating functions
//! pointwise: quadrature for forward transforms, an embedded Runge–Kutta stepper
//! for ODEs, trapezoidal convolution and central differences.

mod laplace;
mod ode;
mod quad;

pub use laplace::{impulse_surrogate_lt, numeric_forward_lt, numeric_forward_lt_with_breaks, numeric_lt_causal};
pub use ode::{dopri5, ode_timestep};
pub use quad::{integrate, integrate_panels};

use crate::{Error, Result};

/// Knobs shared by every oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericConfig {
    /// Real part of the probe abscissa; must exceed the growth rate of the function.
    pub sigma0: f64,
    /// Minimum truncation horizon of the transform integral and default sampling span.
    pub t_max: f64,
    /// Grid step for sampled operations.
    pub h: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { sigma0: 1.0, t_max: 10.0, h: 1e-3, abs_tol: 1e-10, rel_tol: 1e-10 }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<()> {
        let all = [self.sigma0, self.t_max, self.h, self.abs_tol, self.rel_tol];
        if all.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::invalid("numeric configuration values must be positive and finite"));
        }
        if self.rel_tol < 1e-12 {
            return Err(Error::invalid("rel_tol below 1e-12 is not attainable in double precision"));
        }
        Ok(())
    }

    /// Same settings with `σ₀` one unit to the right of `growth`.
    pub fn for_growth(mut self, growth: f64) -> Self {
        self.sigma0 = self.sigma0.max(growth + 1.0);
        self
    }
}

/// `∫₀ᵗ f(t−τ)g(τ)dτ` at `t = i·h`, `i = 0…n`, by the trapezoidal rule on grid samples.
pub fn numeric_convolution<F, G>(f: &F, g: &G, h: f64, n: usize) -> Vec<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let fv: Vec<f64> = (0..=n).map(|k| f(k as f64 * h)).collect();
    let gv: Vec<f64> = (0..=n).map(|k| g(k as f64 * h)).collect();
    (0..=n)
        .map(|i| {
            if i == 0 {
                return 0.0;
            }
            let inner: f64 = (1..i).map(|j| fv[i - j] * gv[j]).sum();
            h * (inner + 0.5 * (fv[i] * gv[0] + fv[0] * gv[i]))
        })
        .collect()
}

/// Central finite difference of order 0 to 3 with step `h`.
pub fn fd_derivative<F: Fn(f64) -> f64>(f: F, t: f64, order: u32, h: f64) -> Result<f64> {
    Ok(match order {
        0 => f(t),
        1 => (f(t + h) - f(t - h)) / (2.0 * h),
        2 => (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h),
        3 => (f(t + 2.0 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2.0 * h)) / (2.0 * h * h * h),
        _ => return Err(Error::invalid(format!("finite differences implemented up to order 3, got {order}"))),
    })
}

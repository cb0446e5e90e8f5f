use num_complex::Complex64;

use super::quad::integrate_panels;
use super::NumericConfig;
use crate::causalfn::CausalFunction;
use crate::special::gamma;
use crate::{Error, Result};

/// `∫₀^∞ f(t)e^{−st}dt` truncated at `T` with `e^{−(Re s − growth)T} < 0.1·abs_tol`.
///
/// `[0, 1]` is integrated in the variable `x = √t`, which removes `t^{−1/2}`
/// endpoint singularities. `breaks` adds panel boundaries (jump locations).
pub fn numeric_forward_lt_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    growth: f64,
    s: Complex64,
    breaks: &[f64],
    cfg: &NumericConfig,
) -> Result<Complex64> {
    let margin = s.re - growth;
    if margin <= 0.0 {
        return Err(Error::Numeric(format!(
            "Re s = {} does not exceed the growth rate {growth}; the integral diverges",
            s.re
        )));
    }
    let horizon = (1.5 * (10.0 / cfg.abs_tol).ln() / margin + 5.0).max(cfg.t_max);

    let near = |x: f64| {
        let t = x * x;
        (-s * t).exp() * (2.0 * x * f(t))
    };
    let mut near_breaks = vec![0.0];
    near_breaks.extend(breaks.iter().filter(|&&b| b > 0.0 && b < 1.0).map(|b| b.sqrt()));
    near_breaks.push(1.0);
    near_breaks.sort_by(f64::total_cmp);
    let head = integrate_panels(&near, &near_breaks, 0.5 * cfg.abs_tol, cfg.rel_tol)?;

    let far = |t: f64| (-s * t).exp() * f(t);
    let panels = ((horizon - 1.0) * (1.0 + s.im.abs()) / 2.0).ceil().max(1.0) as usize;
    let mut far_breaks: Vec<f64> = (0..=panels).map(|j| 1.0 + (horizon - 1.0) * j as f64 / panels as f64).collect();
    far_breaks.extend(breaks.iter().filter(|&&b| b > 1.0 && b < horizon));
    far_breaks.sort_by(f64::total_cmp);
    let tail = integrate_panels(&far, &far_breaks, 0.5 * cfg.abs_tol, cfg.rel_tol)?;
    Ok(head + tail)
}

pub fn numeric_forward_lt<F: Fn(f64) -> f64>(
    f: F,
    growth: f64,
    s: Complex64,
    cfg: &NumericConfig,
) -> Result<Complex64> {
    numeric_forward_lt_with_breaks(f, growth, s, &[], cfg)
}

/// Numeric transform of a causal function: quadrature of the smooth part plus
/// vanishing-width surrogates for the impulses.
pub fn numeric_lt_causal(f: &CausalFunction, s: Complex64, cfg: &NumericConfig) -> Result<Complex64> {
    let mut breaks: Vec<f64> =
        f.terms().iter().map(|t| t.delay).chain(f.specials().iter().map(|x| x.delay)).filter(|&d| d > 0.0).collect();
    breaks.dedup();
    let smooth = if f.terms().is_empty() && f.specials().is_empty() {
        Complex64::new(0.0, 0.0)
    } else {
        numeric_forward_lt_with_breaks(|t| f.value(t), f.growth_rate(), s, &breaks, cfg)?
    };
    let mut total = smooth;
    for imp in f.impulses() {
        total += impulse_surrogate_lt(imp.order, imp.delay, s, cfg)? * imp.coeff;
    }
    Ok(total)
}

fn richardson(values: &[Complex64], ratio: f64) -> Complex64 {
    let mut table = values.to_vec();
    for m in 1..values.len() {
        let w = ratio.powi(m as i32);
        for j in (m..values.len()).rev() {
            table[j] = (table[j] * w - table[j - 1]) / (w - 1.0);
        }
    }
    table[values.len() - 1]
}

fn falling(m: f64, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (m - i as f64))
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `L{δ⁽ⁿ⁾(t−τ)}` by quadrature of narrow smooth pulses, extrapolated to zero width.
///
/// At the origin the pulse is a gamma density of shape `n + 4` (one-sided, so the
/// integral sees the whole pulse); away from it a Gaussian. Widths are halved
/// repeatedly and combined by Richardson extrapolation (error in powers of the width
/// for the gamma pulse, of its square for the Gaussian).
///
/// Narrow differentiated pulses cancel heavily, so accuracy degrades with the order:
/// about 1e−8 relative up to `n = 2`, about 1e−5 at `n = 3`.
pub fn impulse_surrogate_lt(order: u32, delay: f64, s: Complex64, cfg: &NumericConfig) -> Result<Complex64> {
    let scale = s.norm().max(1.0);
    let tol = 1e-3 * cfg.abs_tol * scale.powi(order as i32);
    let mut values = Vec::new();
    if delay == 0.0 {
        let k = (order + 4) as f64;
        let (levels, eps0) = if order < 3 { (6, 0.3 / scale) } else { (5, 0.05 / scale) };
        for level in 0..levels {
            let theta = eps0 / 2f64.powi(level as i32) / k;
            let norm = 1.0 / (gamma(k) * theta.powf(k));
            let pulse = |t: f64| {
                let mut v = 0.0;
                for j in 0..=order {
                    v += binomial(order, j)
                        * falling(k - 1.0, j)
                        * t.powf(k - 1.0 - j as f64)
                        * (-1.0 / theta).powi((order - j) as i32);
                }
                norm * v * (-t / theta).exp()
            };
            let f = |t: f64| (-s * t).exp() * pulse(t);
            let end = theta * (k + 60.0);
            let breaks: Vec<f64> = (0..=16).map(|j| end * j as f64 / 16.0).collect();
            let floor = 1e-16 * (k / theta).powi(order as i32);
            values.push(integrate_panels(&f, &breaks, tol.max(floor), 1e-13)?);
        }
        Ok(richardson(&values, 2.0))
    } else {
        let eps0 = (0.05 / scale).min(delay / 12.0);
        for level in 0..5 {
            let eps = eps0 / 2f64.powi(level as i32);
            let pulse = |t: f64| {
                let x = (t - delay) / eps;
                // probabilists' Hermite polynomial He_n(x)
                let (mut h0, mut h1) = (1.0, x);
                let he = match order {
                    0 => 1.0,
                    _ => {
                        for k in 1..order {
                            let h2 = x * h1 - k as f64 * h0;
                            h0 = h1;
                            h1 = h2;
                        }
                        h1
                    }
                };
                let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
                sign * he / eps.powi(order as i32) * (-0.5 * x * x).exp() / (eps * (2.0 * std::f64::consts::PI).sqrt())
            };
            let f = |t: f64| (-s * t).exp() * pulse(t);
            let breaks: Vec<f64> = (0..=24).map(|j| delay - 12.0 * eps + eps * j as f64).collect();
            let floor = 1e-13 * eps.powi(-(order as i32));
            values.push(integrate_panels(&f, &breaks, tol.max(floor), 1e-13)?);
        }
        Ok(richardson(&values, 4.0))
    }
}

//! Derivation and integration of real order.
//!
//! Symbolically, `D^α{u f}` is the inverse transform of `s^α·L{f}`, resolved
//! against the correspondence table by [`gdi_apply`]. Numerically there are two
//! independent paths: the Riemann–Liouville integral by product integration
//! ([`rl_integral_numeric`]) and Grünwald–Letnikov differences ([`gl_derivative`]).

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::causalfn::{CausalFunction, CausalTerm, SpecialKind, SpecialTerm};
use crate::ltransform::{forward_lt, inverse_lt, TransformExpr};
use crate::special::gamma;
use crate::{Error, Result};

/// Order `α`: positive derives, negative integrates.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub const MAX_ABS: f64 = 10.0;

    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha.abs() > Self::MAX_ABS {
            return Err(Error::invalid(format!("order {alpha} outside [-10, 10]")));
        }
        Ok(FracOrder(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FracOrder {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        FracOrder::new(alpha)
    }
}

/// Outcome of [`gdi_apply`].
#[derive(Clone, Debug, PartialEq)]
pub enum GdiResult {
    Closed(CausalFunction),
    /// `s^α·F(s)` has no table row; evaluate it numerically.
    Symbolic(TransformExpr),
}

impl GdiResult {
    pub fn closed(&self) -> Option<&CausalFunction> {
        match self {
            GdiResult::Closed(f) => Some(f),
            GdiResult::Symbolic(_) => None,
        }
    }
}

/// `D^α{u f} = L⁻¹{s^α·L{f}}`.
pub fn gdi_apply(f: &CausalFunction, alpha: FracOrder) -> Result<GdiResult> {
    let image = forward_lt(f)?.mul_s_power(alpha.value());
    match inverse_lt(&image) {
        Ok(g) => Ok(GdiResult::Closed(g)),
        Err(Error::UnsupportedTerm(_)) => Ok(GdiResult::Symbolic(image)),
        Err(e) => Err(e),
    }
}

/// `∫_{τa}^{τb}(t−τ)^{r−1}dτ` and `∫_{τa}^{τb}(t−τ)^{r−1}(τ−τa)dτ` from the
/// distances `A = t−τa > B = t−τb ≥ 0`. Short panels far from `t` use series in
/// `x = (A−B)/A` to avoid cancellation.
fn panel_moments(a: f64, b: f64, r: f64) -> (f64, f64) {
    let d = a - b;
    let x = d / a;
    if x <= 0.5 {
        let i0 = a.powf(r) * -(r * (-x).ln_1p()).exp_m1() / r;
        // ∫₀ˣ u(1−u)^{r−1}du = Σ_k C(r−1,k)(−1)^k x^{k+2}/(k+2)
        let mut coef = 1.0;
        let mut xp = x * x;
        let mut sum = 0.0;
        for k in 0..200 {
            let term = coef * xp / (k + 2) as f64;
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                break;
            }
            coef *= -(r - 1.0 - k as f64) / (k + 1) as f64;
            xp *= x;
        }
        (i0, a.powf(r + 1.0) * sum)
    } else {
        let i0 = (a.powf(r) - b.powf(r)) / r;
        (i0, a * i0 - (a.powf(r + 1.0) - b.powf(r + 1.0)) / (r + 1.0))
    }
}

/// Geometric sub-grid of the first panel `[0, h]`, ratio 0.8 down to `1e-15·h`.
fn graded_nodes(h: f64) -> Vec<f64> {
    let mut nodes = vec![h];
    let mut x = h;
    while x > 1e-15 * h {
        x *= 0.8;
        nodes.push(x);
    }
    nodes.push(0.0);
    nodes.reverse();
    nodes
}

struct RlGrid {
    nodes: Vec<f64>,
    values: Vec<f64>,
    /// index in `nodes` of grid point `k·h`, for `k ≥ 1`
    first: usize,
}

impl RlGrid {
    fn new<F: Fn(f64) -> f64>(f: &F, h: f64, n: usize) -> Self {
        let mut nodes = graded_nodes(h);
        let first = nodes.len() - 1;
        nodes.extend((2..=n.max(1)).map(|k| k as f64 * h));
        let values = nodes
            .iter()
            .map(|&t| {
                let v = f(t);
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            })
            .collect();
        RlGrid { nodes, values, first }
    }

    fn integral(&self, k: usize, r: f64) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let end = self.first + k - 1;
        let t = self.nodes[end];
        let mut acc = 0.0;
        for j in 0..end {
            let (ta, tb) = (self.nodes[j], self.nodes[j + 1]);
            let (i0, i1) = panel_moments(t - ta, t - tb, r);
            let w_b = i1 / (tb - ta);
            acc += self.values[j] * (i0 - w_b) + self.values[j + 1] * w_b;
        }
        acc / gamma(r)
    }
}

/// `I^r f(t) = (1/Γ(r))∫₀ᵗ(t−τ)^{r−1}f(τ)dτ` at `t = k·h`, `k = 0…n`.
///
/// Product trapezoidal rule: the kernel is integrated exactly against the
/// piecewise-linear interpolant of `f`. The first panel is graded geometrically
/// toward 0, which accommodates integrable singularities there; non-finite
/// samples (the value at 0 itself, typically) are taken as 0.
pub fn rl_integral_numeric<F: Fn(f64) -> f64>(f: F, r: f64, h: f64, n: usize) -> Result<Vec<f64>> {
    rl_integral_at(f, r, h, &(0..=n).collect::<Vec<_>>())
}

/// [`rl_integral_numeric`] at selected grid indices only.
pub fn rl_integral_at<F: Fn(f64) -> f64>(f: F, r: f64, h: f64, indices: &[usize]) -> Result<Vec<f64>> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::invalid(format!("integration order must be ≥ 0, got {r}; use gl_derivative")));
    }
    if !(h > 0.0) {
        return Err(Error::invalid("step must be positive"));
    }
    if r == 0.0 {
        return Ok(indices.iter().map(|&k| f(k as f64 * h)).collect());
    }
    let n = indices.iter().copied().max().unwrap_or(0);
    let grid = RlGrid::new(&f, h, n);
    Ok(indices.iter().map(|&k| grid.integral(k, r)).collect())
}

/// `D^α f = d/dt I^{1−α} f` for `0 < α < 1`, by central differences of the
/// product-integration values at the neighbouring grid points (indices ≥ 1).
pub fn rl_derivative_at<F: Fn(f64) -> f64>(f: F, alpha: f64, h: f64, indices: &[usize]) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid("RL derivative implemented for 0 < α < 1"));
    }
    if indices.contains(&0) {
        return Err(Error::invalid("central difference needs indices ≥ 1"));
    }
    let around: Vec<usize> = indices.iter().flat_map(|&k| [k - 1, k + 1]).collect();
    let vals = rl_integral_at(f, 1.0 - alpha, h, &around)?;
    Ok(vals.chunks(2).map(|p| (p[1] - p[0]) / (2.0 * h)).collect())
}

/// Grünwald–Letnikov weights `w₀ = 1`, `w_k = w_{k−1}(1 − (α+1)/k)`.
pub fn gl_weights(alpha: f64, n: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(n + 1);
    let mut last = 1.0;
    w.push(last);
    for k in 1..=n {
        last *= 1.0 - (alpha + 1.0) / k as f64;
        w.push(last);
    }
    w
}

/// `h^{−α}Σ_{k=0}^{i} w_k f_{i−k}` for every `i`, samples `f_i = f(i·h)` from 0.
/// The convolution runs through an FFT.
pub fn gl_derivative(samples: &[f64], alpha: f64, h: f64) -> Vec<f64> {
    let n = samples.len();
    if n == 0 {
        return Vec::new();
    }
    let w = gl_weights(alpha, n - 1);
    let size = (2 * n).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(size);
    let ifft = planner.plan_fft_inverse(size);
    let pad = |v: &[f64]| {
        let mut buf: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        buf.resize(size, Complex64::new(0.0, 0.0));
        buf
    };
    let mut a = pad(samples);
    let mut b = pad(&w);
    fft.process(&mut a);
    fft.process(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    ifft.process(&mut a);
    let scale = h.powf(-alpha) / size as f64;
    a.iter().take(n).map(|z| z.re * scale).collect()
}

/// How the left side of a half-derivative row is computed numerically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableMethod {
    GrunwaldLetnikov,
    /// Derivative of the product-integrated `I^{1/2}`.
    RiemannLiouville,
    /// Both sides integrated once: `I^{1/2}f` against the integral of the right side.
    Cumulative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HalfDerivativeRow {
    pub name: &'static str,
    /// Function being derived, e.g. `u(t)*exp(t)`.
    pub function: &'static str,
    pub closed_form: CausalFunction,
    pub method: TableMethod,
    pub t: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `max|lhs − rhs| / max|rhs|` over the sample points.
    pub max_rel_err: f64,
}

impl HalfDerivativeRow {
    /// `t,lhs,rhs,abs_err` lines with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,lhs,rhs,abs_err\n");
        for ((t, l), r) in self.t.iter().zip(&self.lhs).zip(&self.rhs) {
            out.push_str(&format!("{t:.16e},{l:.16e},{r:.16e},{:.16e}\n", (l - r).abs()));
        }
        out
    }
}

/// Parameter `a` used by the rows that have one.
pub const TABLE_PARAM: f64 = 1.0;

fn table_functions() -> Result<Vec<(&'static str, &'static str, CausalFunction, TableMethod)>> {
    let a = TABLE_PARAM;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    Ok(vec![
        ("ustep", "u(t)", CausalFunction::unit_step(), TableMethod::GrunwaldLetnikov),
        ("ovsqrt", "u(t)/sqrt(t)", CausalFunction::from_term(CausalTerm::power(1.0, -0.5))?, TableMethod::Cumulative),
        (
            "sqrt",
            "u(t)*sqrt(t)",
            CausalFunction::from_term(CausalTerm::power(1.0, 0.5))?,
            TableMethod::GrunwaldLetnikov,
        ),
        ("exp", "u(t)*exp(t)", CausalFunction::from_term(CausalTerm::exp(1.0, 1.0))?, TableMethod::GrunwaldLetnikov),
        (
            "ln",
            "u(t)*ln(t)",
            CausalFunction::from_special(SpecialTerm::new(SpecialKind::Log, 0.0, 1.0))?,
            TableMethod::RiemannLiouville,
        ),
        (
            "gauss",
            "u(t)*exp(-a^2/(4t))/sqrt(t)",
            CausalFunction::from_special(SpecialTerm::new(SpecialKind::GaussKernelA, a, sqrt_pi))?,
            TableMethod::GrunwaldLetnikov,
        ),
        (
            "bessel",
            "u(t)*J0(2 sqrt(a t))",
            CausalFunction::from_special(SpecialTerm::new(SpecialKind::BesselJ0Sqrt, a, 1.0))?,
            TableMethod::GrunwaldLetnikov,
        ),
    ])
}

/// The seven half-derivative identities at step `h = 1e-4`, sampled every 0.01 on `[0.1, 4]`.
pub fn halfderivative_table() -> Result<Vec<HalfDerivativeRow>> {
    halfderivative_table_with(1e-4)
}

/// Left sides numerically at step `h`, right sides from [`gdi_apply`] in closed
/// form. `h` must divide 0.01.
pub fn halfderivative_table_with(h: f64) -> Result<Vec<HalfDerivativeRow>> {
    let stride = (0.01 / h).round() as usize;
    if stride == 0 || ((stride as f64) * h - 0.01).abs() > 1e-12 {
        return Err(Error::invalid("table step must divide 0.01"));
    }
    let indices: Vec<usize> = (10..=400).map(|j| j * stride).collect();
    let t: Vec<f64> = indices.iter().map(|&k| k as f64 * h).collect();
    let n = *indices.last().expect("nonempty");
    let half = FracOrder::new(0.5)?;

    let mut rows = Vec::new();
    for (name, function, f, method) in table_functions()? {
        let closed = match gdi_apply(&f, half)? {
            GdiResult::Closed(g) => g,
            GdiResult::Symbolic(_) => return Err(Error::unsupported(format!("row {name} did not resolve"))),
        };
        let sample = |x: f64| {
            let v = f.value(x);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        let (lhs, rhs): (Vec<f64>, Vec<f64>) = match method {
            TableMethod::GrunwaldLetnikov => {
                let samples: Vec<f64> = (0..=n).map(|k| sample(k as f64 * h)).collect();
                let d = gl_derivative(&samples, 0.5, h);
                (indices.iter().map(|&k| d[k]).collect(), t.iter().map(|&x| closed.value(x)).collect())
            }
            TableMethod::RiemannLiouville => {
                (rl_derivative_at(sample, 0.5, h, &indices)?, t.iter().map(|&x| closed.value(x)).collect())
            }
            TableMethod::Cumulative => {
                // ∫₀ᵗ of the closed form: impulses at 0 contribute their weight, smooth
                // parts are absent for this row.
                let weight: f64 = closed.impulses().iter().filter(|i| i.order == 0).map(|i| i.coeff).sum();
                if !closed.terms().is_empty() || !closed.specials().is_empty() {
                    return Err(Error::unsupported("cumulative check expects a pure impulse"));
                }
                (rl_integral_at(sample, 0.5, h, &indices)?, vec![weight; t.len()])
            }
        };
        let scale = rhs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let err = lhs.iter().zip(&rhs).fold(0.0f64, |m, (l, r)| m.max((l - r).abs()));
        rows.push(HalfDerivativeRow {
            name,
            function,
            closed_form: closed,
            method,
            t: t.clone(),
            lhs,
            rhs,
            max_rel_err: err / scale,
        });
    }
    Ok(rows)
}

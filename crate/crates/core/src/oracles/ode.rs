use super::NumericConfig;
use crate::causalfn::{DFunction, DTerm};
use crate::odesolver::{Excitation, OdeProblem};
use crate::{Error, Result};

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

/// Dormand–Prince 5(4) with step-size control; returns the state at each of the
/// sorted output `times` (all ≥ `t0`). Integration restarts at every `stops` point.
pub fn dopri5<F>(
    rhs: F,
    t0: f64,
    y0: &[f64],
    times: &[f64],
    stops: &[f64],
    rtol: f64,
    atol: f64,
) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let n = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut out = Vec::with_capacity(times.len());
    let mut h: f64 = 1e-4;
    let mut k = vec![vec![0.0; n]; 7];
    let mut tmp = vec![0.0; n];
    let mut stops: Vec<f64> = stops.iter().copied().filter(|&s| s > t0).collect();
    stops.sort_by(f64::total_cmp);
    let mut stop_idx = 0;

    for &target in times {
        if target < t {
            return Err(Error::invalid("output times must be sorted and not precede the start"));
        }
        while t < target {
            let mut goal = target;
            while stop_idx < stops.len() && stops[stop_idx] <= t {
                stop_idx += 1;
            }
            if stop_idx < stops.len() && stops[stop_idx] < goal {
                goal = stops[stop_idx];
            }
            let step = h.min(goal - t);
            if step <= 1e-14 * (1.0 + t.abs()) && goal - t > step {
                return Err(Error::Numeric(format!("step size underflow at t = {t}")));
            }
            for stage in 0..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(stage) {
                        acc += step * A[stage][j] * kj[i];
                    }
                    tmp[i] = acc;
                }
                let (head, tail) = k.split_at_mut(stage);
                let _ = head;
                rhs(t + C[stage] * step, &tmp, &mut tail[0]);
            }
            // tmp now holds the 5th-order solution (stage 7 argument)
            let mut err = 0.0;
            for i in 0..n {
                let e: f64 = (0..7).map(|j| E[j] * k[j][i]).sum::<f64>() * step;
                let sc = atol + rtol * y[i].abs().max(tmp[i].abs());
                err += (e / sc).powi(2);
            }
            let err = (err / n.max(1) as f64).sqrt();
            if !err.is_finite() {
                return Err(Error::Numeric(format!("non-finite state at t = {t}")));
            }
            if err <= 1.0 {
                t = if step == goal - t { goal } else { t + step };
                y.copy_from_slice(&tmp);
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if step == h || err > 1.0 {
                h = step * factor;
            } else {
                h = h.max(step * factor);
            }
            if h < 1e-14 * (1.0 + t.abs()) {
                return Err(Error::Numeric(format!("step size underflow at t = {t}")));
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

enum Source {
    /// `m`-th derivative of a modal term, starting at `delay`
    Modal { delay: f64, derivatives: Vec<DFunction> },
    /// value only
    Sampled(Box<dyn Fn(f64) -> f64>),
}

/// Time-steps `Σ aₙy⁽ⁿ⁾ = Σ bₘx⁽ᵐ⁾` for `t > 0` from the state `y0 = (y, y′, …, y⁽ᴺ⁻¹⁾)(0⁺)`.
/// The right side uses ordinary derivatives of the excitation for `t > 0`, so any
/// impulsive effect at the origin must already be contained in `y0`.
pub fn ode_timestep(p: &OdeProblem, y0: &[f64], times: &[f64], cfg: &NumericConfig) -> Result<Vec<Vec<f64>>> {
    let nn = p.order();
    if y0.len() != nn {
        return Err(Error::invalid(format!("state has {} entries, the problem order is {nn}", y0.len())));
    }
    let mm = p.b().len();
    let mut sources = Vec::new();
    let mut stops = Vec::new();
    match p.excitation() {
        Excitation::Bilateral(fd) => {
            sources.push(Source::Modal {
                delay: f64::NEG_INFINITY,
                derivatives: (0..mm as u32).map(|m| fd.derivative_n(m)).collect(),
            });
        }
        Excitation::Causal(x) => {
            if x.impulses().iter().any(|i| i.delay > 0.0) {
                return Err(Error::unsupported("delayed impulses in the excitation are not supported by the stepper"));
            }
            for t in x.terms() {
                if t.has_integer_power() {
                    let fd = DFunction::new(vec![DTerm::new(t.coeff, t.power as u32, t.rate, t.trig, t.freq)]);
                    sources.push(Source::Modal {
                        delay: t.delay,
                        derivatives: (0..mm as u32).map(|m| fd.derivative_n(m)).collect(),
                    });
                } else {
                    let term = *t;
                    sources.push(Source::Sampled(Box::new(move |s| term.value(s))));
                }
                if t.delay > 0.0 {
                    stops.push(t.delay);
                }
            }
            for s in x.specials() {
                let term = *s;
                sources.push(Source::Sampled(Box::new(move |t| term.value(t))));
                if s.delay > 0.0 {
                    stops.push(s.delay);
                }
            }
            let needs_derivatives = p.b().iter().skip(1).any(|&b| b != 0.0);
            if needs_derivatives && sources.iter().any(|s| matches!(s, Source::Sampled(_))) {
                return Err(Error::unsupported("excitation derivatives need modal terms"));
            }
            if needs_derivatives && !stops.is_empty() {
                return Err(Error::unsupported(
                    "delayed excitation with derivative terms produces impulses mid-trajectory",
                ));
            }
        }
    }
    let a = p.a().to_vec();
    let b = p.b().to_vec();
    let lead = a[nn];
    let forcing = move |t: f64| -> f64 {
        let mut total = 0.0;
        for src in &sources {
            match src {
                Source::Modal { delay, derivatives } => {
                    if t > *delay {
                        let x = if delay.is_finite() { t - delay } else { t };
                        for (m, d) in derivatives.iter().enumerate() {
                            if b[m] != 0.0 {
                                total += b[m] * d.eval(x);
                            }
                        }
                    }
                }
                Source::Sampled(f) => total += b[0] * f(t),
            }
        }
        total
    };
    let rhs = |t: f64, y: &[f64], dy: &mut [f64]| {
        for i in 0..nn - 1 {
            dy[i] = y[i + 1];
        }
        let mut acc = forcing(t);
        for i in 0..nn {
            acc -= a[i] * y[i];
        }
        dy[nn - 1] = acc / lead;
    };
    dopri5(rhs, 0.0, y0, times, &stops, cfg.rel_tol, cfg.abs_tol)
}

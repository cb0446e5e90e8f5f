use std::fmt::Write as _;

use anyhow::{Context, Result};
use opcalc::discrete::{discrete_ft, discrete_ft_on, SeriesSpec};
use opcalc::fractional::{gdi_apply, halfderivative_table, FracOrder, GdiResult, TableMethod};
use opcalc::ltransform::{concatenation_check, forward_lt, inverse_lt};
use opcalc::text::{fmt_short, parse_s_expr, parse_time_expr, pretty_causal, render_transform};
use opcalc::CausalFunction;

/// Output text and whether every requested check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn with_check(mut text: String, f: &CausalFunction, check: bool) -> Result<Outcome> {
    if !check {
        return Ok(Outcome { text, passed: true });
    }
    let report = concatenation_check(f)?;
    writeln!(text, "concatenation check: {}", if report.passed { "pass" } else { "FAIL" })?;
    if !report.passed {
        writeln!(text, "  L{{f}}           = {}", render_transform(&report.forward))?;
        writeln!(text, "  L{{L^-1{{L{{f}}}}}} = {}", render_transform(&report.roundtrip))?;
    }
    Ok(Outcome { text, passed: report.passed })
}

pub fn forward(expr: &str, check: bool) -> Result<Outcome> {
    let f = parse_time_expr(expr).with_context(|| format!("in `{expr}`"))?;
    let image = forward_lt(&f)?;
    with_check(format!("{}\n", render_transform(&image)), &f, check)
}

pub fn invert(expr: &str, check: bool) -> Result<Outcome> {
    let image = parse_s_expr(expr).with_context(|| format!("in `{expr}`"))?;
    let f = inverse_lt(&image)?;
    with_check(format!("{}\n", pretty_causal(&f)), &f, check)
}

pub fn fractional(alpha: f64, expr: &str) -> Result<Outcome> {
    let f = parse_time_expr(expr).with_context(|| format!("in `{expr}`"))?;
    let text = match gdi_apply(&f, FracOrder::new(alpha)?)? {
        GdiResult::Closed(g) => format!("{}\n", pretty_causal(&g)),
        GdiResult::Symbolic(image) => format!("no closed form; image {}\n", render_transform(&image)),
    };
    Ok(Outcome { text, passed: true })
}

pub fn table(tol: f64) -> Result<Outcome> {
    let rows = halfderivative_table()?;
    let mut text = format!("{:<10} {:<28} {:<20} {:>12}\n", "row", "f(t)", "method", "max_rel_err");
    let mut passed = true;
    for row in &rows {
        let method = match row.method {
            TableMethod::GrunwaldLetnikov => "grunwald-letnikov",
            TableMethod::RiemannLiouville => "riemann-liouville",
            TableMethod::Cumulative => "cumulative",
        };
        let ok = row.max_rel_err < tol;
        passed &= ok;
        writeln!(
            text,
            "{:<10} {:<28} {:<20} {:>12.3e} {}",
            row.name,
            row.function,
            method,
            row.max_rel_err,
            if ok { "pass" } else { "FAIL" }
        )?;
    }
    writeln!(text, "threshold {}: {}", fmt_short(tol), if passed { "all rows pass" } else { "FAIL" })?;
    Ok(Outcome { text, passed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DemoFunction {
    /// u(t)·e^{−t}
    Exp,
    /// u(t)·e^{−t/2}·cos 3t
    Damped,
    /// u(t)
    Step,
}

impl DemoFunction {
    fn eval(self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        match self {
            DemoFunction::Exp => (-t).exp(),
            DemoFunction::Damped => (-0.5 * t).exp() * (3.0 * t).cos(),
            DemoFunction::Step => 1.0,
        }
    }
}

/// Coefficients over the full period against those over `[0, T/2]`: equal for causal input.
pub fn discrete_demo(f: DemoFunction, period: f64, harmonics: usize, tol: f64) -> Result<(Outcome, String)> {
    let spec = SeriesSpec::new(period, harmonics, 0.0)?;
    let full = discrete_ft(|t| f.eval(t), &spec)?;
    let half = discrete_ft_on(|t| f.eval(t), &spec, 0.0, 0.5 * period)?;
    let mut csv = String::from("n,omega,re_full,im_full,re_half,im_half,abs_diff\n");
    let mut worst = 0.0f64;
    for n in 0..=harmonics as i64 {
        let (a, b) = (full.get(n), half.get(n));
        let d = (a - b).norm();
        worst = worst.max(d);
        writeln!(
            csv,
            "{n},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            spec.omega(n),
            a.re + 0.0,
            a.im + 0.0,
            b.re + 0.0,
            b.im + 0.0,
            d
        )?;
    }
    let passed = worst <= tol;
    let summary = format!(
        "max |F_full - F_half| = {worst:.3e} over n = 0..{harmonics} (tol {}): {}\n",
        fmt_short(tol),
        if passed { "PASS" } else { "FAIL" }
    );
    Ok((Outcome { text: summary, passed }, csv))
}

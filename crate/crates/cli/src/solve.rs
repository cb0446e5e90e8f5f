use std::fmt::Write as _;

use anyhow::{Context, Result};
use opcalc::causalfn::Trig;
use opcalc::odesolver::{
    conflict_report, tlt_solution, total_solution_with, Evoked, Excitation, OdeProblem, SolutionBundle,
};
use opcalc::oracles::ode_timestep;
use opcalc::text::{causal_to_lines, dfunction_to_lines, fmt_short, pretty_causal, pretty_dfunction, render_rational};

use crate::problem::ProblemFile;

pub struct SolveOptions {
    pub compare_tlt: bool,
    pub check: bool,
    pub tol: f64,
}

pub struct SolveOutcome {
    pub report: String,
    pub csv: String,
    pub passed: bool,
}

fn equation(p: &OdeProblem) -> String {
    fn side(coeffs: &[f64], var: &str) -> String {
        let mut parts = Vec::new();
        for (n, &c) in coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let d = match n {
                0 => format!("{var}(t)"),
                1 => format!("{var}'(t)"),
                2 => format!("{var}''(t)"),
                n => format!("{var}^({n})(t)"),
            };
            let body = if c.abs() == 1.0 { d } else { format!("{}*{d}", fmt_short(c.abs())) };
            parts.push(if parts.is_empty() {
                if c < 0.0 {
                    format!("-{body}")
                } else {
                    body
                }
            } else {
                format!("{} {body}", if c < 0.0 { '-' } else { '+' })
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
    format!("{} = {}", side(p.a(), "y"), side(p.b(), "x"))
}

fn excitation_text(x: &Excitation) -> String {
    match x {
        Excitation::Causal(f) => pretty_causal(f),
        Excitation::Bilateral(fd) => format!("{}   (for all t)", pretty_dfunction(fd)),
    }
}

/// `[x̂·u(t)+y_s(0)]·e^{−a·t}` when the total solution has that shape.
fn compact_form(p: &OdeProblem, bundle: &SolutionBundle) -> Option<(f64, f64, f64)> {
    if p.order() != 1 {
        return None;
    }
    let a = p.a()[0] / p.a()[1];
    let f = match &bundle.evoked {
        Evoked::Closed(f) => f,
        _ => return None,
    };
    if !f.impulses().is_empty() || !f.specials().is_empty() {
        return None;
    }
    let x_hat = match f.terms() {
        [] => 0.0,
        [t] if t.delay == 0.0 && t.power == 0.0 && t.trig == Trig::None && t.rate == -a => t.coeff,
        _ => return None,
    };
    Some((x_hat, p.init()[0], a))
}

fn list(values: &[f64]) -> String {
    values.iter().map(|v| fmt_short(*v)).collect::<Vec<_>>().join(", ")
}

fn indent(block: &str) -> String {
    block.lines().map(|l| format!("    {l}\n")).collect()
}

fn tlt_section(out: &mut String, p: &OdeProblem, bundle: &SolutionBundle) -> Result<()> {
    writeln!(out, "\ncomparison with the traditional formula")?;
    if p.excitation_order() > 0 {
        writeln!(out, "  not applicable: the equation contains a derivative of the excitation (M > 0)")?;
        return Ok(());
    }
    let report = conflict_report(p)?;
    let n = p.order();
    for nu in 0..n {
        let d = if nu == 0 { String::new() } else { format!("^({nu})") };
        writeln!(out, "  y_e{d}(0+) = {}", fmt_short(report.evoked_plus[nu]))?;
        writeln!(out, "  y_s{d}(0)  = {}", fmt_short(report.spontaneous[nu]))?;
        writeln!(out, "  y{d}(0+)   = {}", fmt_short(report.total_plus[nu]))?;
        writeln!(out, "  y{d}(-0)   = {}", fmt_short(report.total_minus[nu]))?;
    }
    if !report.evoked_impulses.is_empty() {
        let orders: Vec<String> = report.evoked_impulses.iter().map(u32::to_string).collect();
        writeln!(out, "  impulses of y_e at the origin, orders: {}", orders.join(", "))?;
    }
    if report.approximate {
        writeln!(out, "  derivatives at 0+ from finite differences of the sampled evoked part")?;
    }
    writeln!(
        out,
        "  conflict: {}",
        if report.conflict {
            "yes, y_e(0+) does not vanish; inserting y_s(0) as y(0) changes the solution"
        } else {
            "no"
        }
    )?;
    let mut runs = vec![("y(0) := y_s(0)", report.spontaneous.clone())];
    if report.total_minus != report.spontaneous {
        runs.push(("y(0) := y(-0)", report.total_minus.clone()));
    }
    for (label, init) in runs {
        let tlt = tlt_solution(p, &init)?;
        let verdict = match tlt.agrees_with(bundle, 1e-9) {
            Ok(true) => "agrees with y_e + y_s for t > 0",
            Ok(false) => "DIFFERS from y_e + y_s",
            Err(_) => "no closed form to compare",
        };
        writeln!(out, "  traditional, {label} = [{}]:", list(&init))?;
        writeln!(out, "    y(t) = {}", pretty_causal(&tlt.total_tlt))?;
        writeln!(out, "    {verdict}")?;
    }
    Ok(())
}

fn num(v: f64) -> String {
    // 17 significant digits; the addition folds -0 into 0
    format!("{:.16e}", v + 0.0)
}

pub fn solve(file: &ProblemFile, opts: &SolveOptions) -> Result<SolveOutcome> {
    let p = &file.problem;
    let bundle = total_solution_with(p, &file.numeric).context("solving the equation")?;
    let mut out = String::new();

    writeln!(out, "equation:    {}", equation(p))?;
    writeln!(out, "excitation:  x(t) = {}", excitation_text(p.excitation()))?;
    writeln!(out, "transfer:    B(s)/A(s) = {}", render_rational(&p.transfer()))?;
    writeln!(out, "initial:     y_s^(nu)(0), nu = 0..{}: [{}]", p.order() - 1, list(p.init()))?;
    writeln!(out)?;
    match &bundle.evoked {
        Evoked::Closed(f) => writeln!(out, "evoked:      y_e(t) = {}", pretty_causal(f))?,
        Evoked::Bilateral(fd) => writeln!(out, "evoked:      y_e(t) = {}   (for all t)", pretty_dfunction(fd))?,
        Evoked::Sampled { step, values } => {
            writeln!(out, "evoked:      y_e(t) sampled, step {}, {} points", fmt_short(*step), values.len())?
        }
    }
    writeln!(out, "spontaneous: y_s(t) = {}   (for all t)", pretty_dfunction(&bundle.spontaneous))?;
    writeln!(out, "total:       y(t) = y_e(t) + y_s(t)")?;
    writeln!(out, "impulse response: h(t) = {}", pretty_causal(&bundle.impulse_response))?;
    if let Some(form) = &bundle.first_order {
        writeln!(out, "integral form: {form}")?;
    }
    if let Some((x_hat, ys0, a)) = compact_form(p, &bundle) {
        writeln!(out, "compact:     y(t) = [x̂·u(t)+y_s(0)]·e^{{−a·t}} for all t")?;
        writeln!(out, "             x̂ = {}, y_s(0) = {}, a = {}", fmt_short(x_hat), fmt_short(ys0), fmt_short(a))?;
        writeln!(out, "             y(t) = [{}*u(t) + {}]*exp(-{} t)", fmt_short(x_hat), fmt_short(ys0), fmt_short(a))?;
    }
    if let Some(asym) = &bundle.asymptote {
        writeln!(out, "dominant:    {}", pretty_causal(asym))?;
    }
    for note in &bundle.notes {
        writeln!(out, "note: {note}")?;
    }

    writeln!(out, "\nclosed forms, line format")?;
    match &bundle.evoked {
        Evoked::Closed(f) => write!(out, "  [y_e]\n{}", indent(&causal_to_lines(f)))?,
        Evoked::Bilateral(fd) => write!(out, "  [y_e]\n{}", indent(&dfunction_to_lines(fd)))?,
        Evoked::Sampled { .. } => writeln!(out, "  [y_e] none")?,
    }
    write!(out, "  [y_s]\n{}", indent(&dfunction_to_lines(&bundle.spontaneous)))?;

    let mut passed = true;
    if opts.compare_tlt {
        tlt_section(&mut out, p, &bundle)?;
    }

    let report = conflict_report(p)?;
    let times = file.sampling.times();
    let states = ode_timestep(p, &report.total_plus, &times, &file.numeric).context("running the time stepper")?;
    let mut csv = String::from("t,y_evoked,y_spont,y_total,oracle,abs_err\n");
    let mut max_abs_err = 0.0f64;
    for (&t, state) in times.iter().zip(&states) {
        let (ye, ys) = (bundle.evoked.eval(t), bundle.spontaneous.eval(t));
        let y = ye + ys;
        let oracle = state[0];
        let e = (y - oracle).abs();
        max_abs_err = if e.is_nan() { f64::INFINITY } else { max_abs_err.max(e) };
        writeln!(csv, "{},{},{},{},{},{}", num(t), num(ye), num(ys), num(y), num(oracle), num(e))?;
    }
    let within = max_abs_err <= opts.tol;
    passed &= within;
    writeln!(
        out,
        "\noracle: time stepper from y(0+) on [{}, {}], {} points",
        fmt_short(file.sampling.t_start),
        fmt_short(file.sampling.t_end),
        times.len()
    )?;
    writeln!(
        out,
        "max abs_err = {:.3e} (tol {}): {}",
        max_abs_err,
        fmt_short(opts.tol),
        if within { "PASS" } else { "FAIL" }
    )?;

    if opts.check {
        let ok = check(p, &bundle);
        writeln!(out, "check: {}", if ok { "pass" } else { "FAIL" })?;
        passed &= ok;
    }
    Ok(SolveOutcome { report: out, csv, passed })
}

/// Printed closed forms re-parse, and `y_s` reproduces its initial values.
fn check(p: &OdeProblem, bundle: &SolutionBundle) -> bool {
    let reparsed = match &bundle.evoked {
        Evoked::Closed(f) => causal_to_lines(f).parse().ok().as_ref() == Some(f),
        Evoked::Bilateral(fd) => dfunction_to_lines(fd).parse().ok().as_ref() == Some(fd),
        Evoked::Sampled { .. } => true,
    } && dfunction_to_lines(&bundle.spontaneous).parse().ok().as_ref() == Some(&bundle.spontaneous);
    let init_ok = p
        .init()
        .iter()
        .enumerate()
        .all(|(nu, &v)| (bundle.spontaneous.derivative_at_zero(nu as u32) - v).abs() <= 1e-9 * (1.0 + v.abs()));
    reparsed && init_ok
}

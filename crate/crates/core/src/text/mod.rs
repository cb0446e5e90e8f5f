//! Text forms.
//!
//! The line format is the machine-readable representation used by `Display` and
//! `FromStr` of [`CausalFunction`] and [`DFunction`]; it round-trips exactly.
//! One item per line, `#` starts a comment:
//!
//! ```text
//! term: c * t^r * exp(a t) * cos(w t) @ tau
//! impulse: c * delta^(n) @ tau
//! special: c * kind(a) @ tau
//! connect: true
//! dterm: c * t^k * exp(a t) * sin(w t)
//! ```
//!
//! Factors other than the coefficient are optional, as is the `@ tau` delay.
//! `connect:` is derived from the terms; a stated value that disagrees is rejected.
//!
//! The human forms ([`pretty_causal`], [`parse_time_expr`], [`parse_s_expr`]) are
//! for reports and command-line input and are not guaranteed to round-trip.

mod expr;

pub use expr::{parse_s_expr, parse_time_expr};

use crate::causalfn::{CausalFunction, CausalTerm, DFunction, DTerm, ImpulseTerm, SpecialKind, SpecialTerm, Trig};
use crate::ltransform::{RationalPart, SpecialTransform, TableRow, TransformExpr};
use crate::polyalg::{Polynomial, RationalLT};
use crate::{Error, Result};

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Twelve significant digits, for reports.
pub fn fmt_short(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    fmt_num(r)
}

fn trig_name(t: Trig) -> Option<&'static str> {
    match t {
        Trig::None => None,
        Trig::Cos => Some("cos"),
        Trig::Sin => Some("sin"),
    }
}

fn shape_factors(power: f64, rate: f64, trig: Trig, freq: f64) -> Vec<String> {
    let mut out = Vec::new();
    if power != 0.0 {
        out.push(format!("t^{}", fmt_num(power)));
    }
    if rate != 0.0 {
        out.push(format!("exp({} t)", fmt_num(rate)));
    }
    if let Some(name) = trig_name(trig) {
        out.push(format!("{name}({} t)", fmt_num(freq)));
    }
    out
}

fn line(kind: &str, coeff: f64, factors: Vec<String>, delay: f64) -> String {
    let mut s = format!("{kind}: {}", fmt_num(coeff));
    for f in factors {
        s.push_str(" * ");
        s.push_str(&f);
    }
    if delay != 0.0 {
        s.push_str(&format!(" @ {}", fmt_num(delay)));
    }
    s.push('\n');
    s
}

pub fn causal_to_lines(f: &CausalFunction) -> String {
    let mut out = String::new();
    for t in f.terms() {
        out += &line("term", t.coeff, shape_factors(t.power, t.rate, t.trig, t.freq), t.delay);
    }
    for i in f.impulses() {
        let imp = if i.order == 0 { "delta".to_string() } else { format!("delta^({})", i.order) };
        out += &line("impulse", i.coeff, vec![imp], i.delay);
    }
    for s in f.specials() {
        let kind = if s.kind.uses_param() {
            format!("{}({})", s.kind.name(), fmt_num(s.param))
        } else {
            s.kind.name().to_string()
        };
        out += &line("special", s.coeff, vec![kind], s.delay);
    }
    out += &format!("connect: {}\n", f.has_connect());
    out
}

pub fn dfunction_to_lines(f: &DFunction) -> String {
    let mut out = String::new();
    for t in f.terms() {
        out += &line("dterm", t.coeff, shape_factors(t.power as f64, t.rate, t.trig, t.freq), 0.0);
    }
    if out.is_empty() {
        out.push_str("dterm: 0\n");
    }
    out
}

/// A line body split at `@` and at top-level `*`, with byte offsets.
struct Body<'a> {
    factors: Vec<(usize, &'a str)>,
    delay: Option<(usize, &'a str)>,
}

fn split_body(body: &str, offset: usize) -> Body<'_> {
    let (main, delay) = match body.find('@') {
        Some(k) => (&body[..k], Some((offset + k + 1, &body[k + 1..]))),
        None => (body, None),
    };
    let mut factors = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in main.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                factors.push((offset + start, &main[start..k]));
                start = k + 1;
            }
            _ => {}
        }
    }
    factors.push((offset + start, &main[start..]));
    Body { factors, delay }
}

fn trimmed(pos: usize, s: &str) -> (usize, &str) {
    let lead = s.len() - s.trim_start().len();
    (pos + lead, s.trim())
}

fn number(pos: usize, s: &str) -> Result<f64> {
    let (pos, s) = trimmed(pos, s);
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::parse(pos, format!("expected a finite number, found `{s}`"))),
    }
}

/// `a t`, `a*t`, `-t`, `t`
fn linear_coeff(pos: usize, s: &str) -> Result<f64> {
    let (pos, s) = trimmed(pos, s);
    let Some(rest) = s.strip_suffix('t') else {
        return Err(Error::parse(pos, format!("expected `<number> t`, found `{s}`")));
    };
    let rest = rest.trim_end();
    let rest = rest.strip_suffix('*').unwrap_or(rest).trim();
    match rest {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        r => number(pos, r),
    }
}

fn call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

#[derive(Default)]
struct Shape {
    power: Option<f64>,
    rate: Option<f64>,
    trig: Option<(Trig, f64)>,
}

fn shape_factor(pos: usize, s: &str, shape: &mut Shape) -> Result<()> {
    let (pos, s) = trimmed(pos, s);
    let dup = || Error::parse(pos, format!("repeated factor `{s}`"));
    if s == "t" {
        if shape.power.replace(1.0).is_some() {
            return Err(dup());
        }
    } else if let Some(r) = s.strip_prefix("t^") {
        let r = r.trim();
        let r = r.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(r);
        if shape.power.replace(number(pos + 2, r)?).is_some() {
            return Err(dup());
        }
    } else if let Some(arg) = call(s, "exp") {
        if shape.rate.replace(linear_coeff(pos + 4, arg)?).is_some() {
            return Err(dup());
        }
    } else if let Some((trig, arg)) = call(s, "cos").map(|a| (Trig::Cos, a)).or(call(s, "sin").map(|a| (Trig::Sin, a)))
    {
        if shape.trig.replace((trig, linear_coeff(pos + 4, arg)?)).is_some() {
            return Err(dup());
        }
    } else {
        return Err(Error::parse(pos, format!("unknown factor `{s}`")));
    }
    Ok(())
}

enum Item {
    Term(CausalTerm),
    Impulse(ImpulseTerm),
    Special(SpecialTerm),
    DTerm(DTerm),
    Connect(bool, usize),
}

fn parse_item(kind: &str, body: &str, pos: usize) -> Result<Item> {
    if kind == "connect" {
        let (p, v) = trimmed(pos, body);
        return match v {
            "true" => Ok(Item::Connect(true, p)),
            "false" => Ok(Item::Connect(false, p)),
            _ => Err(Error::parse(p, "connect must be `true` or `false`")),
        };
    }
    let b = split_body(body, pos);
    let delay = match b.delay {
        Some((p, d)) => number(p, d)?,
        None => 0.0,
    };
    let (cpos, ctext) = b.factors[0];
    let coeff = number(cpos, ctext)?;
    let rest = &b.factors[1..];
    match kind {
        "term" | "dterm" => {
            let mut shape = Shape::default();
            for &(p, f) in rest {
                shape_factor(p, f, &mut shape)?;
            }
            let power = shape.power.unwrap_or(0.0);
            let rate = shape.rate.unwrap_or(0.0);
            let (trig, freq) = shape.trig.unwrap_or((Trig::None, 0.0));
            if kind == "term" {
                return Ok(Item::Term(CausalTerm::new(coeff, power, rate, trig, freq).with_delay(delay)));
            }
            if b.delay.is_some() {
                return Err(Error::parse(pos, "d-function terms take no delay"));
            }
            if power < 0.0 || power.fract() != 0.0 {
                return Err(Error::parse(pos, "d-function powers must be non-negative integers"));
            }
            Ok(Item::DTerm(DTerm::new(coeff, power as u32, rate, trig, freq)))
        }
        "impulse" => {
            let [(p, f)] = rest else {
                return Err(Error::parse(pos, "impulse lines need exactly one `delta` factor"));
            };
            let (p, f) = trimmed(*p, f);
            let order = if f == "delta" {
                0
            } else if let Some(n) = f.strip_prefix("delta^(").and_then(|x| x.strip_suffix(')')) {
                n.trim().parse::<u32>().map_err(|_| Error::parse(p + 7, format!("bad impulse order `{n}`")))?
            } else {
                return Err(Error::parse(p, format!("expected `delta` or `delta^(n)`, found `{f}`")));
            };
            Ok(Item::Impulse(ImpulseTerm::new(coeff, order).with_delay(delay)))
        }
        "special" => {
            let [(p, f)] = rest else {
                return Err(Error::parse(pos, "special lines need exactly one kind factor"));
            };
            let (p, f) = trimmed(*p, f);
            let (name, param) = match f.find('(') {
                Some(k) => {
                    let arg =
                        f[k + 1..].strip_suffix(')').ok_or_else(|| Error::parse(p + k, "unclosed parenthesis"))?;
                    (f[..k].trim(), number(p + k + 1, arg)?)
                }
                None => (f, 0.0),
            };
            let kind = SpecialKind::from_name(name)
                .ok_or_else(|| Error::parse(p, format!("unknown special kind `{name}`")))?;
            if kind.uses_param() && !f.contains('(') {
                return Err(Error::parse(p, format!("`{name}` needs a parameter")));
            }
            Ok(Item::Special(SpecialTerm::new(kind, param, coeff).with_delay(delay)))
        }
        other => Err(Error::parse(pos, format!("unknown line kind `{other}`"))),
    }
}

fn items(s: &str) -> Result<Vec<(usize, Item)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in s.split_inclusive('\n') {
        let content = raw.split('#').next().unwrap_or("").trim_end_matches(['\n', '\r']);
        if !content.trim().is_empty() {
            let (pos, text) = trimmed(offset, content);
            let colon = text.find(':').ok_or_else(|| Error::parse(pos, "expected `kind: ...`"))?;
            let item = parse_item(text[..colon].trim(), &text[colon + 1..], pos + colon + 1)?;
            out.push((pos, item));
        }
        offset += raw.len();
    }
    Ok(out)
}

pub fn causal_from_lines(s: &str) -> Result<CausalFunction> {
    let (mut terms, mut impulses, mut specials) = (Vec::new(), Vec::new(), Vec::new());
    let mut connect = None;
    for (pos, item) in items(s)? {
        match item {
            Item::Term(t) => terms.push(t),
            Item::Impulse(i) => impulses.push(i),
            Item::Special(sp) => specials.push(sp),
            Item::Connect(c, p) => connect = Some((c, p)),
            Item::DTerm(_) => return Err(Error::parse(pos, "d-function term in a causal function")),
        }
    }
    let f = CausalFunction::new(terms, impulses, specials)?;
    if let Some((c, p)) = connect {
        if c != f.has_connect() {
            return Err(Error::parse(
                p,
                format!("connect: {c} contradicts the terms (derived value {})", f.has_connect()),
            ));
        }
    }
    Ok(f)
}

pub fn dfunction_from_lines(s: &str) -> Result<DFunction> {
    let mut terms = Vec::new();
    for (pos, item) in items(s)? {
        match item {
            Item::DTerm(t) => terms.push(t),
            _ => return Err(Error::parse(pos, "only `dterm:` lines are allowed in a d-function")),
        }
    }
    DFunction::try_new(terms)
}

/// Recognizes `p/q`, `p/q·√π`, `p/q·π` and `p/(q·√π)` with `q ≤ 12`.
pub fn nice_number(x: f64) -> Option<String> {
    nice_rational_multiple(x).or_else(|| {
        let p = x * std::f64::consts::PI.sqrt();
        let num = nice_rational_multiple(p).filter(|n| !n.contains(['p', '*']))?;
        Some(match num.split_once('/') {
            Some((a, q)) => format!("{a}/({q}*sqrt(pi))"),
            None => format!("{num}/sqrt(pi)"),
        })
    })
}

fn nice_rational_multiple(x: f64) -> Option<String> {
    let consts = [("", 1.0), ("sqrt(pi)", std::f64::consts::PI.sqrt()), ("pi", std::f64::consts::PI)];
    for (name, k) in consts {
        for q in 1..=12u32 {
            let p = x / k * q as f64;
            let r = p.round();
            if r != 0.0 && r.abs() <= 1e4 && (p - r).abs() <= 1e-11 * p.abs().max(1.0) {
                let sign = if r < 0.0 { "-" } else { "" };
                let r = r.abs() as u64;
                let num = match (name, r) {
                    ("", r) => r.to_string(),
                    (n, 1) => n.to_string(),
                    (n, r) => format!("{r}*{n}"),
                };
                return Some(if q == 1 { format!("{sign}{num}") } else { format!("{sign}{num}/{q}") });
            }
        }
    }
    None
}

fn coeff_text(x: f64) -> String {
    nice_number(x).unwrap_or_else(|| fmt_short(x))
}

fn var(delay: f64) -> String {
    if delay == 0.0 {
        "t".into()
    } else {
        format!("(t - {})", fmt_short(delay))
    }
}

fn step(delay: f64) -> String {
    if delay == 0.0 {
        "u(t)".into()
    } else {
        format!("u(t - {})", fmt_short(delay))
    }
}

fn linear(c: f64, v: &str) -> String {
    match c {
        1.0 => v.to_string(),
        -1.0 => format!("-{v}"),
        c => format!("{} {v}", coeff_text(c)),
    }
}

/// Shape factors of a term in human form, excluding negative powers.
fn pretty_shape(power: f64, rate: f64, trig: Trig, freq: f64, v: &str) -> Vec<String> {
    let mut out = Vec::new();
    if power > 0.0 {
        out.push(match power {
            1.0 => v.to_string(),
            0.5 => format!("sqrt({v})"),
            p => format!("{v}^{}", fmt_short(p)),
        });
    }
    if rate != 0.0 {
        out.push(format!("exp({})", linear(rate, v)));
    }
    if let Some(name) = trig_name(trig) {
        out.push(format!("{name}({})", linear(freq, v)));
    }
    out
}

/// `coeff·factors` with the sign split off.
fn signed_product(coeff: f64, factors: &[String]) -> (bool, String) {
    let neg = coeff < 0.0;
    let c = coeff.abs();
    let body = if factors.is_empty() {
        coeff_text(c)
    } else if c == 1.0 {
        factors.join("*")
    } else {
        format!("{}*{}", coeff_text(c), factors.join("*"))
    };
    (neg, body)
}

fn join_signed(parts: &[(bool, String)]) -> String {
    let mut s = String::new();
    for (k, (neg, body)) in parts.iter().enumerate() {
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(body);
    }
    s
}

fn pretty_term_group(terms: &[CausalTerm], delay: f64) -> (bool, String) {
    let v = var(delay);
    let u = step(delay);
    if let [t] = terms {
        if t.power < 0.0 {
            let c = t.coeff.abs();
            let mut rest = pretty_shape(0.0, t.rate, t.trig, t.freq, &v);
            let den = if t.power == -0.5 {
                match nice_number(c * std::f64::consts::PI.sqrt()).filter(|s| !s.contains("pi")) {
                    Some(q) => {
                        if q != "1" {
                            rest.insert(0, q);
                        }
                        format!("sqrt(pi*{v})")
                    }
                    None => {
                        rest.insert(0, coeff_text(c));
                        format!("sqrt({v})")
                    }
                }
            } else {
                rest.insert(0, coeff_text(c));
                format!("{v}^{}", fmt_short(-t.power))
            };
            if rest.first().is_some_and(|s| s == "1") {
                rest.remove(0);
            }
            let mut body = u;
            for f in rest {
                body = format!("{body}*{f}");
            }
            return (t.coeff < 0.0, format!("{body}/{den}"));
        }
        let factors = pretty_shape(t.power, t.rate, t.trig, t.freq, &v);
        let c = t.coeff.abs();
        let mut body = u;
        if c != 1.0 {
            body = format!("{body}*{}", coeff_text(c));
        }
        for f in factors {
            body = format!("{body}*{f}");
        }
        return (t.coeff < 0.0, body);
    }
    let mut sorted = terms.to_vec();
    sorted.sort_by(|a, b| {
        b.rate
            .total_cmp(&a.rate)
            .then(a.power.total_cmp(&b.power))
            .then(a.trig.cmp(&b.trig))
            .then(a.freq.total_cmp(&b.freq))
    });
    let c0 = sorted[0].coeff.abs();
    let simple = sorted.iter().all(|t| {
        t.power >= 0.0 && {
            let r = t.coeff / c0;
            nice_number(r).is_some_and(|s| !s.contains("pi"))
        }
    });
    let scale = if simple { c0 } else { 1.0 };
    let inner: Vec<(bool, String)> = sorted
        .iter()
        .map(|t| {
            if t.power < 0.0 {
                let (neg, s) = pretty_term_group(std::slice::from_ref(t), 0.0);
                (neg, s.replacen("u(t)", "1", 1).replacen("1*", "", 1))
            } else {
                signed_product(t.coeff / scale, &pretty_shape(t.power, t.rate, t.trig, t.freq, &v))
            }
        })
        .collect();
    let mut out = format!("{u}*({})", join_signed(&inner));
    if scale != 1.0 {
        let inv = 1.0 / scale;
        if (inv - inv.round()).abs() <= 1e-11 * inv && inv.round() > 1.0 {
            out = format!("{out}/{}", inv.round() as u64);
        } else {
            out = format!("{out}*{}", coeff_text(scale));
        }
    }
    (false, out)
}

fn scaled(c: f64, v: &str) -> String {
    if c == 1.0 {
        v.to_string()
    } else {
        format!("{}*{v}", fmt_short(c))
    }
}

fn pretty_special(s: &SpecialTerm) -> (bool, String) {
    let v = var(s.delay);
    let a = fmt_short(s.param);
    let body = match s.kind {
        SpecialKind::ExpErf if s.param > 0.0 => {
            let av = scaled(s.param, &v);
            let root = if s.param == 1.0 { String::new() } else { format!("/sqrt({a})") };
            format!("exp({av})*erf(sqrt({av})){root}")
        }
        SpecialKind::ExpErf => {
            let b = -s.param;
            let bv = scaled(b, &v);
            let root = if b == 1.0 { String::new() } else { format!("/sqrt({})", fmt_short(b)) };
            format!("exp(-{bv})*erfi(sqrt({bv})){root}")
        }
        SpecialKind::Log => format!("ln({v})"),
        SpecialKind::LogOverSqrt => format!("ln({v})/sqrt({v})"),
        SpecialKind::GaussKernelA => format!("exp(-{a}^2/(4*{v}))/sqrt(pi*{v})"),
        SpecialKind::GaussKernelB => format!("{a}*{v}^(-3/2)*exp(-{a}^2/(4*{v}))"),
        SpecialKind::CosSqrt => format!("cos(2*sqrt({a}*{v}))/sqrt(pi*{v})"),
        SpecialKind::BesselJ0Sqrt => format!("J0(2*sqrt({a}*{v}))"),
    };
    let (neg, c) = signed_product(s.coeff, &[]);
    let c = if c == "1" { String::new() } else { format!("{c}*") };
    (neg, format!("{c}{}*{body}", step(s.delay)))
}

/// Human-readable form such as `u(t)*(1 - exp(-3 t))/3`.
pub fn pretty_causal(f: &CausalFunction) -> String {
    let mut parts = Vec::new();
    let mut delays: Vec<f64> = f.terms().iter().map(|t| t.delay).collect();
    delays.dedup();
    for d in delays {
        let group: Vec<CausalTerm> = f.terms().iter().filter(|t| t.delay == d).copied().collect();
        parts.push(pretty_term_group(&group, d));
    }
    for i in f.impulses() {
        let arg = if i.delay == 0.0 { "t".to_string() } else { format!("t - {}", fmt_short(i.delay)) };
        let d = if i.order == 0 { format!("delta({arg})") } else { format!("delta^({})({arg})", i.order) };
        parts.push(signed_product(i.coeff, &[d]));
    }
    for s in f.specials() {
        parts.push(pretty_special(s));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        join_signed(&parts)
    }
}

/// Human-readable d-function, e.g. `0.2*sin(2 t) - 0.4*cos(2 t)`.
pub fn pretty_dfunction(f: &DFunction) -> String {
    let parts: Vec<(bool, String)> = f
        .terms()
        .iter()
        .map(|t| signed_product(t.coeff, &pretty_shape(t.power as f64, t.rate, t.trig, t.freq, "t")))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        join_signed(&parts)
    }
}

pub fn render_polynomial(p: &Polynomial, var: &str) -> String {
    let mut parts = Vec::new();
    for k in (0..p.coeffs().len()).rev() {
        let c = p.coeff(k);
        if c == 0.0 {
            continue;
        }
        let x = match k {
            0 => String::new(),
            1 => var.to_string(),
            k => format!("{var}^{k}"),
        };
        let body = if k == 0 {
            fmt_short(c.abs())
        } else if c.abs() == 1.0 {
            x
        } else {
            format!("{}*{x}", fmt_short(c.abs()))
        };
        parts.push((c < 0.0, body));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        join_signed(&parts)
    }
}

fn is_single_term(p: &Polynomial) -> bool {
    p.coeffs().iter().filter(|c| **c != 0.0).count() <= 1
}

fn render_quotient(num: &Polynomial, den: &Polynomial) -> String {
    let n = render_polynomial(num, "s");
    let n = if is_single_term(num) { n } else { format!("({n})") };
    if den.degree() == Some(0) && den.coeff(0) == 1.0 {
        return n;
    }
    let d = render_polynomial(den, "s");
    let d = if is_single_term(den) && !d.contains('*') { d } else { format!("({d})") };
    format!("{n}/{d}")
}

fn delay_prefix(delay: f64) -> String {
    if delay == 0.0 {
        String::new()
    } else {
        format!("exp(-{} s)*", fmt_short(delay))
    }
}

fn s_power_suffix(alpha: f64) -> String {
    if alpha == 0.0 {
        String::new()
    } else {
        format!("*s^{}", fmt_short(alpha))
    }
}

pub fn render_rational(r: &RationalLT) -> String {
    format!("{}{}", delay_prefix(r.delay()), render_quotient(r.num(), r.den()))
}

fn render_special_image(s: &SpecialTransform) -> String {
    let a = fmt_short(s.param);
    let image = match s.row {
        TableRow::Power => format!("gamma({})/s^{}", fmt_short(s.param + 1.0), fmt_short(s.param + 1.0)),
        TableRow::Special(k) => match k {
            SpecialKind::ExpErf => format!("1/((s - {a})*sqrt(s))"),
            SpecialKind::Log => "(-ln(s) - euler_gamma)/s".into(),
            SpecialKind::LogOverSqrt => "-sqrt(pi/s)*(ln(4*s) + euler_gamma)".into(),
            SpecialKind::GaussKernelA => format!("exp(-{a}*sqrt(s))/sqrt(s)"),
            SpecialKind::GaussKernelB => format!("2*sqrt(pi)*exp(-{a}*sqrt(s))"),
            SpecialKind::CosSqrt => format!("exp(-{a}/s)/sqrt(s)"),
            SpecialKind::BesselJ0Sqrt => format!("exp(-{a}/s)/s"),
        },
    };
    let c = if s.coeff == 1.0 { String::new() } else { format!("{}*", fmt_short(s.coeff)) };
    format!("{}{c}{image}{}", delay_prefix(s.delay), s_power_suffix(s.s_power))
}

fn render_part(p: &RationalPart) -> String {
    let q = render_quotient(p.rational.num(), p.rational.den());
    let q = if p.s_power != 0.0 && q.contains([' ', '/']) { format!("({q})") } else { q };
    format!("{}{q}{}", delay_prefix(p.delay), s_power_suffix(p.s_power))
}

pub fn render_transform(t: &TransformExpr) -> String {
    let parts: Vec<String> =
        t.rational_parts().iter().map(render_part).chain(t.special_terms().iter().map(render_special_image)).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

//! Infix expression grammar shared by the t-domain and s-domain parsers.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := unary (('*'|'/') unary | unary)*      juxtaposition multiplies
//! unary := '-' unary | power
//! power := atom ['^' unary]
//! atom  := number | name ['(' expr {',' expr} ')'] | '(' expr ')'
//! ```
//!
//! t-domain names: `t`, `u`/`u(t)`, `delta` (`delta^n` is the n-th derivative),
//! `exp`, `cos`, `sin`, `sqrt`, `ln`, `pi`, and the special kinds
//! `exp_erf(a)`, `gauss_a(a)`, `gauss_b(a)`, `cos_sqrt(a)`, `bessel_j0(a)`,
//! `log`, `log_over_sqrt`. Every result is read as causal, multiplied by `u(t)`.
//!
//! s-domain names: `s`, `pi`, `exp(-tau s)` for delays, `sqrt`; non-integer
//! powers apply to monomials only.

use crate::causalfn::{CausalFunction, CausalTerm, ImpulseTerm, SpecialKind, SpecialTerm, Trig};
use crate::ltransform::{RationalPart, TransformExpr};
use crate::polyalg::{Polynomial, RationalLT};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Name(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
                i += 1;
            }
            if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                let mut j = i + 1;
                if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                    j += 1;
                }
                if j < b.len() && b[j].is_ascii_digit() {
                    while j < b.len() && b[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &src[start..i];
            let v = text.parse::<f64>().map_err(|_| Error::parse(start, format!("bad number `{text}`")))?;
            out.push((start, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Name(src[start..i].to_string())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::parse(i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

trait Algebra: Sized + Clone {
    fn constant(c: f64) -> Self;
    fn as_constant(&self) -> Option<f64>;
    fn add(self, other: Self, pos: usize) -> Result<Self>;
    fn mul(self, other: Self, pos: usize) -> Result<Self>;
    fn div(self, other: Self, pos: usize) -> Result<Self>;
    fn pow(self, e: f64, pos: usize) -> Result<Self>;
    fn name(name: &str, args: Option<Vec<Self>>, pos: usize) -> Result<Self>;

    fn neg(self, pos: usize) -> Result<Self> {
        self.mul(Self::constant(-1.0), pos)
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    k: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.k).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.k += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected `{c}`")))
        }
    }

    fn expr<A: Algebra>(&mut self) -> Result<A> {
        let mut acc: A = self.term()?;
        loop {
            let pos = self.pos();
            if self.eat('+') {
                let rhs = self.term()?;
                acc = acc.add(rhs, pos)?;
            } else if self.eat('-') {
                let rhs: A = self.term()?;
                acc = acc.add(rhs.neg(pos)?, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<A: Algebra>(&mut self) -> Result<A> {
        self.eat('+');
        let mut acc: A = self.unary()?;
        loop {
            let pos = self.pos();
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = acc.mul(rhs, pos)?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                acc = acc.div(rhs, pos)?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Name(_) | Tok::Sym('('))) {
                let rhs = self.unary()?;
                acc = acc.mul(rhs, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<A: Algebra>(&mut self) -> Result<A> {
        let pos = self.pos();
        if self.eat('-') {
            let v: A = self.unary()?;
            return v.neg(pos);
        }
        self.power()
    }

    fn power<A: Algebra>(&mut self) -> Result<A> {
        let base: A = self.atom()?;
        let pos = self.pos();
        if self.eat('^') {
            let epos = self.pos();
            let e: A = self.unary()?;
            let e = e.as_constant().ok_or_else(|| Error::parse(epos, "exponent must be a constant"))?;
            return base.pow(e, pos);
        }
        Ok(base)
    }

    fn atom<A: Algebra>(&mut self) -> Result<A> {
        let pos = self.pos();
        match self.toks.get(self.k).map(|t| t.1.clone()) {
            Some(Tok::Num(v)) => {
                self.k += 1;
                Ok(A::constant(v))
            }
            Some(Tok::Name(n)) => {
                self.k += 1;
                let args = if self.eat('(') {
                    let mut v = vec![self.expr()?];
                    while self.eat(',') {
                        v.push(self.expr()?);
                    }
                    self.expect(')')?;
                    Some(v)
                } else {
                    None
                };
                A::name(&n, args, pos)
            }
            Some(Tok::Sym('(')) => {
                self.k += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(t) => Err(Error::parse(pos, format!("unexpected {t:?}"))),
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }
}

fn parse<A: Algebra>(src: &str) -> Result<A> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser { toks: &toks, k: 0, end: src.len() };
    let v = p.expr()?;
    if p.k < toks.len() {
        return Err(Error::parse(p.pos(), "unexpected trailing input"));
    }
    Ok(v)
}

fn single_arg<A>(name: &str, args: Option<Vec<A>>, pos: usize) -> Result<A> {
    match args {
        Some(mut v) if v.len() == 1 => Ok(v.remove(0)),
        _ => Err(Error::parse(pos, format!("`{name}` takes one argument"))),
    }
}

/// One product `c·t^r·e^{at}·trig(ωt)`, or a scaled impulse or special term.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Prod {
    coeff: f64,
    power: f64,
    rate: f64,
    trig: Trig,
    freq: f64,
    impulse: Option<u32>,
    special: Option<(SpecialKind, f64)>,
}

impl Prod {
    fn constant(c: f64) -> Self {
        Prod { coeff: c, power: 0.0, rate: 0.0, trig: Trig::None, freq: 0.0, impulse: None, special: None }
    }

    fn is_constant(&self) -> bool {
        self.power == 0.0
            && self.rate == 0.0
            && self.trig == Trig::None
            && self.impulse.is_none()
            && self.special.is_none()
    }

    fn is_plain(&self) -> bool {
        self.trig == Trig::None && self.impulse.is_none() && self.special.is_none()
    }

    /// `Some(c)` when this is `c·t`.
    fn linear(&self) -> Option<f64> {
        (self.power == 1.0 && self.rate == 0.0 && self.is_plain()).then_some(self.coeff)
    }

    fn times(self, o: Prod, pos: usize) -> Result<Prod> {
        if self.is_constant() {
            return Ok(Prod { coeff: self.coeff * o.coeff, ..o });
        }
        if o.is_constant() {
            return Ok(Prod { coeff: self.coeff * o.coeff, ..self });
        }
        if self.impulse.is_some() || o.impulse.is_some() {
            return Err(Error::parse(pos, "impulses can only be scaled by constants"));
        }
        if let Some((s, other)) = self.special.map(|s| (s, o)).or(o.special.map(|s| (s, self))) {
            if s.0 == SpecialKind::Log && other.is_plain() && other.power == -0.5 && other.rate == 0.0 {
                return Ok(Prod {
                    coeff: self.coeff * o.coeff,
                    special: Some((SpecialKind::LogOverSqrt, 0.0)),
                    ..Prod::constant(0.0)
                });
            }
            return Err(Error::parse(pos, "special functions can only be scaled by constants"));
        }
        if self.trig != Trig::None && o.trig != Trig::None {
            return Err(Error::parse(pos, "products of trigonometric factors are not supported"));
        }
        let (trig, freq) = if self.trig != Trig::None { (self.trig, self.freq) } else { (o.trig, o.freq) };
        Ok(Prod {
            coeff: self.coeff * o.coeff,
            power: self.power + o.power,
            rate: self.rate + o.rate,
            trig,
            freq,
            impulse: None,
            special: None,
        })
    }
}

#[derive(Clone, Debug)]
struct TimeExpr(Vec<Prod>);

impl TimeExpr {
    fn single(&self) -> Option<Prod> {
        match self.0.as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    fn of(p: Prod) -> Self {
        TimeExpr(vec![p])
    }
}

impl Algebra for TimeExpr {
    fn constant(c: f64) -> Self {
        TimeExpr::of(Prod::constant(c))
    }

    fn as_constant(&self) -> Option<f64> {
        self.0.iter().try_fold(0.0, |acc, p| p.is_constant().then_some(acc + p.coeff))
    }

    fn add(mut self, other: Self, _: usize) -> Result<Self> {
        self.0.extend(other.0);
        Ok(self)
    }

    fn mul(self, other: Self, pos: usize) -> Result<Self> {
        let mut out = Vec::new();
        for a in &self.0 {
            for b in &other.0 {
                out.push(a.times(*b, pos)?);
            }
        }
        Ok(TimeExpr(out))
    }

    fn div(self, other: Self, pos: usize) -> Result<Self> {
        match other.single() {
            Some(p) if p.trig == Trig::None && p.impulse.is_none() && p.special.is_none() && p.coeff != 0.0 => {
                let inv = Prod { coeff: 1.0 / p.coeff, power: -p.power, rate: -p.rate, ..Prod::constant(0.0) };
                self.mul(TimeExpr::of(inv), pos)
            }
            _ => Err(Error::parse(pos, "division only by nonzero products of powers and exponentials")),
        }
    }

    fn pow(self, e: f64, pos: usize) -> Result<Self> {
        if let Some(c) = self.as_constant() {
            let v = c.powf(e);
            return if v.is_finite() { Ok(Self::constant(v)) } else { Err(Error::parse(pos, "power is not finite")) };
        }
        if e == 1.0 {
            return Ok(self);
        }
        if let Some(p) = self.single() {
            if let Some(0) = p.impulse {
                if p.coeff == 1.0 && e >= 0.0 && e.fract() == 0.0 {
                    return Ok(TimeExpr::of(Prod { impulse: Some(e as u32), ..p }));
                }
            }
            if p.is_plain() && (p.coeff > 0.0 || e.fract() == 0.0) {
                return Ok(TimeExpr::of(Prod { coeff: p.coeff.powf(e), power: p.power * e, rate: p.rate * e, ..p }));
            }
        }
        if e >= 0.0 && e.fract() == 0.0 && e <= 16.0 {
            let mut acc = Self::constant(1.0);
            for _ in 0..e as u32 {
                acc = acc.mul(self.clone(), pos)?;
            }
            return Ok(acc);
        }
        Err(Error::parse(pos, "unsupported power"))
    }

    fn name(name: &str, args: Option<Vec<Self>>, pos: usize) -> Result<Self> {
        let bad_arg = || Error::parse(pos, format!("unsupported argument for `{name}`"));
        let is_t = |a: &TimeExpr| a.single().and_then(|p| p.linear()) == Some(1.0);
        match name {
            "t" if args.is_none() => Ok(TimeExpr::of(Prod { power: 1.0, ..Prod::constant(1.0) })),
            "pi" if args.is_none() => Ok(Self::constant(std::f64::consts::PI)),
            "u" | "step" => match args {
                None => Ok(Self::constant(1.0)),
                Some(a) if a.len() == 1 && is_t(&a[0]) => Ok(Self::constant(1.0)),
                _ => Err(bad_arg()),
            },
            "delta" => match args {
                None => Ok(TimeExpr::of(Prod { impulse: Some(0), ..Prod::constant(1.0) })),
                Some(a) if a.len() == 1 && is_t(&a[0]) => {
                    Ok(TimeExpr::of(Prod { impulse: Some(0), ..Prod::constant(1.0) }))
                }
                _ => Err(bad_arg()),
            },
            "exp" | "cos" | "sin" => {
                let a = single_arg(name, args, pos)?;
                if let Some(c) = a.as_constant() {
                    return Ok(Self::constant(match name {
                        "exp" => c.exp(),
                        "cos" => c.cos(),
                        _ => c.sin(),
                    }));
                }
                let w = a.single().and_then(|p| p.linear()).ok_or_else(bad_arg)?;
                let p = match name {
                    "exp" => Prod { rate: w, ..Prod::constant(1.0) },
                    "cos" => Prod { trig: Trig::Cos, freq: w.abs(), ..Prod::constant(1.0) },
                    _ => Prod { trig: Trig::Sin, freq: w.abs(), ..Prod::constant(w.signum()) },
                };
                Ok(TimeExpr::of(p))
            }
            "sqrt" => single_arg(name, args, pos)?.pow(0.5, pos),
            "ln" => {
                let a = single_arg(name, args, pos)?;
                if let Some(c) = a.as_constant() {
                    return if c > 0.0 { Ok(Self::constant(c.ln())) } else { Err(bad_arg()) };
                }
                if !is_t(&a) {
                    return Err(bad_arg());
                }
                Ok(TimeExpr::of(Prod { special: Some((SpecialKind::Log, 0.0)), ..Prod::constant(1.0) }))
            }
            other => {
                let kind = SpecialKind::from_name(other)
                    .ok_or_else(|| Error::parse(pos, format!("unknown name `{other}`")))?;
                let param = if kind.uses_param() {
                    single_arg(other, args, pos)?.as_constant().ok_or_else(bad_arg)?
                } else if args.is_none() {
                    0.0
                } else {
                    return Err(bad_arg());
                };
                Ok(TimeExpr::of(Prod { special: Some((kind, param)), ..Prod::constant(1.0) }))
            }
        }
    }
}

/// Parses a t-domain expression into its causal companion, e.g.
/// `2*exp(-3 t)*sin(2 t) + delta`.
pub fn parse_time_expr(src: &str) -> Result<CausalFunction> {
    let e: TimeExpr = parse(src)?;
    let (mut terms, mut impulses, mut specials) = (Vec::new(), Vec::new(), Vec::new());
    for p in e.0 {
        if let Some(n) = p.impulse {
            impulses.push(ImpulseTerm::new(p.coeff, n));
        } else if let Some((kind, param)) = p.special {
            specials.push(SpecialTerm::new(kind, param, p.coeff));
        } else {
            terms.push(CausalTerm::new(p.coeff, p.power, p.rate, p.trig, p.freq));
        }
    }
    CausalFunction::new(terms, impulses, specials)
}

#[derive(Clone, Debug)]
struct SExpr(TransformExpr);

impl SExpr {
    fn poly(coeffs: Vec<f64>) -> Self {
        SExpr(TransformExpr::from_rational(RationalLT::polynomial(Polynomial::new(coeffs))))
    }

    fn part(&self) -> Option<&RationalPart> {
        match (self.0.rational_parts(), self.0.special_terms()) {
            ([p], []) => Some(p),
            _ => None,
        }
    }

    fn reciprocal(&self, pos: usize) -> Result<Self> {
        let p = self
            .part()
            .filter(|p| p.delay == 0.0)
            .ok_or_else(|| Error::parse(pos, "only a single undelayed rational term can be inverted"))?;
        let r = RationalLT::new(p.rational.den().clone(), p.rational.num().clone())
            .map_err(|_| Error::parse(pos, "division by zero"))?;
        let part = RationalPart { delay: 0.0, s_power: -p.s_power, rational: r };
        Ok(SExpr(TransformExpr::new(vec![part], Vec::new())?))
    }
}

fn single_term(p: &Polynomial) -> Option<(usize, f64)> {
    let d = p.degree()?;
    (0..d).all(|k| p.coeff(k) == 0.0).then(|| (d, p.coeff(d)))
}

impl Algebra for SExpr {
    fn constant(c: f64) -> Self {
        Self::poly(vec![c])
    }

    fn as_constant(&self) -> Option<f64> {
        if self.0.is_zero() {
            return Some(0.0);
        }
        let p = self.part()?;
        let (n, c) = single_term(p.rational.num())?;
        let (d, l) = single_term(p.rational.den())?;
        (n == 0 && d == 0 && p.delay == 0.0 && p.s_power == 0.0).then_some(c / l)
    }

    fn add(self, other: Self, _: usize) -> Result<Self> {
        Ok(SExpr(self.0.add(&other.0)))
    }

    fn mul(self, other: Self, pos: usize) -> Result<Self> {
        self.0.mul(&other.0).map(SExpr).map_err(|e| Error::parse(pos, e.to_string()))
    }

    fn div(self, other: Self, pos: usize) -> Result<Self> {
        self.mul(other.reciprocal(pos)?, pos)
    }

    fn pow(self, e: f64, pos: usize) -> Result<Self> {
        if e.fract() == 0.0 && e.abs() <= 64.0 {
            let base = if e < 0.0 { self.reciprocal(pos)? } else { self };
            let mut acc = Self::constant(1.0);
            for _ in 0..e.abs() as u32 {
                acc = acc.mul(base.clone(), pos)?;
            }
            return Ok(acc);
        }
        let mono = self.part().filter(|p| p.delay == 0.0).and_then(|p| {
            let (n, c) = single_term(p.rational.num())?;
            let (d, l) = single_term(p.rational.den())?;
            Some((c / l, n as f64 - d as f64 + p.s_power))
        });
        match mono {
            Some((c, k)) if c > 0.0 => Ok(SExpr(Self::constant(c.powf(e)).0.mul_s_power(k * e))),
            _ => Err(Error::parse(pos, "non-integer powers apply to positive monomials c*s^k only")),
        }
    }

    fn name(name: &str, args: Option<Vec<Self>>, pos: usize) -> Result<Self> {
        match name {
            "s" if args.is_none() => Ok(Self::poly(vec![0.0, 1.0])),
            "pi" if args.is_none() => Ok(Self::constant(std::f64::consts::PI)),
            "sqrt" => single_arg(name, args, pos)?.pow(0.5, pos),
            "exp" => {
                let a = single_arg(name, args, pos)?;
                if let Some(c) = a.as_constant() {
                    return Ok(Self::constant(c.exp()));
                }
                let tau = a
                    .part()
                    .filter(|p| p.delay == 0.0 && p.s_power == 0.0)
                    .and_then(|p| {
                        let (n, c) = single_term(p.rational.num())?;
                        let (d, l) = single_term(p.rational.den())?;
                        (n == 1 && d == 0).then_some(-c / l)
                    })
                    .ok_or_else(|| Error::parse(pos, "exp takes `-tau*s` in the s-domain"))?;
                if tau < 0.0 {
                    return Err(Error::parse(pos, "negative delays are not LT-consistent"));
                }
                let one = RationalLT::polynomial(Polynomial::one());
                Ok(SExpr(TransformExpr::new(
                    vec![RationalPart { delay: tau, s_power: 0.0, rational: one }],
                    Vec::new(),
                )?))
            }
            other => Err(Error::parse(pos, format!("unknown name `{other}`"))),
        }
    }
}

/// Parses an s-domain expression, e.g. `1/(s*(s+3))` or `exp(-2 s)/s^0.5`.
pub fn parse_s_expr(src: &str) -> Result<TransformExpr> {
    parse::<SExpr>(src).map(|e| e.0)
}

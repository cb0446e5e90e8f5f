//! Time-domain objects.
//!
//! A [`CausalFunction`] is a finite sum of terms that vanish for `t < 0`: modal
//! terms `u(t)·c·t^r·e^{at}·{1, cos ωt, sin ωt}`, impulses `c·δ⁽ⁿ⁾(t)` and the
//! non-elementary rows of the correspondence table. Every term may be delayed by
//! `τ ≥ 0`. The connect function `u₀(t)` is never given a numeric value; its
//! presence is a flag derived from the terms, and [`CausalFunction::evaluate_at_zero`]
//! reports the transition at the origin as a structured [`ValueAtZero`].
//!
//! A [`DFunction`] is the bilateral counterpart: the same modal terms (integer
//! powers only) without the unit step, defined and ordinarily derivable for all
//! real `t`.

mod dfunction;
mod theorems;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::special::{bessel_j0, dawson, erf};
use crate::{Error, Result};

pub use dfunction::{DFunction, DTerm};
pub use theorems::{
    derivative_primary, dud, integral_primary, is_lt_consistent, iud, mul_unit_step, secondary_derivation_lt,
    secondary_integration_lt, secondary_integration_lt_with, Consistency, LtConsistency,
};

/// Terms whose parameters agree to this tolerance are merged.
pub(crate) const MERGE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trig {
    None,
    Cos,
    Sin,
}

impl Trig {
    pub(crate) fn apply(self, x: f64) -> f64 {
        match self {
            Trig::None => 1.0,
            Trig::Cos => x.cos(),
            Trig::Sin => x.sin(),
        }
    }
}

/// `u(t−τ)·coeff·(t−τ)^power·e^{rate·(t−τ)}·trig(freq·(t−τ))`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CausalTerm {
    pub coeff: f64,
    pub power: f64,
    pub rate: f64,
    pub trig: Trig,
    pub freq: f64,
    pub delay: f64,
}

impl CausalTerm {
    pub fn new(coeff: f64, power: f64, rate: f64, trig: Trig, freq: f64) -> Self {
        CausalTerm { coeff, power, rate, trig, freq, delay: 0.0 }
    }

    /// `c·u(t)`
    pub fn step(coeff: f64) -> Self {
        Self::new(coeff, 0.0, 0.0, Trig::None, 0.0)
    }

    /// `c·u(t)·t^r`
    pub fn power(coeff: f64, power: f64) -> Self {
        Self::new(coeff, power, 0.0, Trig::None, 0.0)
    }

    /// `c·u(t)·e^{at}`
    pub fn exp(coeff: f64, rate: f64) -> Self {
        Self::new(coeff, 0.0, rate, Trig::None, 0.0)
    }

    pub fn cos(coeff: f64, freq: f64) -> Self {
        Self::new(coeff, 0.0, 0.0, Trig::Cos, freq)
    }

    pub fn sin(coeff: f64, freq: f64) -> Self {
        Self::new(coeff, 0.0, 0.0, Trig::Sin, freq)
    }

    pub fn with_rate(mut self, rate: f64) -> Self {
        self.rate = rate;
        self
    }

    pub fn with_power(mut self, power: f64) -> Self {
        self.power = power;
        self
    }

    pub fn with_delay(mut self, delay: f64) -> Self {
        self.delay = delay;
        self
    }

    pub fn has_integer_power(&self) -> bool {
        self.power >= 0.0 && self.power.fract() == 0.0
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.coeff, self.power, self.rate, self.freq, self.delay].iter().all(|x| x.is_finite());
        if !finite {
            return Err(Error::invalid("term parameters must be finite"));
        }
        if self.power <= -1.0 {
            return Err(Error::invalid(format!("power {} is not transformable, it must exceed -1", self.power)));
        }
        if self.freq < 0.0 {
            return Err(Error::invalid("frequency must be non-negative"));
        }
        if self.delay < 0.0 {
            return Err(Error::NegativeDelay(self.delay));
        }
        Ok(())
    }

    /// Canonical form: `cos 0 → 1`, `sin 0 → 0`, no frequency without trig.
    fn canonical(mut self) -> Option<Self> {
        if self.trig == Trig::None {
            self.freq = 0.0;
        } else if self.freq == 0.0 {
            if self.trig == Trig::Sin {
                return None;
            }
            self.trig = Trig::None;
        }
        (self.coeff != 0.0).then_some(self)
    }

    /// Value at `x = t − τ > 0`.
    pub(crate) fn shape(&self, x: f64) -> f64 {
        let p = if self.power == 0.0 { 1.0 } else { x.powf(self.power) };
        self.coeff * p * (self.rate * x).exp() * self.trig.apply(self.freq * x)
    }

    pub fn value(&self, t: f64) -> f64 {
        let x = t - self.delay;
        if x < 0.0 {
            0.0
        } else if x == 0.0 {
            match self.right_limit() {
                Limit::Finite(v) => v,
                Limit::Divergent { positive } => {
                    if positive {
                        f64::INFINITY
                    } else {
                        f64::NEG_INFINITY
                    }
                }
            }
        } else {
            self.shape(x)
        }
    }

    fn right_limit(&self) -> Limit {
        if self.power > 0.0 {
            Limit::Finite(0.0)
        } else if self.power == 0.0 {
            Limit::Finite(if self.trig == Trig::Sin { 0.0 } else { self.coeff })
        } else if self.trig == Trig::Sin {
            // t^r·sin ωt ~ ω·t^{r+1} → 0
            Limit::Finite(0.0)
        } else {
            Limit::Divergent { positive: self.coeff > 0.0 }
        }
    }

    fn same_shape(&self, other: &Self) -> bool {
        self.trig == other.trig
            && close(self.power, other.power)
            && close(self.rate, other.rate)
            && close(self.freq, other.freq)
            && close(self.delay, other.delay)
    }

    fn sort_key(&self, other: &Self) -> Ordering {
        self.delay
            .total_cmp(&other.delay)
            .then(self.power.total_cmp(&other.power))
            .then(self.rate.total_cmp(&other.rate))
            .then(self.trig.cmp(&other.trig))
            .then(self.freq.total_cmp(&other.freq))
    }
}

/// `coeff·δ⁽ᵒʳᵈᵉʳ⁾(t−τ)`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImpulseTerm {
    pub coeff: f64,
    pub order: u32,
    pub delay: f64,
}

impl ImpulseTerm {
    pub fn new(coeff: f64, order: u32) -> Self {
        ImpulseTerm { coeff, order, delay: 0.0 }
    }

    pub fn with_delay(mut self, delay: f64) -> Self {
        self.delay = delay;
        self
    }
}

/// The non-elementary rows of the correspondence table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecialKind {
    /// `e^{at}·erf(√(at))/√a`, `a ≠ 0`; for `a < 0` this is the real function
    /// `2/√π·D(√(−at))/√(−a)` with `D` Dawson's integral.
    ExpErf,
    /// `ln t`
    Log,
    /// `ln t/√t`
    LogOverSqrt,
    /// `e^{−a²/(4t)}/√(πt)`, `a ≥ 0`
    GaussKernelA,
    /// `a·t^{−3/2}·e^{−a²/(4t)}`, `a > 0`
    GaussKernelB,
    /// `cos(2√(at))/√(πt)`, `a ≥ 0`
    CosSqrt,
    /// `J₀(2√(at))`, `a ≥ 0`
    BesselJ0Sqrt,
}

impl SpecialKind {
    pub const ALL: [SpecialKind; 7] = [
        SpecialKind::ExpErf,
        SpecialKind::Log,
        SpecialKind::LogOverSqrt,
        SpecialKind::GaussKernelA,
        SpecialKind::GaussKernelB,
        SpecialKind::CosSqrt,
        SpecialKind::BesselJ0Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialKind::ExpErf => "exp_erf",
            SpecialKind::Log => "log",
            SpecialKind::LogOverSqrt => "log_over_sqrt",
            SpecialKind::GaussKernelA => "gauss_a",
            SpecialKind::GaussKernelB => "gauss_b",
            SpecialKind::CosSqrt => "cos_sqrt",
            SpecialKind::BesselJ0Sqrt => "bessel_j0",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn uses_param(self) -> bool {
        !matches!(self, SpecialKind::Log | SpecialKind::LogOverSqrt)
    }

    fn check_param(self, a: f64) -> Result<()> {
        let ok = match self {
            SpecialKind::ExpErf => a != 0.0,
            SpecialKind::GaussKernelB => a > 0.0,
            SpecialKind::GaussKernelA | SpecialKind::CosSqrt | SpecialKind::BesselJ0Sqrt => a >= 0.0,
            _ => true,
        };
        if ok && a.is_finite() {
            Ok(())
        } else {
            Err(Error::invalid(format!("parameter {a} out of range for {}", self.name())))
        }
    }

    /// Value at `t > 0` with unit coefficient.
    pub fn eval(self, a: f64, t: f64) -> f64 {
        let pi = std::f64::consts::PI;
        match self {
            SpecialKind::ExpErf if a > 0.0 => (a * t).exp() * erf((a * t).sqrt()) / a.sqrt(),
            SpecialKind::ExpErf => 2.0 / pi.sqrt() * dawson((-a * t).sqrt()) / (-a).sqrt(),
            SpecialKind::Log => t.ln(),
            SpecialKind::LogOverSqrt => t.ln() / t.sqrt(),
            SpecialKind::GaussKernelA => (-a * a / (4.0 * t)).exp() / (pi * t).sqrt(),
            SpecialKind::GaussKernelB => a * t.powf(-1.5) * (-a * a / (4.0 * t)).exp(),
            SpecialKind::CosSqrt => (2.0 * (a * t).sqrt()).cos() / (pi * t).sqrt(),
            SpecialKind::BesselJ0Sqrt => bessel_j0(2.0 * (a * t).sqrt()),
        }
    }

    /// Right limit at 0 with unit coefficient.
    fn right_limit(self, a: f64) -> Limit {
        match self {
            SpecialKind::ExpErf | SpecialKind::GaussKernelB => Limit::Finite(0.0),
            SpecialKind::GaussKernelA if a != 0.0 => Limit::Finite(0.0),
            SpecialKind::GaussKernelA | SpecialKind::CosSqrt => Limit::Divergent { positive: true },
            SpecialKind::Log | SpecialKind::LogOverSqrt => Limit::Divergent { positive: false },
            SpecialKind::BesselJ0Sqrt => Limit::Finite(1.0),
        }
    }

    /// Singularity strength at 0 as (power exponent, log exponent); larger is weaker.
    fn singularity(self, a: f64) -> (f64, i32) {
        match self {
            SpecialKind::Log => (0.0, -1),
            SpecialKind::LogOverSqrt => (-0.5, -1),
            SpecialKind::CosSqrt => (-0.5, 0),
            SpecialKind::GaussKernelA if a == 0.0 => (-0.5, 0),
            _ => (0.0, 0),
        }
    }
}

/// `coeff·kind_a(t−τ)`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecialTerm {
    pub kind: SpecialKind,
    pub param: f64,
    pub coeff: f64,
    pub delay: f64,
}

impl SpecialTerm {
    pub fn new(kind: SpecialKind, param: f64, coeff: f64) -> Self {
        let param = if kind.uses_param() { param } else { 0.0 };
        SpecialTerm { kind, param, coeff, delay: 0.0 }
    }

    pub fn with_delay(mut self, delay: f64) -> Self {
        self.delay = delay;
        self
    }

    pub fn value(&self, t: f64) -> f64 {
        let x = t - self.delay;
        if x < 0.0 {
            0.0
        } else if x == 0.0 {
            match self.kind.right_limit(self.param).scaled(self.coeff) {
                Limit::Finite(v) => v,
                Limit::Divergent { positive } => {
                    if positive {
                        f64::INFINITY
                    } else {
                        f64::NEG_INFINITY
                    }
                }
            }
        } else {
            self.coeff * self.kind.eval(self.param, x)
        }
    }
}

/// Right limit at the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Limit {
    Finite(f64),
    Divergent { positive: bool },
}

impl Limit {
    fn scaled(self, c: f64) -> Limit {
        match self {
            Limit::Finite(v) => Limit::Finite(c * v),
            Limit::Divergent { positive } => Limit::Divergent { positive: positive == (c > 0.0) },
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Limit::Finite(0.0)
    }
}

/// What happens at `t = 0`: the left value, the right limit of the smooth part,
/// whether the connect function fills a jump there, and which impulse orders sit there.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueAtZero {
    pub left: f64,
    pub right_limit: Limit,
    pub connect_present: bool,
    pub impulse_orders: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CausalFunction {
    terms: Vec<CausalTerm>,
    impulses: Vec<ImpulseTerm>,
    specials: Vec<SpecialTerm>,
}

impl CausalFunction {
    /// Validates and normalizes: like terms merged, zero terms dropped, canonical order.
    pub fn new(terms: Vec<CausalTerm>, impulses: Vec<ImpulseTerm>, specials: Vec<SpecialTerm>) -> Result<Self> {
        for t in &terms {
            t.validate()?;
        }
        for i in &impulses {
            if !(i.coeff.is_finite() && i.delay.is_finite()) {
                return Err(Error::invalid("impulse parameters must be finite"));
            }
            if i.delay < 0.0 {
                return Err(Error::NegativeDelay(i.delay));
            }
        }
        for s in &specials {
            s.kind.check_param(s.param)?;
            if !s.coeff.is_finite() {
                return Err(Error::invalid("special term coefficient must be finite"));
            }
            if s.delay < 0.0 {
                return Err(Error::NegativeDelay(s.delay));
            }
        }
        Ok(Self::normalized(terms, impulses, specials))
    }

    fn normalized(terms: Vec<CausalTerm>, impulses: Vec<ImpulseTerm>, specials: Vec<SpecialTerm>) -> Self {
        let mut merged: Vec<CausalTerm> = Vec::new();
        let mut terms: Vec<CausalTerm> = terms.into_iter().filter_map(CausalTerm::canonical).collect();
        terms.sort_by(CausalTerm::sort_key);
        for t in terms {
            match merged.iter_mut().find(|m| m.same_shape(&t)) {
                Some(m) => m.coeff += t.coeff,
                None => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0.0);

        let mut imp: Vec<ImpulseTerm> = Vec::new();
        for i in impulses {
            match imp.iter_mut().find(|m| m.order == i.order && close(m.delay, i.delay)) {
                Some(m) => m.coeff += i.coeff,
                None => imp.push(i),
            }
        }
        imp.retain(|i| i.coeff != 0.0);
        imp.sort_by(|a, b| a.delay.total_cmp(&b.delay).then(a.order.cmp(&b.order)));

        let mut sp: Vec<SpecialTerm> = Vec::new();
        for s in specials {
            match sp.iter_mut().find(|m| m.kind == s.kind && close(m.param, s.param) && close(m.delay, s.delay)) {
                Some(m) => m.coeff += s.coeff,
                None => sp.push(s),
            }
        }
        sp.retain(|s| s.coeff != 0.0);
        sp.sort_by(|a, b| a.delay.total_cmp(&b.delay).then(a.kind.cmp(&b.kind)).then(a.param.total_cmp(&b.param)));
        CausalFunction { terms: merged, impulses: imp, specials: sp }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit step `u(t)`.
    pub fn unit_step() -> Self {
        Self::from_term(CausalTerm::step(1.0)).expect("valid term")
    }

    /// `δ⁽ⁿ⁾(t)`
    pub fn impulse(order: u32) -> Self {
        Self::normalized(Vec::new(), vec![ImpulseTerm::new(1.0, order)], Vec::new())
    }

    pub fn from_term(term: CausalTerm) -> Result<Self> {
        Self::new(vec![term], Vec::new(), Vec::new())
    }

    pub fn from_terms(terms: Vec<CausalTerm>) -> Result<Self> {
        Self::new(terms, Vec::new(), Vec::new())
    }

    pub fn from_special(term: SpecialTerm) -> Result<Self> {
        Self::new(Vec::new(), Vec::new(), vec![term])
    }

    pub fn terms(&self) -> &[CausalTerm] {
        &self.terms
    }

    pub fn impulses(&self) -> &[ImpulseTerm] {
        &self.impulses
    }

    pub fn specials(&self) -> &[SpecialTerm] {
        &self.specials
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.impulses.is_empty() && self.specials.is_empty()
    }

    /// Presence of the connect function: some term starts with a nonzero right limit.
    pub fn has_connect(&self) -> bool {
        self.delays().iter().any(|&d| !self.right_limit_at(d).is_zero())
    }

    fn delays(&self) -> Vec<f64> {
        let mut d: Vec<f64> = self.terms.iter().map(|t| t.delay).chain(self.specials.iter().map(|s| s.delay)).collect();
        d.sort_by(f64::total_cmp);
        d.dedup_by(|a, b| close(*a, *b));
        d
    }

    pub fn add(&self, other: &CausalFunction) -> CausalFunction {
        Self::normalized(
            self.terms.iter().chain(&other.terms).copied().collect(),
            self.impulses.iter().chain(&other.impulses).copied().collect(),
            self.specials.iter().chain(&other.specials).copied().collect(),
        )
    }

    pub fn scale(&self, c: f64) -> CausalFunction {
        Self::normalized(
            self.terms.iter().map(|t| CausalTerm { coeff: t.coeff * c, ..*t }).collect(),
            self.impulses.iter().map(|i| ImpulseTerm { coeff: i.coeff * c, ..*i }).collect(),
            self.specials.iter().map(|s| SpecialTerm { coeff: s.coeff * c, ..*s }).collect(),
        )
    }

    /// Delay every term by `τ ≥ 0`.
    pub fn shift(&self, tau: f64) -> Result<CausalFunction> {
        if tau < 0.0 || !tau.is_finite() {
            return Err(Error::NegativeDelay(tau));
        }
        Ok(Self::normalized(
            self.terms.iter().map(|t| t.with_delay(t.delay + tau)).collect(),
            self.impulses.iter().map(|i| i.with_delay(i.delay + tau)).collect(),
            self.specials.iter().map(|s| s.with_delay(s.delay + tau)).collect(),
        ))
    }

    /// Pointwise value of the smooth part. Exactly 0 for `t < 0`; at the start of a
    /// term its right limit is used (infinite for divergent terms). Impulses carry no
    /// pointwise value.
    pub fn value(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        self.terms.iter().map(|x| x.value(t)).sum::<f64>() + self.specials.iter().map(|s| s.value(t)).sum::<f64>()
    }

    /// Like [`value`](Self::value), but refuses to collapse the origin to a number
    /// when a connect transition, an impulse or a divergence sits there.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::invalid("evaluation point must be finite"));
        }
        if t == 0.0 {
            let z = self.evaluate_at_zero();
            if z.connect_present || !z.impulse_orders.is_empty() {
                return Err(Error::AtOrigin);
            }
        }
        Ok(self.value(t))
    }

    pub fn evaluate_at_zero(&self) -> ValueAtZero {
        let right_limit = self.right_limit_at(0.0);
        ValueAtZero {
            left: 0.0,
            connect_present: !right_limit.is_zero(),
            right_limit,
            impulse_orders: self.impulses.iter().filter(|i| i.delay == 0.0).map(|i| i.order).collect(),
        }
    }

    fn right_limit_at(&self, delay: f64) -> Limit {
        let mut finite = 0.0;
        // strongest singularity and the net sign of the terms carrying it
        let mut worst: Option<((f64, i32), f64)> = None;
        let mut consider = |strength: (f64, i32), weight: f64| match &mut worst {
            Some((s, w)) if *s == strength => *w += weight,
            Some((s, _)) if (strength.0, strength.1) > (s.0, s.1) => {}
            _ => worst = Some((strength, weight)),
        };
        for t in self.terms.iter().filter(|t| close(t.delay, delay)) {
            match t.right_limit() {
                Limit::Finite(v) => finite += v,
                Limit::Divergent { .. } => consider((t.power, 0), t.coeff),
            }
        }
        for s in self.specials.iter().filter(|s| close(s.delay, delay)) {
            match s.kind.right_limit(s.param) {
                Limit::Finite(v) => finite += s.coeff * v,
                Limit::Divergent { positive } => {
                    consider(s.kind.singularity(s.param), if positive { s.coeff } else { -s.coeff })
                }
            }
        }
        match worst {
            Some((_, w)) if w != 0.0 => Limit::Divergent { positive: w > 0.0 },
            Some(_) => {
                let v = self.value(delay + 1e-12);
                Limit::Divergent { positive: v > 0.0 }
            }
            None => Limit::Finite(finite),
        }
    }

    /// The d-function `f_d` of an undelayed, integer-power modal function `u(t)·f_d(t)`.
    pub fn modal_part(&self) -> Option<DFunction> {
        if !self.impulses.is_empty() || !self.specials.is_empty() {
            return None;
        }
        let mut terms = Vec::new();
        for t in &self.terms {
            if t.delay != 0.0 || !t.has_integer_power() {
                return None;
            }
            terms.push(DTerm::new(t.coeff, t.power as u32, t.rate, t.trig, t.freq));
        }
        Some(DFunction::new(terms))
    }

    /// Largest exponential growth rate among the smooth terms (0 when there are none).
    pub fn growth_rate(&self) -> f64 {
        self.terms.iter().map(|t| t.rate).fold(0.0, f64::max)
    }
}

impl fmt::Display for CausalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::causal_to_lines(self))
    }
}

impl FromStr for CausalFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::text::causal_from_lines(s)
    }
}

pub(crate) fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= MERGE_TOL * (1.0 + a.abs().max(b.abs()))
}

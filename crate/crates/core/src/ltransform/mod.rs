//! The transform engine.
//!
//! [`forward_lt`] maps a causal function onto the correspondence table: modal
//! terms become rational functions over an exact least-common denominator,
//! impulses become powers of `s`, and the remaining rows are kept as tabulated
//! [`SpecialTransform`]s. [`inverse_lt`] runs the other way through partial
//! fractions. Delays are carried as metadata and applied as time shifts.

mod forward;
mod inverse;

use std::fmt;

use num_complex::Complex64;

use crate::causalfn::{close, CausalFunction, DFunction, SpecialKind};
use crate::oracles;
use crate::polyalg::RationalLT;
use crate::special::{gamma, EULER_GAMMA};
use crate::{Error, Result};

pub use forward::{forward_lt, forward_lt_d};
pub(crate) use inverse::from_partial_fractions;
pub use inverse::{inverse_lt, inverse_rational};

/// Default relative tolerance for canonical-form comparisons.
pub const EQ_TOL: f64 = 1e-9;

/// A non-rational row of the correspondence table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableRow {
    /// `u(t)·t^r ⇔ Γ(r+1)/s^{r+1}`, parameter `r > −1`
    Power,
    Special(SpecialKind),
}

impl TableRow {
    pub fn name(self) -> &'static str {
        match self {
            TableRow::Power => "power",
            TableRow::Special(k) => k.name(),
        }
    }
}

/// `coeff·s^{s_power}·image(s)·e^{−s·delay}` where `image` is the s-side of `row`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecialTransform {
    pub row: TableRow,
    pub param: f64,
    pub coeff: f64,
    pub s_power: f64,
    pub delay: f64,
}

impl SpecialTransform {
    pub fn new(row: TableRow, param: f64, coeff: f64) -> Self {
        SpecialTransform { row, param, coeff, s_power: 0.0, delay: 0.0 }
    }

    /// The tabulated image with unit coefficient, principal branches.
    pub fn image(row: TableRow, a: f64, s: Complex64) -> Complex64 {
        let pi = std::f64::consts::PI;
        let rs = s.sqrt();
        match row {
            TableRow::Power => s.powf(-(a + 1.0)) * gamma(a + 1.0),
            TableRow::Special(k) => match k {
                SpecialKind::ExpErf => 1.0 / ((s - a) * rs),
                SpecialKind::Log => (-s.ln() - EULER_GAMMA) / s,
                SpecialKind::LogOverSqrt => -(pi / s).sqrt() * ((4.0 * s).ln() + EULER_GAMMA),
                SpecialKind::GaussKernelA => (-a * rs).exp() / rs,
                SpecialKind::GaussKernelB => 2.0 * pi.sqrt() * (-a * rs).exp(),
                SpecialKind::CosSqrt => (-a / s).exp() / rs,
                SpecialKind::BesselJ0Sqrt => (-a / s).exp() / s,
            },
        }
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut v = Self::image(self.row, self.param, s) * self.coeff;
        if self.s_power != 0.0 {
            v *= s.powf(self.s_power);
        }
        if self.delay != 0.0 {
            v *= (-s * self.delay).exp();
        }
        v
    }

    fn same_slot(&self, other: &Self) -> bool {
        self.row == other.row
            && close(self.param, other.param)
            && close(self.s_power, other.s_power)
            && close(self.delay, other.delay)
    }
}

/// `s^{s_power}·R(s)·e^{−s·delay}`; `R` itself is kept undelayed.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPart {
    pub delay: f64,
    pub s_power: f64,
    pub rational: RationalLT,
}

impl RationalPart {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut v = self.rational.eval(s);
        if self.s_power != 0.0 {
            v *= s.powf(self.s_power);
        }
        if self.delay != 0.0 {
            v *= (-s * self.delay).exp();
        }
        v
    }
}

/// A sum of delayed rational functions (optionally times a real power of `s`) and
/// tabulated special images.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TransformExpr {
    rationals: Vec<RationalPart>,
    specials: Vec<SpecialTransform>,
}

impl TransformExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(rationals: Vec<RationalPart>, specials: Vec<SpecialTransform>) -> Result<Self> {
        for r in &rationals {
            if r.delay < 0.0 {
                return Err(Error::NegativeDelay(r.delay));
            }
        }
        for s in &specials {
            if s.delay < 0.0 {
                return Err(Error::NegativeDelay(s.delay));
            }
        }
        Ok(Self::normalized(rationals, specials))
    }

    fn normalized(rationals: Vec<RationalPart>, specials: Vec<SpecialTransform>) -> Self {
        let mut parts: Vec<RationalPart> = Vec::new();
        for mut p in rationals {
            // fold an integer power of s and an inner delay into the part
            if p.s_power.fract() == 0.0 && p.s_power != 0.0 {
                p.rational = p.rational.mul_s_power(p.s_power as i32);
                p.s_power = 0.0;
            }
            if p.rational.delay() != 0.0 {
                p.delay += p.rational.delay();
                p.rational = p.rational.with_delay(0.0).expect("zero delay");
            }
            if p.rational.is_zero() {
                continue;
            }
            match parts.iter_mut().find(|q| close(q.delay, p.delay) && close(q.s_power, p.s_power)) {
                Some(q) => q.rational = q.rational.add(&p.rational).expect("undelayed"),
                None => parts.push(p),
            }
        }
        parts.retain(|p| !p.rational.is_zero());
        parts.sort_by(|a, b| a.delay.total_cmp(&b.delay).then(a.s_power.total_cmp(&b.s_power)));

        let mut sp: Vec<SpecialTransform> = Vec::new();
        for s in specials {
            match sp.iter_mut().find(|q| q.same_slot(&s)) {
                Some(q) => q.coeff += s.coeff,
                None => sp.push(s),
            }
        }
        sp.retain(|s| s.coeff != 0.0);
        sp.sort_by(|a, b| {
            a.delay
                .total_cmp(&b.delay)
                .then(a.row.cmp(&b.row))
                .then(a.param.total_cmp(&b.param))
                .then(a.s_power.total_cmp(&b.s_power))
        });
        TransformExpr { rationals: parts, specials: sp }
    }

    pub fn from_rational(r: RationalLT) -> Self {
        Self::normalized(vec![RationalPart { delay: 0.0, s_power: 0.0, rational: r }], Vec::new())
    }

    pub fn from_special(s: SpecialTransform) -> Self {
        Self::normalized(Vec::new(), vec![s])
    }

    pub fn rational_parts(&self) -> &[RationalPart] {
        &self.rationals
    }

    pub fn special_terms(&self) -> &[SpecialTransform] {
        &self.specials
    }

    /// The undelayed plain rational part (zero when absent).
    pub fn rational(&self) -> RationalLT {
        self.rationals
            .iter()
            .find(|p| p.delay == 0.0 && p.s_power == 0.0)
            .map(|p| p.rational.clone())
            .unwrap_or_else(RationalLT::zero)
    }

    /// The whole expression as a single rational with delay, if it is one.
    pub fn as_rational(&self) -> Option<RationalLT> {
        match (self.rationals.as_slice(), self.specials.is_empty()) {
            ([], true) => Some(RationalLT::zero()),
            ([p], true) if p.s_power == 0.0 => p.rational.clone().with_delay(p.delay).ok(),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rationals.is_empty() && self.specials.is_empty()
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.rationals.iter().map(|p| p.eval(s)).sum::<Complex64>()
            + self.specials.iter().map(|p| p.eval(s)).sum::<Complex64>()
    }

    pub fn add(&self, other: &TransformExpr) -> TransformExpr {
        Self::normalized(
            self.rationals.iter().chain(&other.rationals).cloned().collect(),
            self.specials.iter().chain(&other.specials).copied().collect(),
        )
    }

    pub fn scale(&self, c: f64) -> TransformExpr {
        Self::normalized(
            self.rationals.iter().map(|p| RationalPart { rational: p.rational.scale(c), ..p.clone() }).collect(),
            self.specials.iter().map(|s| SpecialTransform { coeff: s.coeff * c, ..*s }).collect(),
        )
    }

    /// Multiply by `s^α`, any real `α`.
    pub fn mul_s_power(&self, alpha: f64) -> TransformExpr {
        Self::normalized(
            self.rationals.iter().map(|p| RationalPart { s_power: p.s_power + alpha, ..p.clone() }).collect(),
            self.specials.iter().map(|s| SpecialTransform { s_power: s.s_power + alpha, ..*s }).collect(),
        )
    }

    /// Rational-by-rational product; special images are rejected.
    pub fn mul(&self, other: &TransformExpr) -> Result<TransformExpr> {
        if !self.specials.is_empty() || !other.specials.is_empty() {
            return Err(Error::unsupported(
                "symbolic products of special images are not tabulated; use convolve_numeric",
            ));
        }
        let mut parts = Vec::new();
        for a in &self.rationals {
            for b in &other.rationals {
                parts.push(RationalPart {
                    delay: a.delay + b.delay,
                    s_power: a.s_power + b.s_power,
                    rational: a.rational.mul(&b.rational),
                });
            }
        }
        Ok(Self::normalized(parts, Vec::new()))
    }

    /// Canonical-form equality: rational parts by cross-multiplication, special
    /// coefficients relative to the largest one, both to `rel`.
    pub fn approx_eq(&self, other: &TransformExpr, rel: f64) -> bool {
        let zero = RationalLT::zero();
        let rationals_ok = self.rationals.iter().chain(&other.rationals).all(|key| {
            let a = find_part(&self.rationals, key).map_or(&zero, |p| &p.rational);
            let b = find_part(&other.rationals, key).map_or(&zero, |p| &p.rational);
            a.approx_eq(b, rel)
        });
        let scale = self.specials.iter().chain(&other.specials).fold(0.0f64, |m, s| m.max(s.coeff.abs()));
        let diff = self.add(&other.scale(-1.0));
        let specials_ok = diff.specials.iter().all(|s| s.coeff.abs() <= rel * scale);
        rationals_ok && specials_ok
    }
}

fn find_part<'a>(parts: &'a [RationalPart], key: &RationalPart) -> Option<&'a RationalPart> {
    parts.iter().find(|q| close(q.delay, key.delay) && close(q.s_power, key.s_power))
}

impl From<RationalLT> for TransformExpr {
    fn from(r: RationalLT) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for TransformExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::render_transform(self))
    }
}

/// `F(s)·e^{−sτ}`, `τ ≥ 0`.
pub fn shift(f: &TransformExpr, tau: f64) -> Result<TransformExpr> {
    if tau < 0.0 || !tau.is_finite() {
        return Err(Error::NegativeDelay(tau));
    }
    Ok(TransformExpr::normalized(
        f.rationals.iter().map(|p| RationalPart { delay: p.delay + tau, ..p.clone() }).collect(),
        f.specials.iter().map(|s| SpecialTransform { delay: s.delay + tau, ..*s }).collect(),
    ))
}

/// Convolution in the L-domain: the product of the two transforms.
pub fn convolve_lt(f1: &TransformExpr, f2: &TransformExpr) -> Result<TransformExpr> {
    f1.mul(f2)
}

/// `u(t)∫₀ᵗ f1(t−τ)f2(τ)dτ` at `t = i·h`, `i = 0…n`: trapezoidal sums at steps `h`
/// and `h/2` on the smooth parts, combined as `(4T_{h/2} − T_h)/3`. Order-0 impulses contribute their shifted partner exactly; higher
/// impulse orders are rejected.
pub fn convolve_numeric(f1: &CausalFunction, f2: &CausalFunction, h: f64, n: usize) -> Result<Vec<f64>> {
    if f1.impulses().iter().chain(f2.impulses()).any(|i| i.order > 0) {
        return Err(Error::unsupported("numeric convolution supports only order-0 impulses"));
    }
    let smooth = |f: &CausalFunction| {
        let f = f.clone();
        move |t: f64| {
            let v = f.value(t);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        }
    };
    let g1 = smooth(f1);
    let g2 = smooth(f2);
    let coarse = oracles::numeric_convolution(&g1, &g2, h, n);
    let fine = oracles::numeric_convolution(&g1, &g2, 0.5 * h, 2 * n);
    let mut out: Vec<f64> = coarse.iter().enumerate().map(|(i, c)| (4.0 * fine[2 * i] - c) / 3.0).collect();
    for (i, o) in out.iter_mut().enumerate() {
        let t = i as f64 * h;
        for imp in f1.impulses() {
            *o += imp.coeff * g2(t - imp.delay);
        }
        for imp in f2.impulses() {
            *o += imp.coeff * g1(t - imp.delay);
        }
        for a in f1.impulses() {
            for b in f2.impulses() {
                if close(a.delay + b.delay, t) {
                    return Err(Error::unsupported("product of impulses lands on the grid"));
                }
            }
        }
    }
    Ok(out)
}

/// Anything with a forward transform.
pub trait Transformable {
    fn transform(&self) -> Result<TransformExpr>;
}

impl Transformable for CausalFunction {
    fn transform(&self) -> Result<TransformExpr> {
        forward_lt(self)
    }
}

impl Transformable for DFunction {
    /// Ambivalence: `L{f_d} = L{u·f_d}`.
    fn transform(&self) -> Result<TransformExpr> {
        Ok(forward_lt_d(self).into())
    }
}

impl Transformable for TransformExpr {
    fn transform(&self) -> Result<TransformExpr> {
        Ok(self.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConcatenationReport {
    pub forward: TransformExpr,
    pub inverse: CausalFunction,
    pub roundtrip: TransformExpr,
    pub passed: bool,
}

/// `L{L⁻¹{L{f}}} == L{f}` in canonical form.
pub fn concatenation_check<F: Transformable + ?Sized>(f: &F) -> Result<ConcatenationReport> {
    let forward = f.transform()?;
    let inverse = inverse_lt(&forward)?;
    let roundtrip = forward_lt(&inverse)?;
    let passed = roundtrip.approx_eq(&forward, EQ_TOL);
    Ok(ConcatenationReport { forward, inverse, roundtrip, passed })
}

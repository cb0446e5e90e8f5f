use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{close, CausalFunction, CausalTerm, Trig};
use crate::special::factorial;
use crate::{Error, Result};

/// `coeff·t^power·e^{rate·t}·trig(freq·t)` for all real `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DTerm {
    pub coeff: f64,
    pub power: u32,
    pub rate: f64,
    pub trig: Trig,
    pub freq: f64,
}

impl DTerm {
    pub fn new(coeff: f64, power: u32, rate: f64, trig: Trig, freq: f64) -> Self {
        DTerm { coeff, power, rate, trig, freq }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(c, 0, 0.0, Trig::None, 0.0)
    }

    pub fn exp(c: f64, rate: f64) -> Self {
        Self::new(c, 0, rate, Trig::None, 0.0)
    }

    pub fn cos(c: f64, freq: f64) -> Self {
        Self::new(c, 0, 0.0, Trig::Cos, freq)
    }

    pub fn sin(c: f64, freq: f64) -> Self {
        Self::new(c, 0, 0.0, Trig::Sin, freq)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeff * t.powi(self.power as i32) * (self.rate * t).exp() * self.trig.apply(self.freq * t)
    }
}

/// One complex mode `Re(c·t^k·e^{zt})`, `Im z ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Modal {
    pub c: Complex64,
    pub k: u32,
    pub z: Complex64,
}

impl Modal {
    pub fn from_parts(coeff: f64, k: u32, rate: f64, trig: Trig, freq: f64) -> Modal {
        let (c, w) = match trig {
            Trig::None => (Complex64::new(coeff, 0.0), 0.0),
            Trig::Cos => (Complex64::new(coeff, 0.0), freq),
            Trig::Sin => (Complex64::new(0.0, -coeff), freq),
        };
        Modal { c, k, z: Complex64::new(rate, w) }
    }

    /// Real terms `(coeff, k, rate, trig, freq)`; a complex mode splits into cos and sin.
    pub fn to_parts(self) -> Vec<(f64, u32, f64, Trig, f64)> {
        if self.z.im == 0.0 {
            vec![(self.c.re, self.k, self.z.re, Trig::None, 0.0)]
        } else {
            vec![
                (self.c.re, self.k, self.z.re, Trig::Cos, self.z.im),
                (-self.c.im, self.k, self.z.re, Trig::Sin, self.z.im),
            ]
        }
    }

    pub fn derivative(self) -> Vec<Modal> {
        let mut out = Vec::with_capacity(2);
        if self.k > 0 {
            out.push(Modal { c: self.c * self.k as f64, k: self.k - 1, z: self.z });
        }
        out.push(Modal { c: self.c * self.z, k: self.k, z: self.z });
        out
    }

    /// `∫ t^k e^{zt} dt = e^{zt} Σ_j (−1)^j k!/(k−j)! t^{k−j}/z^{j+1}`, no added constant.
    pub fn antiderivative(self) -> Vec<Modal> {
        if self.z == Complex64::new(0.0, 0.0) {
            return vec![Modal { c: self.c / (self.k + 1) as f64, k: self.k + 1, z: self.z }];
        }
        let kf = factorial(self.k);
        (0..=self.k)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let w = sign * kf / factorial(self.k - j);
                Modal { c: self.c * w / self.z.powu(j + 1), k: self.k - j, z: self.z }
            })
            .collect()
    }
}

pub(crate) fn merge_modes(modes: Vec<Modal>) -> Vec<Modal> {
    let mut out: Vec<Modal> = Vec::new();
    for m in modes {
        let m = if m.z.im == 0.0 { Modal { c: Complex64::new(m.c.re, 0.0), ..m } } else { m };
        match out.iter_mut().find(|o| o.k == m.k && close(o.z.re, m.z.re) && close(o.z.im, m.z.im)) {
            Some(o) => o.c += m.c,
            None => out.push(m),
        }
    }
    out
}

/// A bilateral modal function, ordinarily derivable everywhere.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DFunction {
    terms: Vec<DTerm>,
}

impl DFunction {
    /// Normalizes: like terms merged, zero terms dropped, canonical order.
    pub fn new(terms: Vec<DTerm>) -> Self {
        let modes = terms.into_iter().map(|t| Modal::from_parts(t.coeff, t.power, t.rate, t.trig, t.freq)).collect();
        Self::from_modes(modes)
    }

    pub fn try_new(terms: Vec<DTerm>) -> Result<Self> {
        for t in &terms {
            if ![t.coeff, t.rate, t.freq].iter().all(|x| x.is_finite()) || t.freq < 0.0 {
                return Err(Error::invalid("d-function terms need finite parameters and non-negative frequency"));
            }
        }
        Ok(Self::new(terms))
    }

    pub(crate) fn from_modes(modes: Vec<Modal>) -> Self {
        let mut terms: Vec<DTerm> = Vec::new();
        for m in merge_modes(modes) {
            for (coeff, k, rate, trig, freq) in m.to_parts() {
                if coeff != 0.0 {
                    terms.push(DTerm { coeff, power: k, rate, trig, freq });
                }
            }
        }
        terms.sort_by(|a, b| {
            a.power
                .cmp(&b.power)
                .then(a.rate.total_cmp(&b.rate))
                .then(a.trig.cmp(&b.trig))
                .then(a.freq.total_cmp(&b.freq))
        });
        DFunction { terms }
    }

    pub(crate) fn modes(&self) -> Vec<Modal> {
        merge_modes(self.terms.iter().map(|t| Modal::from_parts(t.coeff, t.power, t.rate, t.trig, t.freq)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![DTerm::constant(c)])
    }

    pub fn terms(&self) -> &[DTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|x| x.eval(t)).sum()
    }

    pub fn add(&self, other: &DFunction) -> DFunction {
        DFunction::new(self.terms.iter().chain(&other.terms).copied().collect())
    }

    pub fn scale(&self, c: f64) -> DFunction {
        DFunction::new(self.terms.iter().map(|t| DTerm { coeff: t.coeff * c, ..*t }).collect())
    }

    pub fn derivative(&self) -> DFunction {
        Self::from_modes(self.modes().into_iter().flat_map(Modal::derivative).collect())
    }

    pub fn derivative_n(&self, n: u32) -> DFunction {
        (0..n).fold(self.clone(), |f, _| f.derivative())
    }

    /// Antiderivative without an added constant: each mode `t^k e^{zt}` maps to the
    /// modal expansion of its indefinite integral, and `t^k` to `t^{k+1}/(k+1)`.
    pub fn antiderivative(&self) -> DFunction {
        Self::from_modes(self.modes().into_iter().flat_map(Modal::antiderivative).collect())
    }

    pub fn antiderivative_n(&self, n: u32) -> DFunction {
        (0..n).fold(self.clone(), |f, _| f.antiderivative())
    }

    /// `f⁽ᵛ⁾(0)` in closed form.
    pub fn derivative_at_zero(&self, nu: u32) -> f64 {
        self.derivative_n(nu).eval(0.0)
    }

    /// `u(t)·f_d(t)`
    pub fn to_causal(&self) -> CausalFunction {
        let terms =
            self.terms.iter().map(|t| CausalTerm::new(t.coeff, t.power as f64, t.rate, t.trig, t.freq)).collect();
        CausalFunction::from_terms(terms).expect("modal terms are always transformable")
    }
}

impl fmt::Display for DFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::dfunction_to_lines(self))
    }
}

impl FromStr for DFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::text::dfunction_from_lines(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_damped_cosine() {
        // d/dt e^{−t} cos 2t = −e^{−t} cos 2t − 2 e^{−t} sin 2t
        let f = DFunction::new(vec![DTerm::new(1.0, 0, -1.0, Trig::Cos, 2.0)]);
        let d = f.derivative();
        for t in [-1.0f64, 0.3, 2.0] {
            let expected = -(-t).exp() * (2.0 * t).cos() - 2.0 * (-t).exp() * (2.0 * t).sin();
            assert!((d.eval(t) - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn antiderivative_roundtrip() {
        let f = DFunction::new(vec![
            DTerm::new(2.0, 2, -0.5, Trig::Sin, 3.0),
            DTerm::new(-1.0, 1, 0.0, Trig::None, 0.0),
            DTerm::exp(4.0, 1.5),
        ]);
        let back = f.antiderivative().derivative();
        for t in [-2.0, -0.1, 0.0, 1.3, 4.0] {
            assert!((back.eval(t) - f.eval(t)).abs() < 1e-12 * (1.0 + f.eval(t).abs()));
        }
    }

    #[test]
    fn convention_has_no_constant() {
        // ∫cos ωt = sin(ωt)/ω, which vanishes at 0
        let f = DFunction::new(vec![DTerm::cos(1.0, 2.0)]);
        let a = f.antiderivative();
        assert_eq!(a.terms().len(), 1);
        assert_eq!(a.terms()[0].trig, Trig::Sin);
        assert!((a.terms()[0].coeff - 0.5).abs() < 1e-15);
        // ∫e^{−at} = −e^{−at}/a
        let g = DFunction::new(vec![DTerm::exp(1.0, -2.0)]).antiderivative();
        assert_eq!(g.terms(), &[DTerm::exp(-0.5, -2.0)]);
    }

    #[test]
    fn initial_values() {
        let f = DFunction::new(vec![DTerm::sin(1.0, 3.0)]);
        assert_eq!(f.derivative_at_zero(0), 0.0);
        assert!((f.derivative_at_zero(1) - 3.0).abs() < 1e-15);
        assert!((f.derivative_at_zero(3) + 27.0).abs() < 1e-12);
    }
}

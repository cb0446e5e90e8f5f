//! Real polynomials and rational functions of the transform variable `s`.
//!
//! Coefficients are stored in ascending powers of `s`. Rational functions are
//! kept with a monic denominator; common factors are cancelled on request by
//! [`RationalLT::reduce`] rather than eagerly, because exact cancellation is
//! only possible to within the root-finding tolerance.

mod partial;
mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

pub use partial::{partial_fractions, PartialFractions, PoleTerm};
pub use roots::{find_roots, find_roots_with, Root, RootConfig, RootKind, RootSet};

/// Real polynomial in `s`, coefficients ascending. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `c·s^k`
    pub fn monomial(k: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The monic polynomial `Π (s − r)` over real roots.
    pub fn from_real_roots(roots: &[f64]) -> Self {
        roots.iter().fold(Self::one(), |acc, &r| &acc * &Self::new(vec![-r, 1.0]))
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect())
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `s^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0.0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Number of exact zero roots (lowest nonzero coefficient index).
    pub fn zero_root_count(&self) -> usize {
        self.coeffs.iter().take_while(|c| **c == 0.0).count()
    }

    /// Euclidean division: `self == q·den + r` with `deg r < deg den`.
    pub fn divmod(&self, den: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = den.degree().ok_or(Error::ZeroDivisor)?;
        let nd = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Ok((Self::zero(), self.clone())),
        };
        let lead = den.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, d) in den.coeffs.iter().enumerate() {
                rem[k + j] -= q * d;
            }
            rem[k + dd] = 0.0;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Coefficient-wise comparison relative to the larger coefficient magnitude.
    pub fn approx_eq(&self, other: &Polynomial, rel: f64) -> bool {
        let scale = self.max_abs().max(other.max_abs());
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| (self.coeff(k) - other.coeff(k)).abs() <= rel * scale)
    }

    /// Drop trailing coefficients whose magnitude is below `rel` times the largest one.
    pub fn trim(&self, rel: f64) -> Self {
        let cut = rel * self.max_abs();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.abs() <= cut) {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    pub(crate) fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect()
    }
}

impl From<Vec<f64>> for Polynomial {
    fn from(coeffs: Vec<f64>) -> Self {
        Self::new(coeffs)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: PolyOp) -> Polynomial {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::render_polynomial(self, "s"))
    }
}

/// A rational function `num(s)/den(s)·e^{−s·delay}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalLT {
    num: Polynomial,
    den: Polynomial,
    delay: f64,
}

impl RationalLT {
    /// Builds `num/den` with the denominator scaled to be monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let lead = den.leading();
        Ok(RationalLT { num: num.scale(1.0 / lead), den: den.scale(1.0 / lead), delay: 0.0 })
    }

    pub fn from_coeffs(num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        Self::new(Polynomial::new(num), Polynomial::new(den))
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalLT { num: p, den: Polynomial::one(), delay: 0.0 }
    }

    pub fn zero() -> Self {
        Self::polynomial(Polynomial::zero())
    }

    /// `c/s^k` (or `c·s^{−k}` for negative `k`, i.e. `c·s^{|k|}`).
    pub fn power_of_s(k: i32, c: f64) -> Self {
        if k >= 0 {
            RationalLT { num: Polynomial::constant(c), den: Polynomial::monomial(k as usize, 1.0), delay: 0.0 }
        } else {
            Self::polynomial(Polynomial::monomial((-k) as usize, c))
        }
    }

    pub fn with_delay(mut self, delay: f64) -> Result<Self> {
        if delay < 0.0 || !delay.is_finite() {
            return Err(Error::NegativeDelay(delay));
        }
        self.delay = delay;
        Ok(self)
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn delay(&self) -> f64 {
        self.delay
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_proper(&self) -> bool {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => true,
            (Some(n), Some(d)) => n < d,
            _ => false,
        }
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        let v = self.num.eval_complex(s) / self.den.eval_complex(s);
        if self.delay == 0.0 {
            v
        } else {
            v * (-s * self.delay).exp()
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        RationalLT { num: self.num.scale(c), den: self.den.clone(), delay: self.delay }
    }

    /// Sum of two rationals with the same delay.
    pub fn add(&self, other: &RationalLT) -> Result<Self> {
        if (self.delay - other.delay).abs() > 1e-12 {
            return Err(Error::invalid("cannot add rational transforms with different delays"));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let mut out = if self.den == other.den {
            RationalLT { num: &self.num + &other.num, den: self.den.clone(), delay: self.delay }
        } else {
            RationalLT {
                num: &(&self.num * &other.den) + &(&other.num * &self.den),
                den: &self.den * &other.den,
                delay: self.delay,
            }
        };
        if out.num.is_zero() {
            out.den = Polynomial::one();
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RationalLT) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    /// Product; delays add.
    pub fn mul(&self, other: &RationalLT) -> Self {
        RationalLT { num: &self.num * &other.num, den: &self.den * &other.den, delay: self.delay + other.delay }
    }

    /// Multiply by `s^k`, `k` of either sign.
    pub fn mul_s_power(&self, k: i32) -> Self {
        if k >= 0 {
            RationalLT { num: self.num.shift_up(k as usize), den: self.den.clone(), delay: self.delay }
        } else {
            RationalLT { num: self.num.clone(), den: self.den.shift_up((-k) as usize), delay: self.delay }
        }
    }

    /// Cancels factors common to numerator and denominator, located through the
    /// denominator's roots and accepted when the numerator vanishes there to
    /// within `tol` relative to its coefficient scale.
    pub fn reduce(&self, tol: f64) -> Result<Self> {
        if self.num.is_zero() {
            return Ok(RationalLT { num: Polynomial::zero(), den: Polynomial::one(), delay: self.delay });
        }
        if self.den.degree() == Some(0) {
            return Ok(self.clone());
        }
        let roots = find_roots(&self.den)?;
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for root in roots.roots() {
            let factor = root.factor();
            for _ in 0..root.multiplicity {
                if num.degree().unwrap_or(0) < factor.degree().unwrap_or(0) {
                    break;
                }
                let z = root.representative();
                let scale: f64 = num.coeffs().iter().enumerate().map(|(k, c)| c.abs() * z.norm().powi(k as i32)).sum();
                if num.eval_complex(z).norm() > tol * scale {
                    break;
                }
                num = num.divmod(&factor)?.0;
                den = den.divmod(&factor)?.0;
            }
        }
        let mut out = RationalLT::new(num, den)?;
        out.delay = self.delay;
        Ok(out)
    }

    /// Equality as rational functions, by cross-multiplication, to `rel`
    /// relative to the size of the cross products.
    pub fn approx_eq(&self, other: &RationalLT, rel: f64) -> bool {
        if (self.delay - other.delay).abs() > 1e-12 * (1.0 + self.delay.abs()) {
            return self.is_zero() && other.is_zero();
        }
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        let scale = lhs.max_abs().max(rhs.max_abs());
        let diff = &lhs - &rhs;
        diff.max_abs() <= rel * scale || scale == 0.0
    }
}

impl fmt::Display for RationalLT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::render_rational(self))
    }
}

/// Complex polynomial helpers (ascending coefficients).
pub(crate) mod cpoly {
    use num_complex::Complex64;

    pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// `(s − root)^m`
    pub fn root_power(root: Complex64, m: usize) -> Vec<Complex64> {
        let lin = [-root, Complex64::new(1.0, 0.0)];
        (0..m).fold(vec![Complex64::new(1.0, 0.0)], |acc, _| mul(&acc, &lin))
    }

    /// Coefficients of `p(center + h)` as a polynomial in `h`.
    pub fn taylor_shift(p: &[Complex64], center: Complex64) -> Vec<Complex64> {
        let mut c = p.to_vec();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = c[j + 1];
                c[j] += center * next;
            }
        }
        c
    }

    #[cfg(test)]
    pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
        p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec())
    }

    #[test]
    fn difference_of_squares() {
        let r = poly_arith(&p(&[1.0, 1.0]), &p(&[1.0, -1.0]), PolyOp::Mul);
        assert_eq!(r, p(&[1.0, 0.0, -1.0]));
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let w2 = p(&[4.0, 0.0, 1.0]);
        assert_eq!(poly_arith(&w2, &Polynomial::zero(), PolyOp::Add), w2);
        assert!(poly_arith(&w2, &w2, PolyOp::Sub).is_zero());
    }

    #[test]
    fn product_matches_corrsinsol_denominator() {
        // (s + a)(s² + ω²) with a = 1, ω = 2
        let d = &p(&[1.0, 1.0]) * &p(&[4.0, 0.0, 1.0]);
        assert_eq!(d, p(&[4.0, 4.0, 1.0, 1.0]));
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = p(&[0.0, 0.0, 1.0]).divmod(&p(&[4.0, 0.0, 1.0])).unwrap();
        assert_eq!(q, p(&[1.0]));
        assert_eq!(r, p(&[-4.0]));

        let (q, r) = p(&[1.0, 1.0]).divmod(&p(&[1.0, 1.0])).unwrap();
        assert_eq!(q, p(&[1.0]));
        assert!(r.is_zero());

        // s³/(s+1) = s² − s + 1 remainder −1, by hand
        let (q, r) = p(&[0.0, 0.0, 0.0, 1.0]).divmod(&p(&[1.0, 1.0])).unwrap();
        assert_eq!(q, p(&[1.0, -1.0, 1.0]));
        assert_eq!(r, p(&[-1.0]));

        assert_eq!(p(&[1.0]).divmod(&Polynomial::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn rational_is_monic_and_rejects_zero_denominator() {
        let r = RationalLT::from_coeffs(vec![2.0], vec![4.0, 2.0]).unwrap();
        assert_eq!(r.den().coeffs(), &[2.0, 1.0]);
        assert_eq!(r.num().coeffs(), &[1.0]);
        assert!(RationalLT::from_coeffs(vec![1.0], vec![]).is_err());
        assert!(RationalLT::zero().with_delay(-1.0).is_err());
    }

    #[test]
    fn reduce_cancels_common_root() {
        // s/(s(s+3)) → 1/(s+3)
        let r = RationalLT::from_coeffs(vec![0.0, 1.0], vec![0.0, 3.0, 1.0]).unwrap();
        let red = r.reduce(1e-9).unwrap();
        assert_eq!(red.den().degree(), Some(1));
        assert!(red.approx_eq(&RationalLT::from_coeffs(vec![1.0], vec![3.0, 1.0]).unwrap(), 1e-12));
        // complex pair: (s²+4)/((s²+4)(s+1))
        let r = RationalLT::new(p(&[4.0, 0.0, 1.0]), &p(&[4.0, 0.0, 1.0]) * &p(&[1.0, 1.0])).unwrap();
        assert_eq!(r.reduce(1e-9).unwrap().den().degree(), Some(1));
    }

    #[test]
    fn approx_eq_ignores_common_factors() {
        let a = RationalLT::from_coeffs(vec![1.0], vec![1.0, 1.0]).unwrap();
        let b = RationalLT::from_coeffs(vec![2.0, 1.0], vec![2.0, 3.0, 1.0]).unwrap();
        assert!(a.approx_eq(&b, 1e-12));
        assert!(!a.approx_eq(&RationalLT::from_coeffs(vec![1.0], vec![2.0, 1.0]).unwrap(), 1e-6));
    }

    #[test]
    fn taylor_shift_matches_direct_evaluation() {
        let q = p(&[1.0, -2.0, 0.5, 3.0]).to_complex();
        let c = Complex64::new(0.3, -1.2);
        let shifted = cpoly::taylor_shift(&q, c);
        let h = Complex64::new(0.7, 0.1);
        let a = cpoly::eval(&shifted, h);
        let b = cpoly::eval(&q, c + h);
        assert!((a - b).norm() < 1e-12);
    }
}

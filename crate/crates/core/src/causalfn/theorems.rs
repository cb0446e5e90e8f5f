use super::{CausalFunction, CausalTerm, DFunction, DTerm, ImpulseTerm};
use crate::ltransform::forward_lt_d;
use crate::polyalg::{Polynomial, RationalLT};
use crate::special::{factorial, gamma};
use crate::{Error, Result};

/// `u(t)·f(t)` for an already causal `f`: the unit step is redundant, impulses included.
pub fn mul_unit_step(f: &CausalFunction) -> CausalFunction {
    f.clone()
}

/// `[u f_d]⁽ⁿ⁾ = u·f_d⁽ⁿ⁾ + Σ_{ν<n} f_d⁽ⁿ⁻¹⁻ν⁾(0)·δ⁽ν⁾`
pub fn dud(fd: &DFunction, n: u32) -> CausalFunction {
    let smooth = fd.derivative_n(n).to_causal();
    let impulses: Vec<ImpulseTerm> = (0..n).map(|nu| ImpulseTerm::new(fd.derivative_at_zero(n - 1 - nu), nu)).collect();
    smooth.add(&CausalFunction::normalized(Vec::new(), impulses, Vec::new()))
}

/// `[u f_d]⁽⁻ⁿ⁾ = u·f_d⁽⁻ⁿ⁾ − u·Σ_{ν<n} f_d⁽⁻ⁿ⁺ν⁾(0)·t^ν/ν!`
///
/// `f_d⁽⁻ⁿ⁾` is the repeated antiderivative of [`DFunction::antiderivative`], which adds
/// no integration constants; the correction sum then carries all initial-value content,
/// so the result is independent of that choice.
pub fn iud(fd: &DFunction, n: u32) -> CausalFunction {
    let anti = fd.antiderivative_n(n);
    let correction: Vec<DTerm> = (0..n)
        .map(|nu| DTerm::new(-anti.derivative_at_zero(nu) / factorial(nu), nu, 0.0, super::Trig::None, 0.0))
        .collect();
    anti.add(&DFunction::new(correction)).to_causal()
}

fn term_dfunction(t: &CausalTerm) -> DFunction {
    DFunction::new(vec![DTerm::new(t.coeff, t.power as u32, t.rate, t.trig, t.freq)])
}

/// `n`-th derivative in the generalized sense: term-wise dud-theorem, impulse orders raised.
pub fn derivative_primary(f: &CausalFunction, n: u32) -> Result<CausalFunction> {
    if let Some(s) = f.specials().first() {
        return Err(Error::unsupported(format!(
            "{} term has no modal derivative; use fractional::gdi_apply",
            s.kind.name()
        )));
    }
    let mut out = CausalFunction::zero();
    for t in f.terms() {
        if !t.has_integer_power() {
            return Err(Error::unsupported(format!(
                "t^{} is not an integer power; use fractional::gdi_apply",
                t.power
            )));
        }
        out = out.add(&dud(&term_dfunction(t), n).shift(t.delay)?);
    }
    let impulses = f.impulses().iter().map(|i| ImpulseTerm { order: i.order + n, ..*i }).collect();
    Ok(out.add(&CausalFunction::normalized(Vec::new(), impulses, Vec::new())))
}

/// `n`-fold integral `∫₀ᵗ…`: iud-theorem on modal terms, `t^r → Γ(r+1)/Γ(r+n+1)·t^{r+n}`
/// on plain powers, `δ⁽ᵏ⁾ → δ⁽ᵏ⁻ⁿ⁾` or `u·t^{n−k−1}/(n−k−1)!`.
pub fn integral_primary(f: &CausalFunction, n: u32) -> Result<CausalFunction> {
    if let Some(s) = f.specials().first() {
        return Err(Error::unsupported(format!(
            "{} term has no closed-form integral in the table; use fractional::gdi_apply",
            s.kind.name()
        )));
    }
    let mut out = CausalFunction::zero();
    for t in f.terms() {
        let part = if t.has_integer_power() {
            iud(&term_dfunction(t), n)
        } else if t.rate == 0.0 && t.trig == super::Trig::None {
            let c = t.coeff * gamma(t.power + 1.0) / gamma(t.power + n as f64 + 1.0);
            CausalFunction::from_term(CausalTerm::power(c, t.power + n as f64))?
        } else {
            return Err(Error::unsupported(format!(
                "t^{}·e^{{{}t}} with trig factor has no closed-form integral",
                t.power, t.rate
            )));
        };
        out = out.add(&part.shift(t.delay)?);
    }
    let mut impulses = Vec::new();
    let mut terms = Vec::new();
    for i in f.impulses() {
        if i.order >= n {
            impulses.push(ImpulseTerm { order: i.order - n, ..*i });
        } else {
            let k = n - i.order - 1;
            terms.push(CausalTerm::power(i.coeff / factorial(k), k as f64).with_delay(i.delay));
        }
    }
    Ok(out.add(&CausalFunction::new(terms, impulses, Vec::new())?))
}

/// `s^n·L{f_d} − Σ_{ν<n} f_d⁽ⁿ⁻¹⁻ν⁾(0)·s^ν`
pub fn secondary_derivation_lt(fd: &DFunction, n: u32) -> RationalLT {
    let correction: Vec<f64> = (0..n).map(|nu| fd.derivative_at_zero(n - 1 - nu)).collect();
    forward_lt_d(fd)
        .mul_s_power(n as i32)
        .sub(&RationalLT::polynomial(Polynomial::new(correction)))
        .expect("undelayed operands")
}

/// `s^{−n}·L{f_d} + Σ_{ν<n} f_d⁽⁻ⁿ⁺ν⁾(0)·s^{−ν−1}` with the initial values of the
/// antiderivative convention used by [`iud`].
pub fn secondary_integration_lt(fd: &DFunction, n: u32) -> RationalLT {
    let anti = fd.antiderivative_n(n);
    let init: Vec<f64> = (0..n).map(|nu| anti.derivative_at_zero(nu)).collect();
    secondary_integration_lt_with(fd, n, &init).expect("length matches")
}

/// As [`secondary_integration_lt`] with caller-supplied `init[ν] = f_d⁽⁻ⁿ⁺ν⁾(0)`.
pub fn secondary_integration_lt_with(fd: &DFunction, n: u32, init: &[f64]) -> Result<RationalLT> {
    if init.len() != n as usize {
        return Err(Error::invalid(format!("expected {n} initial values, got {}", init.len())));
    }
    let mut out = forward_lt_d(fd).mul_s_power(-(n as i32));
    for (nu, &v) in init.iter().enumerate() {
        out = out.add(&RationalLT::power_of_s(nu as i32 + 1, v))?;
    }
    Ok(out)
}

/// Whether `u(t)·f(t) = f(t)` for every `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Consistency {
    Consistent,
    /// A `t < 0` where `f(t) ≠ 0`.
    Inconsistent {
        witness: f64,
    },
}

impl Consistency {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Consistency::Consistent)
    }
}

pub trait LtConsistency {
    fn lt_consistency(&self) -> Consistency;
}

impl LtConsistency for CausalFunction {
    /// Delays are non-negative by construction, so every causal function qualifies.
    fn lt_consistency(&self) -> Consistency {
        Consistency::Consistent
    }
}

impl LtConsistency for DFunction {
    fn lt_consistency(&self) -> Consistency {
        if self.is_zero() {
            return Consistency::Consistent;
        }
        let trig = self.terms().iter().find(|t| t.freq > 0.0).map(|t| -std::f64::consts::PI / t.freq);
        let fixed = [-1.0, -0.5, -2.0, -0.25, -3.0, -0.1];
        let scan = (1..2000).map(|k| -0.0137 * k as f64);
        trig.into_iter()
            .chain(fixed)
            .chain(scan)
            .find(|&t| self.eval(t).abs() > 1e-12)
            .map_or(Consistency::Consistent, |witness| Consistency::Inconsistent { witness })
    }
}

pub fn is_lt_consistent<F: LtConsistency + ?Sized>(f: &F) -> Consistency {
    f.lt_consistency()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causalfn::Trig;

    fn impulse(c: f64, n: u32) -> ImpulseTerm {
        ImpulseTerm::new(c, n)
    }

    #[test]
    fn dud_of_cosine() {
        let w = 2.0;
        let r = dud(&DFunction::new(vec![DTerm::cos(1.0, w)]), 1);
        assert_eq!(r.terms(), &[CausalTerm::sin(-w, w)]);
        assert_eq!(r.impulses(), &[impulse(1.0, 0)]);
    }

    #[test]
    fn dud_of_constant_and_sine() {
        let r = dud(&DFunction::constant(1.0), 1);
        assert!(r.terms().is_empty());
        assert_eq!(r.impulses(), &[impulse(1.0, 0)]);
        let r = dud(&DFunction::new(vec![DTerm::sin(1.0, 3.0)]), 1);
        assert_eq!(r.terms(), &[CausalTerm::cos(3.0, 3.0)]);
        assert!(r.impulses().is_empty());
    }

    #[test]
    fn iud_examples() {
        let a = 2.0;
        let r = iud(&DFunction::new(vec![DTerm::exp(1.0, -a)]), 1);
        let expected =
            CausalFunction::from_terms(vec![CausalTerm::exp(-1.0 / a, -a), CausalTerm::step(1.0 / a)]).unwrap();
        assert_eq!(r, expected);
        assert!(iud(&DFunction::zero(), 3).is_zero());
        let r = iud(&DFunction::new(vec![DTerm::cos(1.0, 4.0)]), 1);
        assert_eq!(r.terms(), &[CausalTerm::sin(0.25, 4.0)]);
    }

    #[test]
    fn primary_derivatives() {
        let u = CausalFunction::unit_step();
        assert_eq!(derivative_primary(&u, 1).unwrap(), CausalFunction::impulse(0));
        assert_eq!(derivative_primary(&CausalFunction::impulse(0), 1).unwrap(), CausalFunction::impulse(1));
        let c = CausalFunction::from_term(CausalTerm::cos(1.0, 2.0)).unwrap();
        let d = derivative_primary(&c, 1).unwrap();
        assert_eq!(d.impulses(), &[impulse(1.0, 0)]);
        assert_eq!(d.terms(), &[CausalTerm::sin(-2.0, 2.0)]);
        let root = CausalFunction::from_term(CausalTerm::power(1.0, 0.5)).unwrap();
        assert!(matches!(derivative_primary(&root, 1), Err(Error::UnsupportedTerm(_))));
    }

    #[test]
    fn primary_integrals() {
        let u = CausalFunction::unit_step();
        assert_eq!(integral_primary(&CausalFunction::impulse(0), 1).unwrap(), u);
        assert_eq!(integral_primary(&u, 1).unwrap(), CausalFunction::from_term(CausalTerm::power(1.0, 1.0)).unwrap());
        let a = 3.0;
        let e = CausalFunction::from_term(CausalTerm::exp(1.0, -a)).unwrap();
        let expected =
            CausalFunction::from_terms(vec![CausalTerm::step(1.0 / a), CausalTerm::exp(-1.0 / a, -a)]).unwrap();
        assert_eq!(integral_primary(&e, 1).unwrap(), expected);
        // u/√t integrates to 2√t
        let h = CausalFunction::from_term(CausalTerm::power(1.0, -0.5)).unwrap();
        let r = integral_primary(&h, 1).unwrap();
        assert!((r.terms()[0].coeff - 2.0).abs() < 1e-14);
        assert_eq!(r.terms()[0].power, 0.5);
    }

    #[test]
    fn delayed_terms_keep_their_delay() {
        let f = CausalFunction::unit_step().shift(1.0).unwrap();
        let d = derivative_primary(&f, 1).unwrap();
        assert_eq!(d.impulses(), &[impulse(1.0, 0).with_delay(1.0)]);
    }

    #[test]
    fn consistency_witnesses() {
        let c = CausalFunction::from_term(CausalTerm::cos(1.0, 2.0)).unwrap();
        assert!(is_lt_consistent(&c).is_consistent());
        let d = DFunction::new(vec![DTerm::cos(1.0, 2.0)]);
        assert_eq!(is_lt_consistent(&d), Consistency::Inconsistent { witness: -std::f64::consts::PI / 2.0 });
        assert!(is_lt_consistent(&DFunction::zero()).is_consistent());
        assert!(is_lt_consistent(&CausalFunction::zero()).is_consistent());
    }

    #[test]
    fn secondary_derivation_examples() {
        let a = 2.0;
        let fd = DFunction::new(vec![DTerm::exp(1.0, -a)]);
        let r = secondary_derivation_lt(&fd, 1);
        let expected = RationalLT::from_coeffs(vec![-a], vec![a, 1.0]).unwrap();
        assert!(r.approx_eq(&expected, 1e-14));
        assert!(secondary_derivation_lt(&DFunction::constant(1.0), 1).is_zero());
        let s = DFunction::new(vec![DTerm::new(1.0, 3, 0.0, Trig::None, 0.0)]);
        let r = secondary_derivation_lt(&s, 2);
        assert!(r.approx_eq(&forward_lt_d(&s).mul_s_power(2), 1e-14));
    }

    #[test]
    fn secondary_integration_examples() {
        let a = 2.0;
        let fd = DFunction::new(vec![DTerm::exp(1.0, -a)]);
        // f_d⁽⁻¹⁾ = −e^{−at}/a, so L{u f_d⁽⁻¹⁾} = −1/(a(s+a))
        let r = secondary_integration_lt_with(&fd, 1, &[-1.0 / a]).unwrap();
        let expected = RationalLT::from_coeffs(vec![-1.0 / a], vec![a, 1.0]).unwrap();
        assert!(r.approx_eq(&expected, 1e-14));
        assert!(secondary_integration_lt(&fd, 1).approx_eq(&expected, 1e-14));
        assert!(secondary_integration_lt(&DFunction::zero(), 2).is_zero());
    }
}

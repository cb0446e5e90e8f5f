use num_complex::Complex64;

use super::{RationalPart, SpecialTransform, TableRow, TransformExpr};
use crate::causalfn::{CausalFunction, CausalTerm, ImpulseTerm, SpecialKind, SpecialTerm, Trig};
use crate::polyalg::{partial_fractions, PartialFractions, RationalLT};
use crate::special::{factorial, gamma, rgamma};
use crate::{Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;
const LN4: f64 = std::f64::consts::LN_2 * 2.0;

/// `L⁻¹{F}`: partial fractions for the rational parts, table lookup for the special
/// images. Real powers of `s` are resolved only where the product is again a
/// table row; anything else is an [`Error::UnsupportedTerm`].
pub fn inverse_lt(f: &TransformExpr) -> Result<CausalFunction> {
    let mut out = CausalFunction::zero();
    for part in f.rational_parts() {
        let g =
            if part.s_power == 0.0 { inverse_rational(&part.rational)? } else { inverse_fractional_rational(part)? };
        out = out.add(&g.shift(part.delay)?);
    }
    for s in f.special_terms() {
        out = out.add(&inverse_special(s)?.shift(s.delay)?);
    }
    Ok(out)
}

/// Inverse of an undelayed rational; the polynomial part yields impulses and conjugate
/// pole pairs recombine into real cos/sin terms.
pub fn inverse_rational(r: &RationalLT) -> Result<CausalFunction> {
    if r.delay() != 0.0 {
        let undelayed = r.clone().with_delay(0.0)?;
        return inverse_rational(&undelayed)?.shift(r.delay());
    }
    if r.is_zero() {
        return Ok(CausalFunction::zero());
    }
    from_partial_fractions(&partial_fractions(r)?)
}

/// Time-domain image of an (undelayed) partial-fraction expansion.
pub(crate) fn from_partial_fractions(pf: &PartialFractions) -> Result<CausalFunction> {
    let impulses: Vec<ImpulseTerm> =
        pf.impulse_part.coeffs().iter().enumerate().map(|(n, &c)| ImpulseTerm::new(c, n as u32)).collect();
    let mut terms = Vec::new();
    for t in &pf.terms {
        let root = snap(t.root);
        let k = (t.order - 1) as f64;
        let kf = factorial(t.order as u32 - 1);
        if root.im == 0.0 {
            terms.push(CausalTerm::new(t.residue.re / kf, k, root.re, Trig::None, 0.0));
        } else if root.im > 0.0 {
            // 2·Re(res·t^k e^{ρt})/k!
            let (cos, sin) = (2.0 * t.residue.re / kf, -2.0 * t.residue.im / kf);
            let scale = cos.abs().max(sin.abs());
            if cos.abs() > 1e-14 * scale {
                terms.push(CausalTerm::new(cos, k, root.re, Trig::Cos, root.im));
            }
            if sin.abs() > 1e-14 * scale {
                terms.push(CausalTerm::new(sin, k, root.re, Trig::Sin, root.im));
            }
        }
    }
    CausalFunction::new(terms, impulses, Vec::new())
}

fn snap(z: Complex64) -> Complex64 {
    let tol = 1e-14 * z.norm().max(1.0);
    let fix = |x: f64| if x.abs() <= tol { 0.0 } else { x };
    Complex64::new(fix(z.re), fix(z.im))
}

/// `c·s^β` as a causal function: `t^{−β−1}/Γ(−β)` for `β < 0`, `δ⁽ᵝ⁾` for integer `β ≥ 0`.
fn power_of_s(c: f64, beta: f64) -> Result<CausalFunction> {
    if beta < 0.0 {
        let r = -beta - 1.0;
        if r <= -1.0 {
            unreachable!("β < 0 gives r > −1");
        }
        CausalFunction::from_term(CausalTerm::power(c * rgamma(-beta), r))
    } else if beta.fract() == 0.0 {
        Ok(CausalFunction::new(Vec::new(), vec![ImpulseTerm::new(c, beta as u32)], Vec::new())?)
    } else {
        Err(Error::unsupported(format!("s^{beta} has no causal table row")))
    }
}

/// `s^α·R(s)` for non-integer `α`, through partial fractions of `R`:
/// poles at 0 and the polynomial part give powers of `s`; simple real poles `p`
/// give `√s/(s−p) = 1/√s + p/((s−p)√s)` and `1/((s−p)√s)` for `α = ±1/2`.
fn inverse_fractional_rational(part: &RationalPart) -> Result<CausalFunction> {
    let alpha = part.s_power;
    let pf = partial_fractions(&part.rational)?;
    let mut out = CausalFunction::zero();
    for (k, &c) in pf.impulse_part.coeffs().iter().enumerate() {
        if c != 0.0 {
            out = out.add(&power_of_s(c, k as f64 + alpha)?);
        }
    }
    for t in &pf.terms {
        let root = snap(t.root);
        if root == Complex64::new(0.0, 0.0) {
            out = out.add(&power_of_s(t.residue.re, alpha - t.order as f64)?);
            continue;
        }
        let supported = root.im == 0.0 && t.order == 1 && (alpha == 0.5 || alpha == -0.5);
        if !supported {
            return Err(Error::unsupported(format!(
                "s^{alpha} times a pole of order {} at {root} has no table row",
                t.order
            )));
        }
        let (c, p) = (t.residue.re, root.re);
        let erf_row = CausalFunction::from_special(SpecialTerm::new(SpecialKind::ExpErf, p, 1.0))?;
        let g = if alpha == 0.5 { power_of_s(c, -0.5)?.add(&erf_row.scale(c * p)) } else { erf_row.scale(c) };
        out = out.add(&g);
    }
    Ok(out)
}

fn special(kind: SpecialKind, a: f64, c: f64) -> Result<CausalFunction> {
    CausalFunction::from_special(SpecialTerm::new(kind, a, c))
}

/// Table lookup for `coeff·s^α·image(s)`.
fn inverse_special(sp: &SpecialTransform) -> Result<CausalFunction> {
    let (a, c, alpha) = (sp.param, sp.coeff, sp.s_power);
    let unsupported =
        || Err(Error::unsupported(format!("s^{alpha} times the {} image has no table row", sp.row.name())));
    let kind = match sp.row {
        TableRow::Power => {
            // s^α·Γ(r+1)/s^{r+1} = Γ(r+1)·s^{−(r−α)−1}
            return power_of_s(c * gamma(a + 1.0), alpha - a - 1.0);
        }
        TableRow::Special(kind) => kind,
    };
    if alpha == 0.0 {
        return special(kind, a, c);
    }
    match (kind, alpha) {
        // √s/((s−a)√s) = 1/(s−a)
        (SpecialKind::ExpErf, x) if x == 0.5 => CausalFunction::from_term(CausalTerm::exp(c, a)),
        (SpecialKind::ExpErf, x) if x == -0.5 => {
            inverse_rational(&RationalLT::from_coeffs(vec![c], vec![0.0, -a, 1.0])?)
        }
        // s/((s−a)√s) = 1/√s + a/((s−a)√s)
        (SpecialKind::ExpErf, x) if x == 1.0 => Ok(power_of_s(c, -0.5)?.add(&special(kind, a, c * a)?)),
        // (−ln s − C)/√s = (1/√π)·L{ln t/√t} + ln 4/√s
        (SpecialKind::Log, x) if x == 0.5 => {
            Ok(special(SpecialKind::LogOverSqrt, 0.0, c / SQRT_PI)?.add(&power_of_s(c * LN4, -0.5)?))
        }
        // −√π(ln 4s + C)/s = √π(−ln s − C)/s − √π ln 4/s
        (SpecialKind::LogOverSqrt, x) if x == -0.5 => {
            Ok(special(SpecialKind::Log, 0.0, c * SQRT_PI)?.add(&power_of_s(-c * SQRT_PI * LN4, -1.0)?))
        }
        // e^{−a√s} = image of gauss_b / 2√π; at a = 0 it is δ
        (SpecialKind::GaussKernelA, x) if x == 0.5 => {
            if a == 0.0 {
                power_of_s(c, 0.0)
            } else {
                special(SpecialKind::GaussKernelB, a, c / (2.0 * SQRT_PI))
            }
        }
        (SpecialKind::GaussKernelB, x) if x == -0.5 => special(SpecialKind::GaussKernelA, a, c * 2.0 * SQRT_PI),
        (SpecialKind::CosSqrt, x) if x == -0.5 => special(SpecialKind::BesselJ0Sqrt, a, c),
        (SpecialKind::BesselJ0Sqrt, x) if x == 0.5 => special(SpecialKind::CosSqrt, a, c),
        _ => unsupported(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltransform::{forward_lt, shift};

    fn rat(num: &[f64], den: &[f64]) -> RationalLT {
        RationalLT::from_coeffs(num.to_vec(), den.to_vec()).unwrap()
    }

    #[test]
    fn step_row() {
        assert_eq!(inverse_rational(&rat(&[1.0], &[0.0, 1.0])).unwrap(), CausalFunction::unit_step());
    }

    #[test]
    fn integrator_row() {
        let a = 3.0;
        let f = inverse_rational(&rat(&[1.0], &[0.0, a, 1.0])).unwrap();
        let expected =
            CausalFunction::from_terms(vec![CausalTerm::step(1.0 / a), CausalTerm::exp(-1.0 / a, -a)]).unwrap();
        for (x, y) in f.terms().iter().zip(expected.terms()) {
            assert!((x.coeff - y.coeff).abs() < 1e-15 && x.rate == y.rate && x.power == y.power);
        }
        assert!(f.has_connect() == false);
    }

    #[test]
    fn damped_sine_row() {
        let (a, w) = (1.0, 2.0);
        let den =
            crate::polyalg::Polynomial::new(vec![a, 1.0]) * crate::polyalg::Polynomial::new(vec![w * w, 0.0, 1.0]);
        let r = RationalLT::new(crate::polyalg::Polynomial::constant(w), den).unwrap();
        let f = inverse_rational(&r).unwrap();
        let k = 1.0 / (a * a + w * w);
        for t in [0.1, 0.7, 2.5, 9.0] {
            let expected = k * (w * (-a * t).exp() + a * (w * t).sin() - w * (w * t).cos());
            assert!((f.value(t) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn improper_cosine_derivative() {
        // s²/(s²+ω²) → δ − u·ω sin ωt
        let f = inverse_rational(&rat(&[0.0, 0.0, 1.0], &[4.0, 0.0, 1.0])).unwrap();
        assert_eq!(f.impulses(), &[ImpulseTerm::new(1.0, 0)]);
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.terms()[0].trig, Trig::Sin);
        assert!((f.terms()[0].coeff + 2.0).abs() < 1e-14);
    }

    #[test]
    fn delayed_impulse() {
        let d: TransformExpr = rat(&[1.0], &[1.0]).into();
        let f = inverse_lt(&shift(&d, 1.0).unwrap()).unwrap();
        assert_eq!(f.impulses(), &[ImpulseTerm::new(1.0, 0).with_delay(1.0)]);
    }

    #[test]
    fn half_power_rows() {
        // √s·(1/s) = 1/√s → u/√(πt)
        let u: TransformExpr = rat(&[1.0], &[0.0, 1.0]).into();
        let f = inverse_lt(&u.mul_s_power(0.5)).unwrap();
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.terms()[0].power, -0.5);
        assert!((f.terms()[0].coeff - 1.0 / SQRT_PI).abs() < 1e-15);
        // √s·1 has no causal row
        let one: TransformExpr = rat(&[1.0], &[1.0]).into();
        assert!(matches!(inverse_lt(&one.mul_s_power(0.5)), Err(Error::UnsupportedTerm(_))));
    }

    #[test]
    fn fractional_roundtrip_through_table() {
        let f = CausalFunction::from_term(CausalTerm::power(1.0, -0.5)).unwrap();
        let g = inverse_lt(&forward_lt(&f).unwrap().mul_s_power(0.5)).unwrap();
        assert_eq!(g.impulses().len(), 1);
        assert!((g.impulses()[0].coeff - SQRT_PI).abs() < 1e-14);
    }
}

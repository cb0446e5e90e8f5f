use num_complex::Complex64;

use super::{cpoly, find_roots, Polynomial, RationalLT};
use crate::{Error, Result};

/// `residue/(s − root)^order`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoleTerm {
    pub root: Complex64,
    pub order: usize,
    pub residue: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    /// Polynomial part of an improper quotient.
    pub impulse_part: Polynomial,
    pub terms: Vec<PoleTerm>,
}

impl PartialFractions {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.terms
            .iter()
            .fold(self.impulse_part.eval_complex(s), |acc, t| acc + t.residue / (s - t.root).powu(t.order as u32))
    }
}

/// Splits `F` into a polynomial part and simple fractions over the roots of its denominator.
///
/// Residues for a root `ρ` of multiplicity `m` are the first `m` Taylor coefficients of
/// `R(s)/Q(s)` at `ρ`, where `R` is the proper remainder and `Q` the denominator with
/// `(s − ρ)^m` removed; both expansions are exact polynomial shifts.
pub fn partial_fractions(f: &RationalLT) -> Result<PartialFractions> {
    if f.delay() != 0.0 {
        return Err(Error::invalid("partial fractions expect an undelayed rational; apply the delay afterwards"));
    }
    let (quotient, remainder) = f.num().divmod(f.den())?;
    if remainder.is_zero() || f.den().degree() == Some(0) {
        return Ok(PartialFractions { impulse_part: quotient, terms: Vec::new() });
    }
    let roots = find_roots(f.den())?;
    let all = roots.complex_roots();
    let lead = f.den().leading();
    let rem = remainder.to_complex();

    let mut terms = Vec::new();
    for root in roots.roots() {
        let rho = root.representative();
        let m = root.multiplicity;
        let numer = cpoly::taylor_shift(&rem, rho);
        let mut denom = vec![Complex64::new(lead, 0.0)];
        for &(sigma, mu) in &all {
            if sigma == rho {
                continue;
            }
            // (ρ − σ + h)^μ truncated to the m coefficients that matter
            let mut factor = cpoly::root_power(sigma - rho, mu);
            factor.truncate(m);
            denom = cpoly::mul(&denom, &factor);
            denom.truncate(m);
        }
        let g = series_divide(&numer, &denom, m);
        let is_real = root.members().len() == 1;
        for (j, gj) in g.into_iter().enumerate() {
            let residue = if is_real { Complex64::new(gj.re, 0.0) } else { gj };
            let order = m - j;
            terms.push(PoleTerm { root: rho, order, residue });
            if !is_real {
                terms.push(PoleTerm { root: rho.conj(), order, residue: residue.conj() });
            }
        }
    }
    let largest = terms.iter().fold(0.0f64, |a, t| a.max(t.residue.norm()));
    terms.retain(|t| t.residue.norm() > 1e-13 * largest);
    Ok(PartialFractions { impulse_part: quotient, terms })
}

/// First `m` coefficients of the power series `a/b`.
fn series_divide(a: &[Complex64], b: &[Complex64], m: usize) -> Vec<Complex64> {
    let at = |v: &[Complex64], k: usize| v.get(k).copied().unwrap_or_default();
    let mut out: Vec<Complex64> = Vec::with_capacity(m);
    for k in 0..m {
        let mut acc = at(a, k);
        for (j, oj) in out.iter().enumerate() {
            acc -= oj * at(b, k - j);
        }
        out.push(acc / b[0]);
    }
    out
}

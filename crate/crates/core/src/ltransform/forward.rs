use num_complex::Complex64;

use super::{RationalPart, SpecialTransform, TableRow, TransformExpr};
use crate::causalfn::{close, CausalFunction, CausalTerm, DFunction, ImpulseTerm, Trig};
use crate::polyalg::{cpoly, Polynomial, RationalLT};
use crate::special::factorial;
use crate::{Error, Result};

/// `L{f}` term by term through the correspondence table. The connect function is
/// transform-invisible, so only the terms matter.
pub fn forward_lt(f: &CausalFunction) -> Result<TransformExpr> {
    let mut delays: Vec<f64> = f.terms().iter().map(|t| t.delay).chain(f.impulses().iter().map(|i| i.delay)).collect();
    delays.sort_by(f64::total_cmp);
    delays.dedup_by(|a, b| close(*a, *b));

    let mut rationals = Vec::new();
    let mut specials = Vec::new();
    for &delay in &delays {
        let mut modal = Vec::new();
        for t in f.terms().iter().filter(|t| close(t.delay, delay)) {
            if t.has_integer_power() {
                modal.push(*t);
            } else if t.rate == 0.0 && t.trig == Trig::None {
                specials.push(SpecialTransform { delay, ..SpecialTransform::new(TableRow::Power, t.power, t.coeff) });
            } else {
                return Err(Error::unsupported(format!(
                    "u(t)·t^{}·e^{{{}t}} with a trig factor has no table row",
                    t.power, t.rate
                )));
            }
        }
        let impulses: Vec<ImpulseTerm> = f.impulses().iter().filter(|i| close(i.delay, delay)).copied().collect();
        rationals.push(RationalPart { delay, s_power: 0.0, rational: modal_rational(&modal, &impulses) });
    }
    for s in f.specials() {
        specials.push(SpecialTransform {
            delay: s.delay,
            ..SpecialTransform::new(TableRow::Special(s.kind), s.param, s.coeff)
        });
    }
    TransformExpr::new(rationals, specials)
}

/// `L{f_d} = L{u·f_d}` as a rational function.
pub fn forward_lt_d(fd: &DFunction) -> RationalLT {
    let terms: Vec<CausalTerm> =
        fd.terms().iter().map(|t| CausalTerm::new(t.coeff, t.power as f64, t.rate, t.trig, t.freq)).collect();
    modal_rational(&terms, &[])
}

struct PoleKey {
    rate: f64,
    freq: f64,
    multiplicity: usize,
}

impl PoleKey {
    fn base(&self) -> Polynomial {
        if self.freq == 0.0 {
            Polynomial::new(vec![-self.rate, 1.0])
        } else {
            Polynomial::new(vec![self.rate * self.rate + self.freq * self.freq, -2.0 * self.rate, 1.0])
        }
    }
}

/// Sum of modal terms and impulses over the least common denominator
/// `Π (s−a)^m · Π ((s−a)²+ω²)^m`.
fn modal_rational(terms: &[CausalTerm], impulses: &[ImpulseTerm]) -> RationalLT {
    let mut keys: Vec<PoleKey> = Vec::new();
    for t in terms {
        let m = t.power as usize + 1;
        match keys.iter_mut().find(|k| close(k.rate, t.rate) && close(k.freq, t.freq)) {
            Some(k) => k.multiplicity = k.multiplicity.max(m),
            None => keys.push(PoleKey { rate: t.rate, freq: t.freq, multiplicity: m }),
        }
    }
    let bases: Vec<Polynomial> = keys.iter().map(PoleKey::base).collect();
    let den = keys.iter().zip(&bases).fold(Polynomial::one(), |acc, (k, b)| &acc * &b.pow(k.multiplicity));

    let mut num = Polynomial::zero();
    for t in terms {
        let k = t.power as usize;
        let idx = keys
            .iter()
            .position(|key| close(key.rate, t.rate) && close(key.freq, t.freq))
            .expect("key registered above");
        let cofactor = keys.iter().zip(&bases).enumerate().fold(Polynomial::one(), |acc, (j, (key, b))| {
            let m = if j == idx { key.multiplicity - k - 1 } else { key.multiplicity };
            &acc * &b.pow(m)
        });
        num = &num + &(&term_numerator(t) * &cofactor);
    }
    for i in impulses {
        num = &num + &(&Polynomial::monomial(i.order as usize, i.coeff) * &den);
    }
    RationalLT::new(num, den).expect("denominator is a product of monic factors")
}

/// Numerator of `L{c·t^k e^{at} trig(ωt)}` over `base^{k+1}`:
/// `c·k!` times the real or imaginary coefficients of `(s − a + iω)^{k+1}`.
fn term_numerator(t: &CausalTerm) -> Polynomial {
    let k = t.power as usize;
    let scale = t.coeff * factorial(k as u32);
    match t.trig {
        Trig::None => Polynomial::constant(scale),
        Trig::Cos | Trig::Sin => {
            let c = cpoly::root_power(Complex64::new(t.rate, -t.freq), k + 1);
            let pick = |z: &Complex64| if t.trig == Trig::Cos { z.re } else { z.im };
            Polynomial::new(c.iter().map(|z| scale * pick(z)).collect())
        }
    }
}

//! `Σ aₙy⁽ⁿ⁾(t) = Σ bₘx⁽ᵐ⁾(t)` with constant coefficients, solved on two independent
//! tracks.
//!
//! The *evoked* response `y_e = L⁻¹{B(s)/A(s)·L{x}}` involves no initial values at
//! all. The *spontaneous* response is the evoked response of a virtual system
//! excited by impulses whose weights `c_μ` come from the initial values
//! `y_s⁽ν⁾(0)` of the spontaneous response itself; dropping the unit step extends
//! it to all `t`. The traditional formula, which uses the initial values of the
//! total solution, is available through [`tlt_solution`] for comparison, and
//! [`conflict_report`] shows where the two disagree.

use std::fmt;

use crate::causalfn::{close, CausalFunction, DFunction, DTerm};
use crate::ltransform::{
    convolve_numeric, forward_lt, forward_lt_d, from_partial_fractions, inverse_lt, TransformExpr,
};
use crate::oracles::{integrate, NumericConfig};
use crate::polyalg::{find_roots, partial_fractions, PartialFractions, Polynomial, RationalLT};
use crate::{Error, Result};

/// Right-hand side input of the equation.
#[derive(Clone, Debug, PartialEq)]
pub enum Excitation {
    Causal(CausalFunction),
    /// Defined for all `t`; the forced response is then bilateral too.
    Bilateral(DFunction),
}

impl Excitation {
    /// `u(t)·x(t)`.
    pub fn causal_companion(&self) -> CausalFunction {
        match self {
            Excitation::Causal(x) => x.clone(),
            Excitation::Bilateral(fd) => fd.to_causal(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Excitation::Causal(x) => x.is_zero(),
            Excitation::Bilateral(fd) => fd.is_zero(),
        }
    }
}

impl Default for Excitation {
    fn default() -> Self {
        Excitation::Causal(CausalFunction::zero())
    }
}

impl From<CausalFunction> for Excitation {
    fn from(x: CausalFunction) -> Self {
        Excitation::Causal(x)
    }
}

impl From<DFunction> for Excitation {
    fn from(fd: DFunction) -> Self {
        Excitation::Bilateral(fd)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OdeProblem {
    a: Vec<f64>,
    b: Vec<f64>,
    excitation: Excitation,
    init: Vec<f64>,
}

impl OdeProblem {
    /// `a = (a₀…a_N)` with `N ≥ 1` and `a_N ≠ 0`, `b = (b₀…b_M)`, and the spontaneous
    /// initial values `y_s⁽ν⁾(0)`, `ν < N`.
    pub fn new(a: Vec<f64>, b: Vec<f64>, excitation: impl Into<Excitation>, init: Vec<f64>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::invalid("the equation needs order N ≥ 1 (at least two a-coefficients)"));
        }
        if a[a.len() - 1] == 0.0 {
            return Err(Error::invalid("leading coefficient a_N must be nonzero"));
        }
        if b.is_empty() {
            return Err(Error::invalid("at least one b-coefficient is required"));
        }
        if a.iter().chain(&b).chain(&init).any(|v| !v.is_finite()) {
            return Err(Error::invalid("coefficients and initial values must be finite"));
        }
        if init.len() != a.len() - 1 {
            return Err(Error::invalid(format!(
                "{} initial values given, the equation has order {}",
                init.len(),
                a.len() - 1
            )));
        }
        Ok(OdeProblem { a, b, excitation: excitation.into(), init })
    }

    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn excitation(&self) -> &Excitation {
        &self.excitation
    }

    pub fn init(&self) -> &[f64] {
        &self.init
    }

    pub fn with_init(&self, init: Vec<f64>) -> Result<Self> {
        OdeProblem::new(self.a.clone(), self.b.clone(), self.excitation.clone(), init)
    }

    pub fn with_excitation(&self, excitation: impl Into<Excitation>) -> Self {
        OdeProblem { excitation: excitation.into(), ..self.clone() }
    }

    /// Highest `m` with `bₘ ≠ 0` (0 when all vanish).
    pub fn excitation_order(&self) -> usize {
        Polynomial::new(self.b.clone()).degree().unwrap_or(0)
    }

    /// `B(s)/A(s)`.
    pub fn transfer(&self) -> RationalLT {
        RationalLT::new(Polynomial::new(self.b.clone()), Polynomial::new(self.a.clone()))
            .expect("a_N ≠ 0 is checked on construction")
    }
}

/// `h = L⁻¹{B(s)/A(s)}`; an improper quotient contributes impulses.
pub fn impulse_response(p: &OdeProblem) -> Result<CausalFunction> {
    inverse_lt(&p.transfer().into())
}

/// The evoked response in whichever form could be obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum Evoked {
    Closed(CausalFunction),
    /// Forced response to a bilateral excitation, valid for all `t`.
    Bilateral(DFunction),
    /// `values[i] = y_e(i·step)` from numeric convolution with the impulse response.
    Sampled {
        step: f64,
        values: Vec<f64>,
    },
}

impl Evoked {
    /// Smooth part at `t`; linear interpolation for sampled results (NaN past the grid).
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Evoked::Closed(f) => f.value(t),
            Evoked::Bilateral(fd) => fd.eval(t),
            Evoked::Sampled { step, values } => {
                if t < 0.0 {
                    return 0.0;
                }
                let x = t / step;
                let i = x.floor() as usize;
                match (values.get(i), values.get(i + 1)) {
                    (Some(a), Some(b)) => a + (x - i as f64) * (b - a),
                    (Some(a), None) if x == i as f64 => *a,
                    _ => f64::NAN,
                }
            }
        }
    }

    /// `y_e⁽ν⁾(0⁺)` for `ν < count`. Sampled results use one-sided differences.
    pub fn derivatives_at_zero(&self, count: usize) -> Vec<f64> {
        match self {
            Evoked::Closed(f) => {
                let modal = DFunction::new(
                    f.terms()
                        .iter()
                        .filter(|t| t.delay == 0.0 && t.has_integer_power())
                        .map(|t| DTerm::new(t.coeff, t.power as u32, t.rate, t.trig, t.freq))
                        .collect(),
                );
                (0..count as u32).map(|nu| modal.derivative_at_zero(nu)).collect()
            }
            Evoked::Bilateral(fd) => (0..count as u32).map(|nu| fd.derivative_at_zero(nu)).collect(),
            Evoked::Sampled { step, values } => (0..count)
                .map(|nu| {
                    let mut acc = 0.0;
                    let mut binom = 1.0;
                    for j in 0..=nu {
                        let sign = if (nu - j) % 2 == 0 { 1.0 } else { -1.0 };
                        acc += sign * binom * values.get(j).copied().unwrap_or(f64::NAN);
                        binom = binom * (nu - j) as f64 / (j + 1) as f64;
                    }
                    acc / step.powi(nu as i32)
                })
                .collect(),
        }
    }

    /// `y_e⁽ν⁾(−0)`: zero unless the response is bilateral.
    pub fn derivatives_before_zero(&self, count: usize) -> Vec<f64> {
        match self {
            Evoked::Bilateral(fd) => (0..count as u32).map(|nu| fd.derivative_at_zero(nu)).collect(),
            _ => vec![0.0; count],
        }
    }

    /// Orders of the impulses sitting at the origin.
    pub fn impulses_at_origin(&self) -> Vec<u32> {
        match self {
            Evoked::Closed(f) => f.impulses().iter().filter(|i| i.delay == 0.0).map(|i| i.order).collect(),
            _ => Vec::new(),
        }
    }

    /// `u(t)·y_e(t)` when a closed form exists.
    pub fn to_causal(&self) -> Option<CausalFunction> {
        match self {
            Evoked::Closed(f) => Some(f.clone()),
            Evoked::Bilateral(fd) => Some(fd.to_causal()),
            Evoked::Sampled { .. } => None,
        }
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self, Evoked::Sampled { .. })
    }
}

pub fn evoked_solution(p: &OdeProblem) -> Result<Evoked> {
    evoked_solution_with(p, &NumericConfig::default())
}

/// `y_e = L⁻¹{H(s)·L{x}}`. Excitations with non-rational images fall back to
/// `h ∗ x` sampled on `[0, cfg.t_max]` with step `cfg.h`.
pub fn evoked_solution_with(p: &OdeProblem, cfg: &NumericConfig) -> Result<Evoked> {
    let h = p.transfer();
    match &p.excitation {
        Excitation::Causal(x) => {
            let image = forward_lt(x).ok().filter(|f| f.special_terms().is_empty());
            match image {
                Some(xs) => Ok(Evoked::Closed(inverse_lt(&TransformExpr::from(h).mul(&xs)?)?)),
                None => {
                    cfg.validate()?;
                    let n = (cfg.t_max / cfg.h).ceil() as usize;
                    let values = convolve_numeric(&impulse_response(p)?, x, cfg.h, n)?;
                    Ok(Evoked::Sampled { step: cfg.h, values })
                }
            }
        }
        Excitation::Bilateral(fd) => forced_response(&h, fd).map(Evoked::Bilateral),
    }
}

/// Particular solution driven by a bilateral modal excitation: the partial-fraction
/// terms of `H·X` at the poles of `X`. Fails when such a pole is also a
/// characteristic root (resonance), where forced and free parts cannot be told apart.
fn forced_response(h: &RationalLT, fd: &DFunction) -> Result<DFunction> {
    if fd.is_zero() || h.is_zero() {
        return Ok(DFunction::zero());
    }
    let x = forward_lt_d(fd);
    let x_poles = find_roots(x.den())?.complex_roots();
    let a_poles = find_roots(h.den())?.complex_roots();
    let near = |z: num_complex::Complex64, w: num_complex::Complex64| (z - w).norm() <= 1e-8 * z.norm().max(1.0);
    if let Some((z, _)) = x_poles.iter().find(|(z, _)| a_poles.iter().any(|(w, _)| near(*z, *w))) {
        return Err(Error::invalid(format!(
            "excitation mode at s = {z} coincides with a characteristic root (resonance)"
        )));
    }
    let pf = partial_fractions(&h.mul(&x))?;
    let terms = pf.terms.into_iter().filter(|t| x_poles.iter().any(|(z, _)| near(t.root, *z))).collect();
    let y = from_partial_fractions(&PartialFractions { impulse_part: Polynomial::zero(), terms })?;
    Ok(y.modal_part().expect("pole terms are undelayed modal terms"))
}

/// `c_μ = Σ_{ν=0}^{N−1−μ} a_{μ+ν+1}·y_s⁽ν⁾(0)`.
pub fn spontaneous_coeffs(p: &OdeProblem) -> Vec<f64> {
    virtual_weights(&p.a, &p.init)
}

fn virtual_weights(a: &[f64], init: &[f64]) -> Vec<f64> {
    let n = a.len() - 1;
    (0..n).map(|mu| (0..n - mu).map(|nu| a[mu + nu + 1] * init[nu]).sum()).collect()
}

/// `y_s` for all `t`: the inverse of `Σc_μs^μ/A(s)` with the unit step dropped.
pub fn spontaneous_solution(p: &OdeProblem) -> Result<DFunction> {
    let r = RationalLT::new(Polynomial::new(spontaneous_coeffs(p)), Polynomial::new(p.a.clone()))?;
    let causal = inverse_lt(&r.into())?;
    debug_assert!(causal.impulses().is_empty(), "proper quotient");
    Ok(causal.modal_part().expect("inverse of a proper rational is modal"))
}

/// `y(t) = u(t)·β·e^{−αt}∫₀ᵗ x(τ)e^{ατ}dτ + y_s(0)·e^{−αt}` for `N = 1`, `M = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FirstOrderForm {
    pub alpha: f64,
    pub beta: f64,
    pub ys0: f64,
}

impl FirstOrderForm {
    /// Evaluates the integral by adaptive quadrature.
    pub fn eval(&self, x: &CausalFunction, t: f64, cfg: &NumericConfig) -> Result<f64> {
        let free = self.ys0 * (-self.alpha * t).exp();
        if t <= 0.0 {
            return Ok(free);
        }
        let integrand = |tau: f64| {
            let v = x.value(tau);
            if v.is_finite() {
                v * (self.alpha * (tau - t)).exp()
            } else {
                0.0
            }
        };
        let mut forced = integrate(integrand, 0.0, t, cfg.abs_tol, cfg.rel_tol)?;
        for imp in x.impulses().iter().filter(|i| i.order == 0 && i.delay < t) {
            forced += imp.coeff * (self.alpha * (imp.delay - t)).exp();
        }
        Ok(self.beta * forced + free)
    }
}

impl fmt::Display for FirstOrderForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y(t) = u(t)*{b}*exp(-{a} t)*integral_0^t x(tau)*exp({a} tau) dtau + {y}*exp(-{a} t)",
            a = self.alpha,
            b = self.beta,
            y = self.ys0
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionBundle {
    pub evoked: Evoked,
    pub spontaneous: DFunction,
    pub impulse_response: CausalFunction,
    /// Integral form of the total solution, present for causal first-order problems without `x′`.
    pub first_order: Option<FirstOrderForm>,
    /// Terms of `y_e` with the largest exponential rate: the behavior as `t → ∞`.
    pub asymptote: Option<CausalFunction>,
    pub notes: Vec<String>,
}

impl SolutionBundle {
    /// `y_e(t) + y_s(t)` (smooth parts).
    pub fn total(&self, t: f64) -> f64 {
        self.evoked.eval(t) + self.spontaneous.eval(t)
    }

    /// `u(t)·y(t)` as one causal function, when the evoked part has a closed form.
    pub fn causal_total(&self) -> Option<CausalFunction> {
        self.evoked.to_causal().map(|e| e.add(&self.spontaneous.to_causal()))
    }
}

pub fn total_solution(p: &OdeProblem) -> Result<SolutionBundle> {
    total_solution_with(p, &NumericConfig::default())
}

pub fn total_solution_with(p: &OdeProblem, cfg: &NumericConfig) -> Result<SolutionBundle> {
    let evoked = evoked_solution_with(p, cfg)?;
    let spontaneous = spontaneous_solution(p)?;
    let impulse_response = impulse_response(p)?;
    let mut notes = Vec::new();
    let first_order = match (&p.excitation, p.order(), p.excitation_order()) {
        (Excitation::Causal(_), 1, 0) => {
            Some(FirstOrderForm { alpha: p.a[0] / p.a[1], beta: p.b[0] / p.a[1], ys0: p.init[0] })
        }
        _ => None,
    };
    let asymptote = match &evoked {
        Evoked::Closed(f) => dominant_terms(f),
        Evoked::Bilateral(fd) => Some(fd.to_causal()),
        Evoked::Sampled { .. } => None,
    };
    match &evoked {
        Evoked::Bilateral(_) => notes.push(
            "bilateral excitation: the evoked part is the forced response for all t; \
             the causal companion u(t)x(t) would add free-response terms"
                .to_string(),
        ),
        Evoked::Sampled { step, values } => notes.push(format!(
            "excitation has no rational image: evoked part by numeric convolution, step {step}, {} samples",
            values.len()
        )),
        Evoked::Closed(_) => {}
    }
    if p.order() > 0 && p.excitation_order() > 0 {
        notes.push("M > 0: spontaneous part follows the a-coefficient formula unchanged".to_string());
    }
    Ok(SolutionBundle { evoked, spontaneous, impulse_response, first_order, asymptote, notes })
}

fn dominant_terms(f: &CausalFunction) -> Option<CausalFunction> {
    let rate = f.terms().iter().map(|t| t.rate).fold(f64::NEG_INFINITY, f64::max);
    if !rate.is_finite() {
        return None;
    }
    CausalFunction::from_terms(f.terms().iter().filter(|t| close(t.rate, rate)).copied().collect()).ok()
}

/// Initial values on both sides of the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct ConflictReport {
    /// `y_e⁽ν⁾(0⁺)`
    pub evoked_plus: Vec<f64>,
    /// `y_s⁽ν⁾(0)` recomputed from the spontaneous solution.
    pub spontaneous: Vec<f64>,
    /// `y⁽ν⁾(0⁺) = y_e⁽ν⁾(0⁺) + y_s⁽ν⁾(0)`
    pub total_plus: Vec<f64>,
    /// `y⁽ν⁾(−0)`
    pub total_minus: Vec<f64>,
    /// Impulse orders of `y_e` at the origin.
    pub evoked_impulses: Vec<u32>,
    /// Whether `y⁽ν⁾(−0) = y_s⁽ν⁾(0)` for every `ν`.
    pub minus_matches_spontaneous: bool,
    /// Some `y_e⁽ν⁾(0⁺) ≠ 0`: the traditional formula with free `y⁽ν⁾(0)` goes wrong.
    pub conflict: bool,
    /// Derivatives came from finite differences of a sampled evoked response.
    pub approximate: bool,
}

pub fn conflict_report(p: &OdeProblem) -> Result<ConflictReport> {
    let n = p.order();
    let evoked = evoked_solution(p)?;
    let ys = spontaneous_solution(p)?;
    let evoked_plus = evoked.derivatives_at_zero(n);
    let evoked_minus = evoked.derivatives_before_zero(n);
    let spontaneous: Vec<f64> = (0..n as u32).map(|nu| ys.derivative_at_zero(nu)).collect();
    let total_plus: Vec<f64> = evoked_plus.iter().zip(&spontaneous).map(|(e, s)| e + s).collect();
    let total_minus: Vec<f64> = evoked_minus.iter().zip(&spontaneous).map(|(e, s)| e + s).collect();
    let scale = evoked_plus.iter().chain(&spontaneous).fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = if evoked.is_sampled() { 1e-6 } else { 1e-12 } * scale;
    let minus_matches_spontaneous = total_minus.iter().zip(&spontaneous).all(|(m, s)| (m - s).abs() <= tol);
    let conflict = evoked_plus.iter().any(|v| v.abs() > tol);
    Ok(ConflictReport {
        evoked_plus,
        spontaneous,
        total_plus,
        total_minus,
        evoked_impulses: evoked.impulses_at_origin(),
        minus_matches_spontaneous,
        conflict,
        approximate: evoked.is_sampled(),
    })
}

/// Result of the traditional formula, valid for `t > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TltSolution {
    pub total_tlt: CausalFunction,
    pub conflict: ConflictReport,
}

impl TltSolution {
    /// Whether the traditional result coincides with `u(t)·y(t)` of the two-track
    /// solution, compared as transforms to `rel`.
    pub fn agrees_with(&self, bundle: &SolutionBundle, rel: f64) -> Result<bool> {
        let ours = bundle.causal_total().ok_or_else(|| Error::unsupported("the evoked response has no closed form"))?;
        Ok(forward_lt(&self.total_tlt)?.approx_eq(&forward_lt(&ours)?, rel))
    }
}

/// `y = L⁻¹{b₀/A(s)·L{x} + Σ_μ a_μ Σ_ν y^{(μ−1−ν)}(0)s^ν / A(s)}` with the initial
/// values `total_init` of the total solution; the excitation enters only through
/// its transform, so a bilateral one is silently replaced by its causal companion.
pub fn tlt_solution(p: &OdeProblem, total_init: &[f64]) -> Result<TltSolution> {
    if p.excitation_order() > 0 {
        return Err(Error::invalid(
            "the traditional formula requires M = 0: the equation contains a derivative of the excitation",
        ));
    }
    if total_init.len() != p.order() {
        return Err(Error::invalid(format!("{} initial values for order {}", total_init.len(), p.order())));
    }
    let a = Polynomial::new(p.a.clone());
    let x = match &p.excitation {
        Excitation::Causal(x) => forward_lt(x)?,
        Excitation::Bilateral(fd) => forward_lt_d(fd).into(),
    };
    let weights = Polynomial::new(virtual_weights(&p.a, total_init));
    let image = match x.as_rational().filter(|r| r.delay() == 0.0) {
        // one quotient over A·X_den, so A's roots are not doubled by the addition
        Some(xr) => {
            TransformExpr::from(RationalLT::new(&xr.num().scale(p.b[0]) + &(&weights * xr.den()), &a * xr.den())?)
        }
        None => TransformExpr::from(RationalLT::new(Polynomial::constant(p.b[0]), a.clone())?)
            .mul(&x)?
            .add(&RationalLT::new(weights, a)?.into()),
    };
    let total_tlt = inverse_lt(&image)?;
    Ok(TltSolution { total_tlt, conflict: conflict_report(p)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causalfn::{CausalTerm, SpecialKind, SpecialTerm, Trig};

    fn xde(a: f64, w: f64, xhat: f64, ys0: f64) -> OdeProblem {
        OdeProblem::new(vec![a, 1.0], vec![1.0], DFunction::new(vec![DTerm::sin(xhat, w)]), vec![ys0]).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(OdeProblem::new(vec![1.0], vec![1.0], CausalFunction::zero(), vec![]).is_err());
        assert!(OdeProblem::new(vec![1.0, 0.0], vec![1.0], CausalFunction::zero(), vec![0.0]).is_err());
        assert!(OdeProblem::new(vec![1.0, 1.0], vec![1.0], CausalFunction::zero(), vec![]).is_err());
        assert!(OdeProblem::new(vec![1.0, 1.0], vec![], CausalFunction::zero(), vec![0.0]).is_err());
    }

    #[test]
    fn first_order_impulse_response() {
        let (a0, a1, b0) = (3.0, 2.0, 5.0);
        let p = OdeProblem::new(vec![a0, a1], vec![b0], CausalFunction::zero(), vec![0.0]).unwrap();
        let h = impulse_response(&p).unwrap();
        assert_eq!(h.terms().len(), 1);
        assert!((h.terms()[0].coeff - b0 / a1).abs() < 1e-15);
        assert!((h.terms()[0].rate + a0 / a1).abs() < 1e-15);
    }

    #[test]
    fn circuit_impulse_response_is_improper() {
        let a = 2.0;
        let p = OdeProblem::new(vec![a, 1.0], vec![0.0, 1.0], CausalFunction::zero(), vec![0.0]).unwrap();
        let h = impulse_response(&p).unwrap();
        assert_eq!(h.impulses().len(), 1);
        assert_eq!(h.impulses()[0].order, 0);
        assert!((h.terms()[0].coeff + a).abs() < 1e-14);
        let zero_b = OdeProblem::new(vec![a, 1.0], vec![0.0], CausalFunction::zero(), vec![0.0]).unwrap();
        assert!(impulse_response(&zero_b).unwrap().is_zero());
    }

    #[test]
    fn spontaneous_weights() {
        let p = OdeProblem::new(vec![2.0, 3.0, 1.0], vec![1.0], CausalFunction::zero(), vec![1.0, 0.0]).unwrap();
        assert_eq!(spontaneous_coeffs(&p), vec![3.0, 1.0]);
        let ys = spontaneous_solution(&p).unwrap();
        for t in [-2.0, 0.0, 1.5] {
            let expected = 2.0 * f64::exp(-t) - f64::exp(-2.0 * t);
            assert!((ys.eval(t) - expected).abs() < 1e-12 * expected.abs().max(1.0));
        }
        let zero = p.with_init(vec![0.0, 0.0]).unwrap();
        assert!(spontaneous_solution(&zero).unwrap().is_zero());
    }

    #[test]
    fn causal_sine_evoked_form() {
        let (a, w) = (1.0, 2.0);
        let x = CausalFunction::from_term(CausalTerm::sin(1.0, w)).unwrap();
        let p = OdeProblem::new(vec![a, 1.0], vec![1.0], x, vec![0.0]).unwrap();
        let Evoked::Closed(ye) = evoked_solution(&p).unwrap() else { panic!("closed form expected") };
        let k = 1.0 / (a * a + w * w);
        for t in [0.2, 1.0, 4.0] {
            let expected = k * (w * (-a * t).exp() + a * (w * t).sin() - w * (w * t).cos());
            assert!((ye.value(t) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn bilateral_sine_evoked_form() {
        let p = xde(1.0, 2.0, 1.0, 0.0);
        let Evoked::Bilateral(ye) = evoked_solution(&p).unwrap() else { panic!("bilateral expected") };
        for t in [-3.0f64, 0.0, 2.0] {
            let expected = ((2.0 * t).sin() - 2.0 * (2.0 * t).cos()) / 5.0;
            assert!((ye.eval(t) - expected).abs() < 1e-14);
        }
        assert!(ye.terms().iter().all(|t| t.rate == 0.0 && t.trig != Trig::None));
    }

    #[test]
    fn resonance_is_rejected() {
        let p =
            OdeProblem::new(vec![4.0, 0.0, 1.0], vec![1.0], DFunction::new(vec![DTerm::cos(1.0, 2.0)]), vec![0.0, 0.0])
                .unwrap();
        assert!(evoked_solution(&p).is_err());
    }

    #[test]
    fn conflict_values() {
        let r = conflict_report(&xde(1.0, 2.0, 1.0, 0.0)).unwrap();
        assert!((r.total_plus[0] + 0.4).abs() < 1e-12);
        assert!(r.conflict);
        let quiet = OdeProblem::new(vec![1.0, 1.0], vec![1.0], CausalFunction::zero(), vec![0.7]).unwrap();
        let r = conflict_report(&quiet).unwrap();
        assert!(!r.conflict && r.minus_matches_spontaneous);
        assert!((r.total_plus[0] - 0.7).abs() < 1e-15);
        let impulse = quiet.with_excitation(CausalFunction::impulse(0));
        assert!(conflict_report(&impulse).unwrap().conflict);
    }

    #[test]
    fn tlt_reproduces_extra_exponential() {
        let (a, w) = (1.0, 2.0);
        let y0 = 0.3;
        let t = tlt_solution(&xde(a, w, 1.0, 0.0), &[y0]).unwrap();
        let k = 1.0 / (a * a + w * w);
        for s in [0.5, 2.0] {
            let expected = k * (w * (-a * s).exp() + a * (w * s).sin() - w * (w * s).cos()) + y0 * (-a * s).exp();
            assert!((t.total_tlt.value(s) - expected).abs() < 1e-14);
        }
        let circuit = OdeProblem::new(vec![a, 1.0], vec![0.0, 1.0], CausalFunction::unit_step(), vec![0.0]).unwrap();
        assert!(tlt_solution(&circuit, &[0.0]).is_err());
    }

    #[test]
    fn patched_tlt_agrees() {
        let p = xde(1.0, 2.0, 1.0, 0.0);
        let bundle = total_solution(&p).unwrap();
        let r = conflict_report(&p).unwrap();
        let t = tlt_solution(&p, &r.total_minus).unwrap();
        assert!(t.agrees_with(&bundle, 1e-9).unwrap());
        let naive = tlt_solution(&p, &[0.0]).unwrap();
        assert!(!naive.agrees_with(&bundle, 1e-9).unwrap());
    }

    #[test]
    fn first_order_integral_form() {
        let x = CausalFunction::from_term(CausalTerm::cos(2.0, 3.0)).unwrap();
        let p = OdeProblem::new(vec![1.5, 0.5], vec![2.0], x.clone(), vec![0.25]).unwrap();
        let bundle = total_solution(&p).unwrap();
        let form = bundle.first_order.unwrap();
        for t in [0.3, 1.0, 2.5] {
            let v = form.eval(&x, t, &NumericConfig::default()).unwrap();
            assert!((v - bundle.total(t)).abs() < 1e-9);
        }
    }

    #[test]
    fn special_excitation_falls_back_to_samples() {
        let x = CausalFunction::from_special(SpecialTerm::new(SpecialKind::BesselJ0Sqrt, 1.0, 1.0)).unwrap();
        let p = OdeProblem::new(vec![1.0, 1.0], vec![1.0], x, vec![0.0]).unwrap();
        let cfg = NumericConfig { t_max: 2.0, h: 1e-3, ..Default::default() };
        let e = evoked_solution_with(&p, &cfg).unwrap();
        assert!(e.is_sampled());
        // ∫₀¹ e^{−(1−τ)}J₀(2√τ)dτ
        assert!((e.eval(1.0) - 0.324_830_536_169_131_1).abs() < 1e-8);
    }
}

//! Special functions needed by the correspondence table and the half-derivative rows.

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> f64 {
    if x == x.round() && x > 0.0 && x < 171.0 {
        return factorial(x as u32 - 1);
    }
    libm::tgamma(x)
}

/// 1/Γ(x), zero at the poles x = 0, −1, −2, ...
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return 0.0;
    }
    if x > 0.0 {
        1.0 / gamma(x)
    } else {
        // reflection: 1/Γ(x) = Γ(1−x)·sin(πx)/π
        gamma(1.0 - x) * (std::f64::consts::PI * x).sin() / std::f64::consts::PI
    }
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Dawson's integral `D(x) = e^{−x²}∫₀ˣ e^{y²} dy`.
///
/// Positive-term series `e^{−x²} Σ x^{2n+1}/(n!(2n+1))` below 7, asymptotic
/// expansion `1/(2x)·Σ (2n−1)!!/(2x²)ⁿ` above.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax < 7.0 {
        let x2 = ax * ax;
        let mut power = ax;
        let mut sum = 0.0;
        for n in 0..500 {
            let term = power / (2 * n + 1) as f64;
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
            power *= x2 / (n + 1) as f64;
        }
        (-x2).exp() * sum
    } else {
        let q = 1.0 / (2.0 * ax * ax);
        let mut term = 1.0;
        let mut sum = 1.0;
        for n in 1..60 {
            let next = term * (2 * n - 1) as f64 * q;
            if next > term || next < 1e-17 * sum {
                break;
            }
            term = next;
            sum += term;
        }
        sum / (2.0 * ax)
    };
    v.copysign(x)
}

/// Bessel function of the first kind, order zero.
///
/// Power series for |x| ≤ 8; beyond that Bessel's integral
/// `J0(x) = (1/π)∫₀^π cos(x sin θ) dθ` with the midpoint rule, which converges
/// geometrically because the integrand is smooth and π-periodic.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 8.0 {
        let q = -(x * x) / 4.0;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..60 {
            term *= q / (k as f64 * k as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-300) {
                break;
            }
        }
        sum
    } else {
        let n = 48 + x.ceil() as usize;
        let h = std::f64::consts::PI / n as f64;
        (0..n).map(|k| (x * ((k as f64 + 0.5) * h).sin()).cos()).sum::<f64>() / n as f64
    }
}

use num_complex::Complex64;

use super::Polynomial;
use crate::{Error, Result};

/// Knobs for [`find_roots_with`].
#[derive(Clone, Debug, PartialEq)]
pub struct RootConfig {
    pub max_iterations: usize,
    /// Candidate radius (relative to `max(1, |root|)`) for grouping iterates into a multiple root.
    pub cluster_radius: f64,
    /// A candidate group of size `m` is accepted as an `m`-fold root when the first `m`
    /// Taylor coefficients at its mean vanish to this relative tolerance.
    pub multiplicity_tol: f64,
    /// Roots with `|Im| ≤ real_tol·max(1, |root|)` are taken as real.
    pub real_tol: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { max_iterations: 200, cluster_radius: 1e-2, multiplicity_tol: 1e-10, real_tol: 1e-9 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RootKind {
    Real(f64),
    /// The member with positive imaginary part; its conjugate is implied.
    ConjugatePair(Complex64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub kind: RootKind,
    pub multiplicity: usize,
}

impl Root {
    pub fn representative(&self) -> Complex64 {
        match self.kind {
            RootKind::Real(r) => Complex64::new(r, 0.0),
            RootKind::ConjugatePair(z) => z,
        }
    }

    /// One value for a real root, the upper member then its exact conjugate for a pair.
    pub fn members(&self) -> Vec<Complex64> {
        match self.kind {
            RootKind::Real(r) => vec![Complex64::new(r, 0.0)],
            RootKind::ConjugatePair(z) => vec![z, z.conj()],
        }
    }

    /// The real irreducible factor: `s − r` or `s² − 2Re(z)s + |z|²`.
    pub fn factor(&self) -> Polynomial {
        match self.kind {
            RootKind::Real(r) => Polynomial::new(vec![-r, 1.0]),
            RootKind::ConjugatePair(z) => Polynomial::new(vec![z.norm_sqr(), -2.0 * z.re, 1.0]),
        }
    }

    /// Number of roots counted with multiplicity, both members of a pair included.
    pub fn degree(&self) -> usize {
        self.multiplicity * self.members().len()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RootSet {
    roots: Vec<Root>,
}

impl RootSet {
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(Root::degree).sum()
    }

    /// Every distinct complex root with its multiplicity.
    pub fn complex_roots(&self) -> Vec<(Complex64, usize)> {
        self.roots.iter().flat_map(|r| r.members().into_iter().map(move |z| (z, r.multiplicity))).collect()
    }

    /// Largest real part among the roots (`−∞` when empty).
    pub fn max_real_part(&self) -> f64 {
        self.roots.iter().map(|r| r.representative().re).fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn find_roots(p: &Polynomial) -> Result<RootSet> {
    find_roots_with(p, &RootConfig::default())
}

pub fn find_roots_with(p: &Polynomial, cfg: &RootConfig) -> Result<RootSet> {
    let degree = p.degree().unwrap_or(0);
    if degree == 0 {
        return Err(Error::invalid("root finding needs a polynomial of degree at least 1"));
    }
    let zeros = p.zero_root_count();
    let reduced = Polynomial::new(p.coeffs()[zeros..].to_vec());

    let mut roots = Vec::new();
    if zeros > 0 {
        roots.push(Root { kind: RootKind::Real(0.0), multiplicity: zeros });
    }
    let c = reduced.coeffs();
    let points = match reduced.degree().unwrap_or(0) {
        0 => Vec::new(),
        1 => vec![Complex64::new(-c[0] / c[1], 0.0)],
        2 => quadratic(c[2], c[1], c[0]),
        _ => aberth(&reduced, cfg)?,
    };
    let clustered = cluster(&reduced, points, cfg.cluster_radius, cfg);
    roots.extend(pair_up(clustered, cfg));
    roots.sort_by(|a, b| {
        let (x, y) = (a.representative(), b.representative());
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
    });
    Ok(RootSet { roots })
}

fn quadratic(a: f64, b: f64, c: f64) -> Vec<Complex64> {
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        if q == 0.0 {
            let r = (-c / a).sqrt();
            vec![Complex64::new(r, 0.0), Complex64::new(-r, 0.0)]
        } else {
            vec![Complex64::new(q / a, 0.0), Complex64::new(c / q, 0.0)]
        }
    } else {
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a.abs());
        vec![Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

/// `p(z)`, `p'(z)` and the rounding bound `Σ|c_k||z|^k`.
fn horner(p: &Polynomial, z: Complex64) -> (Complex64, Complex64, f64) {
    let zero = Complex64::new(0.0, 0.0);
    let r = z.norm();
    p.coeffs().iter().rev().fold((zero, zero, 0.0), |(v, d, b), &c| (v * z + c, d * z + v, b * r + c.abs()))
}

fn aberth(p: &Polynomial, cfg: &RootConfig) -> Result<Vec<Complex64>> {
    let n = p.degree().unwrap_or(0);
    let lead = p.leading();
    let center = Complex64::new(-p.coeff(n - 1) / (n as f64 * lead), 0.0);
    let mut rho = (p.eval_complex(center).norm() / lead.abs()).powf(1.0 / n as f64);
    if !(rho.is_finite() && rho > 0.0) {
        rho = 1.0;
    }
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(rho, theta)
        })
        .collect();
    let mut done = vec![false; n];
    let eps = f64::EPSILON;
    let mut iterations = 0;
    while iterations < cfg.max_iterations && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (v, d, bound) = horner(p, z[i]);
            if v.norm() <= 4.0 * eps * bound {
                done[i] = true;
                continue;
            }
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let mut denom = d - v * sum;
            if denom.norm() == 0.0 {
                denom = Complex64::new(eps, eps);
            }
            let w = v / denom;
            z[i] -= w;
            if w.norm() <= eps * z[i].norm() {
                done[i] = true;
            }
        }
    }
    let residual = z
        .iter()
        .map(|&zi| {
            let (v, _, bound) = horner(p, zi);
            if bound == 0.0 {
                0.0
            } else {
                v.norm() / bound
            }
        })
        .fold(0.0, f64::max);
    if done.iter().all(|d| *d) || residual <= 1e-8 {
        Ok(z)
    } else {
        Err(Error::RootsNotConverged { iterations, residual, best: z })
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `p^{(j)}(c)/j!` and its rounding scale.
fn taylor_coeff(p: &Polynomial, c: Complex64, j: usize) -> (Complex64, f64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (i, &a) in p.coeffs().iter().enumerate().skip(j) {
        let w = binomial(i, j) * a;
        value += c.powu((i - j) as u32) * w;
        scale += w.abs() * c.norm().powi((i - j) as i32);
    }
    (value, scale)
}

fn newton_polish(p: &Polynomial, mut z: Complex64) -> Complex64 {
    let mut best = horner(p, z).0.norm();
    for _ in 0..8 {
        let (v, d, _) = horner(p, z);
        if d.norm() == 0.0 || v.norm() == 0.0 {
            break;
        }
        let next = z - v / d;
        let r = horner(p, next).0.norm();
        if r < best {
            best = r;
            z = next;
        } else {
            break;
        }
    }
    z
}

fn refine_multiple(p: &Polynomial, c: Complex64, m: usize) -> Complex64 {
    let mut q = p.clone();
    for _ in 1..m {
        q = q.derivative();
    }
    newton_polish(&q, c)
}

fn cluster(p: &Polynomial, points: Vec<Complex64>, radius: f64, cfg: &RootConfig) -> Vec<(Complex64, usize)> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = 1.0f64.max(points[i].norm()).max(points[j].norm());
            if (points[i] - points[j]).norm() <= radius * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if index[r] == usize::MAX {
            index[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index[r]].push(points[i]);
    }

    let mut out = Vec::new();
    for group in groups {
        let m = group.len();
        if m == 1 {
            out.push((newton_polish(p, group[0]), 1));
            continue;
        }
        let mean = group.iter().sum::<Complex64>() / m as f64;
        let center = refine_multiple(p, mean, m);
        let verified = (0..m).all(|j| {
            let (v, scale) = taylor_coeff(p, center, j);
            v.norm() <= cfg.multiplicity_tol * scale
        });
        if verified {
            out.push((center, m));
        } else if radius > 1e-9 {
            out.extend(cluster(p, group, radius * 0.1, cfg));
        } else {
            out.extend(group.into_iter().map(|z| (newton_polish(p, z), 1)));
        }
    }
    out
}

fn pair_up(found: Vec<(Complex64, usize)>, cfg: &RootConfig) -> Vec<Root> {
    let mut roots = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (z, m) in found {
        if z.im.abs() <= cfg.real_tol * z.norm().max(1.0) {
            roots.push(Root { kind: RootKind::Real(z.re), multiplicity: m });
        } else if z.im > 0.0 {
            upper.push((z, m));
        } else {
            lower.push((z, m));
        }
    }
    for (u, m) in upper {
        let partner = lower
            .iter()
            .enumerate()
            .filter(|(_, (_, lm))| *lm == m)
            .min_by(|(_, (a, _)), (_, (b, _))| (a.conj() - u).norm().total_cmp(&(b.conj() - u).norm()))
            .map(|(i, _)| i);
        let z = match partner {
            Some(i) => (u + lower.swap_remove(i).0.conj()) / 2.0,
            None => u,
        };
        roots.push(Root { kind: RootKind::ConjugatePair(z), multiplicity: m });
    }
    // An unmatched lower root can only come from a failed pairing; keep the degree right.
    for (l, m) in lower {
        roots.push(Root { kind: RootKind::ConjugatePair(l.conj()), multiplicity: m });
    }
    roots
}

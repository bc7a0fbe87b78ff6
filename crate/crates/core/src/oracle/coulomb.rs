//! Hydrogen in a truncated bound-state basis, atomic units, heavy nucleus
//! (or reduced-mass units when the model keeps both masses).

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::dense::{dense_chi_l, dense_chi_quad, CMatrix, DenseBasis, DenseCoupling};
use crate::error::Result;
use crate::hydrogen::HydrogenModel;
use crate::tensor::ResponseTensor;
use crate::units::UnitKind;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp;
        loop {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / dp;
            if (z - z1).abs() < 1e-15 {
                break;
            }
        }
        out.push((z, 2.0 / ((1.0 - z * z) * dp * dp)));
    }
    out
}

/// Gauss-Laguerre nodes and weights for `int_0^inf f(x) e^-x dx`.
pub fn gauss_laguerre(n: usize) -> Vec<(f64, f64)> {
    let nf = n as f64;
    let mut nodes: Vec<f64> = Vec::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    let mut z = 0.0;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let mut p2;
        let mut pp;
        let mut iter = 0;
        loop {
            let (mut p1, mut q2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = q2;
                q2 = p1;
                p1 = ((2 * j + 1) as f64 - z) * q2 / (j + 1) as f64 - j as f64 * p3 / (j + 1) as f64;
            }
            p2 = q2;
            pp = (nf * p1 - nf * p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            iter += 1;
            if (z - z1).abs() <= 1e-15 * z.abs() || iter > 200 {
                break;
            }
        }
        nodes.push(z);
        out.push((z, -1.0 / (pp * nf * p2)));
    }
    out
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `R_nl(r)` from the explicit associated-Laguerre sum, without the
/// exponential: returns `(poly(r), decay)` with `R = poly * exp(-decay r)`.
fn radial_poly(n: u32, l: u32, r: f64) -> f64 {
    let nf = n as f64;
    let rho = 2.0 * r / nf;
    let k = n - l - 1;
    let alpha = 2 * l + 1;
    let lag: f64 = (0..=k)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(k + alpha, k - i) * rho.powi(i as i32) / factorial(i)
        })
        .sum();
    let norm = ((2.0 / nf).powi(3) * factorial(k) / (2.0 * nf * factorial(n + l))).sqrt();
    norm * rho.powi(l as i32) * lag
}

/// `int_0^inf r^(2+power) R_n1l1 R_n2l2 dr` by a fixed 48-point
/// Gauss-Laguerre rule after scaling out the combined exponential, exact
/// for every pair with n <= 12.
pub fn quadrature_radial(n1: u32, l1: u32, n2: u32, l2: u32, power: u32) -> f64 {
    assert!(l1 < n1 && l2 < n2, "invalid quantum numbers");
    let s = 1.0 / n1 as f64 + 1.0 / n2 as f64;
    gauss_laguerre(48)
        .iter()
        .map(|&(t, w)| {
            let r = t / s;
            w * r.powi(2 + power as i32) * radial_poly(n1, l1, r) * radial_poly(n2, l2, r)
        })
        .sum::<f64>()
        / s
}

fn associated_legendre(l: u32, m: u32, x: f64) -> f64 {
    // P_m^m with the Condon-Shortley phase, then upward in l
    let mut pmm = 1.0;
    let s = (1.0 - x * x).max(0.0).sqrt();
    for i in 1..=m {
        pmm *= -((2 * i - 1) as f64) * s;
    }
    if l == m {
        return pmm;
    }
    let mut pm1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pm1;
    }
    let mut pll = 0.0;
    for ll in (m + 2)..=l {
        pll = (x * (2 * ll - 1) as f64 * pm1 - (ll + m - 1) as f64 * pmm) / (ll - m) as f64;
        pmm = pm1;
        pm1 = pll;
    }
    pll
}

fn ylm(l: u32, m: i32, cos_t: f64, phi: f64) -> C64 {
    let am = m.unsigned_abs();
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * factorial(l - am) / factorial(l + am)).sqrt();
    let y = C64::from_polar(norm * associated_legendre(l, am, cos_t), am as f64 * phi);
    if m >= 0 {
        y
    } else {
        let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
        y.conj() * sign
    }
}

/// Product grid on the unit sphere: Gauss-Legendre in cos(theta),
/// trapezoid in phi.
pub struct SphereGrid {
    /// `(cos theta, phi, weight)`
    pub points: Vec<(f64, f64, f64)>,
}

impl SphereGrid {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        let mut points = Vec::with_capacity(n_theta * n_phi);
        for (x, w) in gauss_legendre(n_theta) {
            for k in 0..n_phi {
                let phi = 2.0 * PI * k as f64 / n_phi as f64;
                points.push((x, phi, w * 2.0 * PI / n_phi as f64));
            }
        }
        SphereGrid { points }
    }

    pub fn direction(cos_t: f64, phi: f64) -> [f64; 3] {
        let s = (1.0 - cos_t * cos_t).max(0.0).sqrt();
        [s * phi.cos(), s * phi.sin(), cos_t]
    }
}

/// `int conj(Y_l1m1) Y_LM Y_l2m2 dOmega` on a 24 x 48 sphere grid.
pub fn angular_quadrature_gaunt(l1: u32, m1: i32, big_l: u32, big_m: i32, l2: u32, m2: i32) -> f64 {
    let grid = SphereGrid::new(24, 48);
    let mut sum = C64::new(0.0, 0.0);
    for &(x, phi, w) in &grid.points {
        sum += ylm(l1, m1, x, phi).conj() * ylm(big_l, big_m, x, phi) * ylm(l2, m2, x, phi) * w;
    }
    sum.re
}

#[derive(Clone, Copy)]
struct Nlm {
    n: u32,
    l: u32,
    m: i32,
}

/// Bound states with `n <= n_cap`, ordered by `n`, then `l`, then `m`.
pub fn hydrogen_basis(n_cap: u32) -> DenseBasis {
    let mut states = Vec::new();
    for n in 1..=n_cap {
        for l in 0..n {
            for m in -(l as i32)..=(l as i32) {
                states.push(Nlm { n, l, m });
            }
        }
    }
    let dim = states.len();
    let grid = SphereGrid::new(16, 32);
    let y: Vec<Vec<C64>> = states
        .iter()
        .map(|s| grid.points.iter().map(|&(x, phi, _)| ylm(s.l, s.m, x, phi)).collect())
        .collect();
    let dirs: Vec<[f64; 3]> = grid.points.iter().map(|&(x, phi, _)| SphereGrid::direction(x, phi)).collect();
    let angular = |a: usize, b: usize, f: &dyn Fn([f64; 3]) -> f64| -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        for (p, &(_, _, w)) in grid.points.iter().enumerate() {
            sum += y[a][p].conj() * y[b][p] * (f(dirs[p]) * w);
        }
        sum
    };
    let zero = || vec![vec![C64::new(0.0, 0.0); dim]; dim];
    let mut x: [CMatrix; 3] = std::array::from_fn(|_| zero());
    let mut l: [CMatrix; 3] = std::array::from_fn(|_| zero());
    let mut q: [[CMatrix; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| zero()));
    for (a, sa) in states.iter().enumerate() {
        for (b, sb) in states.iter().enumerate() {
            let r1 = quadrature_radial(sa.n, sa.l, sb.n, sb.l, 1);
            let r2 = quadrature_radial(sa.n, sa.l, sb.n, sb.l, 2);
            for i in 0..3 {
                x[i][a][b] = angular(a, b, &|d| d[i]) * r1;
            }
            for k in 0..3 {
                for j in 0..3 {
                    let kd = if k == j { 1.0 } else { 0.0 };
                    q[k][j][a][b] = angular(a, b, &|d| kd - d[k] * d[j]) * r2;
                }
            }
            if sa.n == sb.n && sa.l == sb.l {
                let lf = sa.l as f64;
                let (ma, mb) = (sa.m as f64, sb.m as f64);
                let raise = if sa.m == sb.m + 1 { (lf * (lf + 1.0) - mb * (mb + 1.0)).sqrt() } else { 0.0 };
                let lower = if sa.m + 1 == sb.m { (lf * (lf + 1.0) - mb * (mb - 1.0)).sqrt() } else { 0.0 };
                l[0][a][b] = C64::new(0.5 * (raise + lower), 0.0);
                l[1][a][b] = C64::new(0.0, -0.5 * (raise - lower));
                l[2][a][b] = C64::new(if sa.m == sb.m { ma } else { 0.0 }, 0.0);
            }
        }
    }
    DenseBasis {
        labels: states.iter().map(|s| format!("|{},{},{}>", s.n, s.l, s.m)).collect(),
        energies: states.iter().map(|s| -0.5 / (s.n as f64).powi(2)).collect(),
        x,
        l,
        q,
        ground: 0,
    }
}

/// Dense evaluation of both hydrogen parts at `omega` (rad/s), SI.
pub fn hydrogen_dense_si(
    basis: &DenseBasis,
    model: &HydrogenModel,
    omega: f64,
) -> Result<(ResponseTensor, ResponseTensor)> {
    let scale = model.scale();
    let coupling = DenseCoupling {
        e0: scale.vec_to_atomic(model.fields.e0, UnitKind::EField),
        b0: scale.vec_to_atomic(model.fields.b0, UnitKind::BField),
        kappa: model.asymmetry_factor(),
    };
    let w = scale.to_atomic(omega, UnitKind::Frequency);
    let gamma = scale.to_atomic(model.gamma, UnitKind::Frequency);
    let unit = scale.chi_unit();
    let to_si = |t: ResponseTensor| ResponseTensor::new(t.entries.map(|r| r.map(|z| z * unit)), omega);
    Ok((
        to_si(dense_chi_l(basis, &coupling, w, gamma)),
        to_si(dense_chi_quad(basis, &coupling, w, gamma)),
    ))
}

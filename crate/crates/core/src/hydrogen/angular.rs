//! Angular-momentum algebra: exact Wigner 3j symbols, Gaunt coefficients
//! and the fixed spherical -> Cartesian tables for `x_i` and `x_k x_j`.
//!
//! Condon-Shortley phases throughout. The 3j symbols are evaluated with the
//! Racah sum in exact big-integer arithmetic and only the final
//! `sign * sqrt(rational)` is converted to floating point.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64 as C64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A real number stored exactly as `sign * sqrt(square)`.
#[derive(Clone, Debug, PartialEq)]
struct SignedSqrt {
    /// `sign * value^2`; the sign of the symbol lives in the sign of this rational
    signed_square: BigRational,
}

impl SignedSqrt {
    fn zero() -> Self {
        SignedSqrt { signed_square: BigRational::zero() }
    }

    fn mul(&self, other: &SignedSqrt) -> SignedSqrt {
        SignedSqrt { signed_square: &self.signed_square * &other.signed_square }
    }

    fn to_f64(&self) -> f64 {
        let s = &self.signed_square;
        if s.is_zero() {
            return 0.0;
        }
        let mag = s.abs().to_f64().expect("finite rational").sqrt();
        if s.is_negative() { -mag } else { mag }
    }
}

fn factorial(n: i64) -> BigInt {
    debug_assert!(n >= 0);
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact 3j symbol for integer angular momenta.
fn wigner_3j_exact(j1: i64, j2: i64, j3: i64, m1: i64, m2: i64, m3: i64) -> SignedSqrt {
    if m1 + m2 + m3 != 0
        || m1.abs() > j1
        || m2.abs() > j2
        || m3.abs() > j3
        || j3 < (j1 - j2).abs()
        || j3 > j1 + j2
    {
        return SignedSqrt::zero();
    }

    // triangle coefficient and the m-dependent factorials, all under the root
    let triangle = BigRational::new(
        factorial(j1 + j2 - j3) * factorial(j1 - j2 + j3) * factorial(-j1 + j2 + j3),
        factorial(j1 + j2 + j3 + 1),
    );
    let m_part = factorial(j1 + m1)
        * factorial(j1 - m1)
        * factorial(j2 + m2)
        * factorial(j2 - m2)
        * factorial(j3 + m3)
        * factorial(j3 - m3);
    let radicand = triangle * BigRational::from_integer(m_part);

    let k_min = 0.max(j2 - j3 - m1).max(j1 - j3 + m2);
    let k_max = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(j3 - j2 + k + m1)
            * factorial(j3 - j1 + k - m2)
            * factorial(j1 + j2 - j3 - k)
            * factorial(j1 - k - m1)
            * factorial(j2 - k + m2);
        let term = BigRational::new(BigInt::one(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if (j1 - j2 - m3).rem_euclid(2) == 1 {
        sum = -sum;
    }
    let square = &sum * &sum * radicand;
    SignedSqrt { signed_square: if sum.is_negative() { -square } else { square } }
}

/// Wigner 3j symbol `(j1 j2 j3; m1 m2 m3)` for integer arguments.
pub fn wigner_3j(j1: i32, j2: i32, j3: i32, m1: i32, m2: i32, m3: i32) -> f64 {
    wigner_3j_exact(j1 as i64, j2 as i64, j3 as i64, m1 as i64, m2 as i64, m3 as i64).to_f64()
}

fn gaunt_exact(l1: i64, m1: i64, big_l: i64, big_m: i64, l2: i64, m2: i64) -> SignedSqrt {
    let parity = wigner_3j_exact(l1, big_l, l2, 0, 0, 0);
    if parity.signed_square.is_zero() {
        return SignedSqrt::zero();
    }
    let projection = wigner_3j_exact(l1, big_l, l2, -m1, big_m, m2);
    let dims = BigRational::from_integer(BigInt::from((2 * l1 + 1) * (2 * big_l + 1) * (2 * l2 + 1)));
    let mut g = parity.mul(&projection);
    g.signed_square *= dims;
    if m1.rem_euclid(2) == 1 {
        g.signed_square = -g.signed_square;
    }
    g
}

/// `∫ Y*_{l1 m1} Y_{L M} Y_{l2 m2} dΩ`.
///
/// Combinations outside the selection rules (or with `|m| > l`) give 0.
pub fn gaunt(l1: i32, m1: i32, big_l: i32, big_m: i32, l2: i32, m2: i32) -> f64 {
    if l1 < 0 || l2 < 0 || big_l < 0 || m1.abs() > l1 || m2.abs() > l2 || big_m.abs() > big_l {
        return 0.0;
    }
    gaunt_cached(l1, m1, big_l, big_m, l2, m2)
}

// Small arguments recur constantly in the response sums; memoize them.
const GAUNT_TABLE_LMAX: i32 = 6;

fn gaunt_cached(l1: i32, m1: i32, big_l: i32, big_m: i32, l2: i32, m2: i32) -> f64 {
    static TABLE: OnceLock<HashMap<[i32; 6], f64>> = OnceLock::new();
    if l1 > GAUNT_TABLE_LMAX || l2 > GAUNT_TABLE_LMAX || big_l > 2 {
        let g = gaunt_exact(l1 as i64, m1 as i64, big_l as i64, big_m as i64, l2 as i64, m2 as i64);
        return g.to_f64() / (4.0 * PI).sqrt();
    }
    let table = TABLE.get_or_init(|| {
        let mut t = HashMap::new();
        for l1 in 0..=GAUNT_TABLE_LMAX {
            for l2 in 0..=GAUNT_TABLE_LMAX {
                for big_l in 0..=2 {
                    for m1 in -l1..=l1 {
                        for m2 in -l2..=l2 {
                            let big_m = m1 - m2;
                            if big_m.abs() > big_l {
                                continue;
                            }
                            let g = gaunt_exact(l1 as i64, m1 as i64, big_l as i64, big_m as i64, l2 as i64, m2 as i64);
                            let v = g.to_f64() / (4.0 * PI).sqrt();
                            if v != 0.0 {
                                t.insert([l1, m1, big_l, big_m, l2, m2], v);
                            }
                        }
                    }
                }
            }
        }
        t
    });
    table.get(&[l1, m1, big_l, big_m, l2, m2]).copied().unwrap_or(0.0)
}

/// Cartesian axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }
}

/// `U[i]` lists `(q, c)` with `n_i = Σ_q c · sqrt(4π/3) Y_{1q}` for the unit
/// vector `n`, i.e. the fixed unitary map from spherical to Cartesian
/// components.
fn unit_vector_table(i: usize) -> &'static [(i32, C64)] {
    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;
    static X: [(i32, C64); 2] = [(1, C64 { re: -H, im: 0.0 }), (-1, C64 { re: H, im: 0.0 })];
    static Y: [(i32, C64); 2] = [(1, C64 { re: 0.0, im: H }), (-1, C64 { re: 0.0, im: H })];
    static Z: [(i32, C64); 1] = [(0, C64 { re: 1.0, im: 0.0 })];
    match i {
        0 => &X,
        1 => &Y,
        _ => &Z,
    }
}

/// Expansion of the unit-vector component `n_i` in `Y_{1q}`: `(q, coeff)`.
pub fn dipole_components(i: usize) -> Vec<(i32, C64)> {
    let s = (4.0 * PI / 3.0).sqrt();
    unit_vector_table(i).iter().map(|&(q, c)| (q, c * s)).collect()
}

/// Expansion of `n_k n_j` in `Y_{LM}` with `L ∈ {0, 2}`: `(L, M, coeff)`.
///
/// Built once from products `Y_{1q} Y_{1q'} = Σ_{LM} gaunt(L,M,1,q,1,q') Y_{LM}`.
pub fn second_moment_components(k: usize, j: usize) -> &'static [(i32, i32, C64)] {
    static TABLE: OnceLock<Vec<Vec<(i32, i32, C64)>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(9);
        for k in 0..3 {
            for j in 0..3 {
                let mut acc: HashMap<(i32, i32), C64> = HashMap::new();
                for &(q1, c1) in &dipole_components(k) {
                    for &(q2, c2) in &dipole_components(j) {
                        for big_l in [0, 1, 2] {
                            let big_m = q1 + q2;
                            let g = gaunt(big_l, big_m, 1, q1, 1, q2);
                            if g != 0.0 {
                                *acc.entry((big_l, big_m)).or_default() += c1 * c2 * g;
                            }
                        }
                    }
                }
                let mut terms: Vec<_> = acc
                    .into_iter()
                    .filter(|(_, c)| c.norm() > 1e-15)
                    .map(|((l, m), c)| (l, m, c))
                    .collect();
                terms.sort_by_key(|&(l, m, _)| (l, m));
                out.push(terms);
            }
        }
        out
    });
    &table[3 * k + j]
}

/// `∫ Y*_{la ma} n_i Y_{lb mb} dΩ`.
pub fn dipole_angular(la: i32, ma: i32, i: usize, lb: i32, mb: i32) -> C64 {
    if (la - lb).abs() != 1 {
        return C64::zero();
    }
    dipole_components(i)
        .into_iter()
        .map(|(q, c)| c * gaunt(la, ma, 1, q, lb, mb))
        .sum()
}

/// `∫ Y*_{la ma} n_k n_j Y_{lb mb} dΩ`.
pub fn second_moment_angular(la: i32, ma: i32, k: usize, j: usize, lb: i32, mb: i32) -> C64 {
    let dl = (la - lb).abs();
    if dl != 0 && dl != 2 {
        return C64::zero();
    }
    second_moment_components(k, j)
        .iter()
        .map(|&(big_l, big_m, c)| c * gaunt(la, ma, big_l, big_m, lb, mb))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    const FOUR_PI: f64 = 4.0 * PI;

    #[test]
    fn gaunt_orthonormality_cases() {
        let y00 = 1.0 / FOUR_PI.sqrt();
        assert!((gaunt(0, 0, 0, 0, 0, 0) - y00).abs() < 1e-15);
        assert!((gaunt(1, 0, 0, 0, 1, 0) - y00).abs() < 1e-15);
        assert!((gaunt(2, -1, 0, 0, 2, -1) - y00).abs() < 1e-15);
    }

    #[test]
    fn gaunt_known_value() {
        // sqrt(45/4π) · (1 2 1; 0 0 0)^2 = sqrt(45/4π) · 2/15
        let expected = 2.0 / (20.0 * PI).sqrt();
        assert!((gaunt(1, 0, 2, 0, 1, 0) - expected).abs() < 1e-15);
    }

    #[test]
    fn selection_rules_give_zero() {
        assert_eq!(gaunt(0, 0, 1, 0, 0, 0), 0.0); // parity
        assert_eq!(gaunt(0, 0, 2, 0, 1, 0), 0.0); // parity
        assert_eq!(gaunt(1, 1, 1, 0, 1, 0), 0.0); // m mismatch
        assert_eq!(gaunt(3, 0, 1, 0, 0, 0), 0.0); // triangle
        assert_eq!(gaunt(1, 2, 1, 0, 1, 0), 0.0); // |m| > l
    }

    #[test]
    fn three_j_reference_values() {
        // (1 1 0; 0 0 0) = -1/sqrt(3)
        assert!((wigner_3j(1, 1, 0, 0, 0, 0) + 1.0 / 3f64.sqrt()).abs() < 1e-15);
        // (1 1 2; 0 0 0) = sqrt(2/15)
        assert!((wigner_3j(1, 1, 2, 0, 0, 0) - (2.0f64 / 15.0).sqrt()).abs() < 1e-15);
        // (2 2 2; 0 0 0) = -sqrt(2/35)
        assert!((wigner_3j(2, 2, 2, 0, 0, 0) + (2.0f64 / 35.0).sqrt()).abs() < 1e-15);
        // (1 1 1; 1 -1 0) = 1/sqrt(6)
        assert!((wigner_3j(1, 1, 1, 1, -1, 0) - 1.0 / 6f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn three_j_orthogonality() {
        // Σ_{m1 m2} (j1 j2 j3; m1 m2 m3)^2 = 1/(2 j3 + 1)
        for (j1, j2) in [(1, 1), (2, 1), (3, 2), (4, 4)] {
            for j3 in (j1 - j2 as i32).abs()..=(j1 + j2) {
                for m3 in -j3..=j3 {
                    let mut s = 0.0;
                    for m1 in -j1..=j1 {
                        let m2 = -m1 - m3;
                        if m2.abs() <= j2 {
                            s += wigner_3j(j1, j2, j3, m1, m2, m3).powi(2);
                        }
                    }
                    assert!((s - 1.0 / (2 * j3 + 1) as f64).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn second_moment_trace_is_isotropic() {
        // Σ_k n_k n_k = 1, so the trace carries only Y00 = 1/sqrt(4π)
        let mut acc: HashMap<(i32, i32), C64> = HashMap::new();
        for k in 0..3 {
            for &(l, m, c) in second_moment_components(k, k) {
                *acc.entry((l, m)).or_default() += c;
            }
        }
        for ((l, _), c) in acc {
            if l == 0 {
                assert!((c.re - FOUR_PI.sqrt()).abs() < 1e-14 && c.im.abs() < 1e-14);
            } else {
                assert!(c.norm() < 1e-14);
            }
        }
    }

    #[test]
    fn dipole_angular_z_between_s_and_p() {
        let v = dipole_angular(0, 0, 2, 1, 0);
        assert!((v.re - 1.0 / 3f64.sqrt()).abs() < 1e-15 && v.im == 0.0);
        assert_eq!(dipole_angular(0, 0, 0, 1, 0), C64::zero());
    }
}

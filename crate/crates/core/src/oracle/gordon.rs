//! Closed-form hydrogen dipole radial integrals in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn factorial(n: i64) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, k| acc * int(k))
}

fn pow(base: &BigRational, e: i64) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        out *= base;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// Terminating Gauss hypergeometric series `2F1(a, b; c; z)`, `b <= 0`.
fn hyp2f1(a: i64, b: i64, c: i64, z: &BigRational) -> BigRational {
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let mut k = 0i64;
    loop {
        let num = int(a + k) * int(b + k);
        if num.is_zero() {
            break;
        }
        term = term * num / (int(c + k) * int(k + 1)) * z;
        sum += &term;
        k += 1;
    }
    sum
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().expect("finite rational")
}

/// `int_0^inf r^3 R_nl R_n'l' dr` for `l' = l - 1`, `n != n'`.
///
/// Returns `None` unless the quantum numbers describe such a pair.
fn gordon_lower(n: i64, l: i64, np: i64) -> Option<f64> {
    if l < 1 || l >= n || l - 1 >= np || n == np {
        return None;
    }
    let nr = n - l - 1;
    let npr = np - l;
    let diff = int(n - np);
    let sum = int(n + np);
    let z = -(int(4 * n * np)) / (&diff * &diff);
    let f1 = hyp2f1(-nr, -npr, 2 * l, &z);
    let f2 = hyp2f1(-nr - 2, -npr, 2 * l, &z);
    let ratio = &diff / &sum;
    let bracket = f1 - &ratio * &ratio * f2;
    let sign = if (np - l) % 2 == 0 { int(1) } else { int(-1) };
    let rational = sign / (int(4) * factorial(2 * l - 1))
        * pow(&int(4 * n * np), l + 1)
        * pow(&diff, n + np - 2 * l - 2)
        / pow(&sum, n + np)
        * bracket;
    let root_sq = factorial(n + l) * factorial(np + l - 1) / (factorial(n - l - 1) * factorial(np - l));
    let magnitude = to_f64(&rational.abs()) * to_f64(&root_sq).sqrt();
    Some(if rational.is_negative() { -magnitude } else { magnitude })
}

/// Dipole radial integral `int r^3 R_n1l1 R_n2l2 dr` between different
/// shells, `|l1 - l2| = 1`.
pub fn gordon_dipole(n1: u32, l1: u32, n2: u32, l2: u32) -> Option<f64> {
    let (n1, l1, n2, l2) = (n1 as i64, l1 as i64, n2 as i64, l2 as i64);
    if l2 + 1 == l1 {
        gordon_lower(n1, l1, n2)
    } else if l1 + 1 == l2 {
        gordon_lower(n2, l2, n1)
    } else {
        None
    }
}

/// Same-shell dipole radial integral, `l1 = l2 ± 1`:
/// `-(3/2) n sqrt(n^2 - l^2)` with `l = max(l1, l2)`.
pub fn same_shell_dipole(n: u32, l1: u32, l2: u32) -> Option<f64> {
    if l1.abs_diff(l2) != 1 || l1.max(l2) >= n {
        return None;
    }
    let nf = n as f64;
    let l = l1.max(l2) as f64;
    Some(-1.5 * nf * (nf * nf - l * l).sqrt())
}

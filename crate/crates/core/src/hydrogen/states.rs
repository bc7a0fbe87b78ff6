//! Hydrogen bound states in atomic units: energies, radial functions,
//! radial integrals and the matrix elements of `x_i`, `L_i` and the
//! quadrupole coupling `x^2 δ_kj - x_k x_j`.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};

use num_complex::Complex64 as C64;
use num_traits::Zero;

use super::angular::{dipole_angular, second_moment_angular};
use crate::error::{domain, Error, Result};
use crate::quadrature;

/// Bound state `|n, l, m⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl HState {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if n < 1 {
            return domain(format!("principal quantum number must be >= 1, got {n}"));
        }
        if l >= n {
            return domain(format!("l = {l} not below n = {n}"));
        }
        if m.unsigned_abs() > l {
            return domain(format!("|m| = {} exceeds l = {l}", m.unsigned_abs()));
        }
        Ok(HState { n, l, m })
    }

    pub fn ground() -> Self {
        HState { n: 1, l: 0, m: 0 }
    }

    pub fn energy(&self) -> f64 {
        -0.5 / (self.n as f64).powi(2)
    }

    /// All states with `n <= n_max`, ordered by `n`, then `l`, then `m`.
    pub fn all_up_to(n_max: u32) -> Vec<HState> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            for l in 0..n {
                for m in -(l as i32)..=(l as i32) {
                    out.push(HState { n, l, m });
                }
            }
        }
        out
    }
}

impl fmt::Display for HState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{}⟩", self.n, self.l, self.m)
    }
}

/// `E_n = E_1 / n^2` with `E_1 = -1/2` hartree.
pub fn energy(n: u32) -> Result<f64> {
    if n < 1 {
        return domain(format!("principal quantum number must be >= 1, got {n}"));
    }
    Ok(-0.5 / (n as f64).powi(2))
}

fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

fn check_nl(n: u32, l: u32) -> Result<()> {
    if n < 1 || l >= n {
        return domain(format!("invalid hydrogen quantum numbers n = {n}, l = {l}"));
    }
    Ok(())
}

/// Generalized Laguerre polynomial `L_k^(alpha)(x)` by upward recurrence.
fn laguerre(k: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for i in 1..k {
        let i = i as f64;
        let next = ((2.0 * i + 1.0 + alpha - x) * cur - (i + alpha) * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Radial function evaluator with the normalization precomputed.
#[derive(Clone, Copy, Debug)]
struct Radial {
    n: u32,
    l: u32,
    norm: f64,
}

impl Radial {
    fn new(n: u32, l: u32) -> Self {
        let nf = n as f64;
        let ln_norm = 0.5
            * (3.0 * (2.0 / nf).ln() + ln_factorial(n - l - 1) - (2.0 * nf).ln() - ln_factorial(n + l));
        Radial { n, l, norm: ln_norm.exp() }
    }

    fn eval(&self, r: f64) -> f64 {
        let rho = 2.0 * r / self.n as f64;
        self.norm
            * rho.powi(self.l as i32)
            * (-0.5 * rho).exp()
            * laguerre(self.n - self.l - 1, (2 * self.l + 1) as f64, rho)
    }
}

/// Normalized `R_nl(r)` in a0^{-3/2}, `r` in a0.
pub fn radial_wavefunction(n: u32, l: u32, r: f64) -> Result<f64> {
    check_nl(n, l)?;
    if !(r >= 0.0) {
        return domain(format!("radius must be non-negative, got {r}"));
    }
    Ok(Radial::new(n, l).eval(r))
}

/// Relative tolerance of every radial quadrature.
pub const RADIAL_REL_TOL: f64 = 1e-12;

/// `∫_0^∞ R_{n1 l1} r^power R_{n2 l2} r^2 dr`, by adaptive Gauss-Kronrod on
/// `[0, 40 n^2]` with `n = max(n1, n2)`.
///
/// `power` 0 is the radial overlap, used by the angular-momentum elements.
pub fn radial_integral(n1: u32, l1: u32, n2: u32, l2: u32, power: u32) -> Result<f64> {
    check_nl(n1, l1)?;
    check_nl(n2, l2)?;
    if power > 2 {
        return domain(format!("radial power must be 0, 1 or 2, got {power}"));
    }
    let (f1, f2) = (Radial::new(n1, l1), Radial::new(n2, l2));
    let p = power as i32 + 2;
    let integrand = |r: f64| f1.eval(r) * f2.eval(r) * r.powi(p);

    let n_big = n1.max(n2) as f64;
    let n_small = n1.min(n2) as f64;
    let r_max = 40.0 * n_big * n_big;
    // polynomial degree of the integrand and its exponential decay rate
    let degree = (n1 + n2 + power) as f64;
    let decay = 1.0 / n1 as f64 + 1.0 / n2 as f64;
    let bulk_end = (2.0 * (degree + 20.0) / decay).min(r_max);
    let width = 0.5 * n_small;
    let panels = (bulk_end / width).ceil().max(1.0) as usize;
    let mut breaks: Vec<f64> = (0..=panels).map(|k| bulk_end * k as f64 / panels as f64).collect();
    if bulk_end < r_max {
        breaks.push(r_max);
    }
    let res = quadrature::integrate(integrand, &breaks, RADIAL_REL_TOL, 20_000);
    Ok(res.value)
}

/// Cache key, stored with the lexicographically smaller `(n, l)` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RadialKey {
    pub n1: u32,
    pub l1: u32,
    pub n2: u32,
    pub l2: u32,
    pub power: u32,
}

impl RadialKey {
    pub fn new(n1: u32, l1: u32, n2: u32, l2: u32, power: u32) -> Self {
        if (n1, l1) <= (n2, l2) {
            RadialKey { n1, l1, n2, l2, power }
        } else {
            RadialKey { n1: n2, l1: l2, n2: n1, l2: l1, power }
        }
    }
}

const CACHE_HEADER: &str = "# me-response radial-cache v1";

/// Radial integrals warmed up once for a given `n_max`, then read-only.
///
/// Lookups that miss the table are computed on the spot and not stored.
#[derive(Clone, Debug, Default)]
pub struct RadialCache {
    values: HashMap<RadialKey, f64>,
}

impl RadialCache {
    pub fn empty() -> Self {
        RadialCache::default()
    }

    /// Every integral the response sums touch for principal quantum numbers
    /// up to `n_max`: dipole integrals `1s-np`, `np-n's`, `np-n'd`; second
    /// moments `n's/n'p/n'd - np` and `n's/n'd - 1s`; `np` overlaps.
    pub fn build(n_max: u32) -> Result<Self> {
        if n_max < 1 {
            return domain("n_max must be >= 1");
        }
        let mut keys = Vec::new();
        for n in 2..=n_max {
            keys.push(RadialKey::new(1, 0, n, 1, 1));
            keys.push(RadialKey::new(n, 1, n, 1, 0));
            for n1 in 1..=n_max {
                for l1 in [0u32, 2] {
                    if l1 < n1 {
                        keys.push(RadialKey::new(n, 1, n1, l1, 1));
                    }
                }
                for l1 in [0u32, 1, 2] {
                    if l1 < n1 {
                        keys.push(RadialKey::new(n1, l1, n, 1, 2));
                    }
                }
            }
        }
        for n1 in 1..=n_max {
            for l1 in [0u32, 2] {
                if l1 < n1 {
                    keys.push(RadialKey::new(n1, l1, 1, 0, 2));
                }
            }
        }
        keys.sort();
        keys.dedup();
        let mut values = HashMap::with_capacity(keys.len());
        for k in keys {
            values.insert(k, radial_integral(k.n1, k.l1, k.n2, k.l2, k.power)?);
        }
        Ok(RadialCache { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, n1: u32, l1: u32, n2: u32, l2: u32, power: u32) -> bool {
        self.values.contains_key(&RadialKey::new(n1, l1, n2, l2, power))
    }

    pub fn get(&self, n1: u32, l1: u32, n2: u32, l2: u32, power: u32) -> Result<f64> {
        match self.values.get(&RadialKey::new(n1, l1, n2, l2, power)) {
            Some(&v) => Ok(v),
            None => radial_integral(n1, l1, n2, l2, power),
        }
    }

    /// Text dump: a version header line, then one `n1 l1 n2 l2 power value`
    /// record per line, sorted by key.
    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "{CACHE_HEADER}")?;
        let mut keys: Vec<_> = self.values.keys().copied().collect();
        keys.sort();
        for k in keys {
            writeln!(w, "{} {} {} {} {} {:e}", k.n1, k.l1, k.n2, k.l2, k.power, self.values[&k])?;
        }
        Ok(())
    }

    pub fn read_from(r: impl BufRead) -> Result<Self> {
        let mut lines = r.lines();
        match lines.next() {
            Some(Ok(h)) if h.trim() == CACHE_HEADER => {}
            _ => return Err(Error::Config(format!("radial cache must start with '{CACHE_HEADER}'"))),
        }
        let mut values = HashMap::new();
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Config(format!("radial cache line {}: '{line}'", lineno + 2));
            if fields.len() != 6 {
                return Err(bad());
            }
            let ints: Vec<u32> = fields[..5].iter().map(|s| s.parse().map_err(|_| bad())).collect::<Result<_>>()?;
            let value: f64 = fields[5].parse().map_err(|_| bad())?;
            values.insert(RadialKey::new(ints[0], ints[1], ints[2], ints[3], ints[4]), value);
        }
        Ok(RadialCache { values })
    }
}

/// Matrix elements of `x_i`, `L_i` and `x^2 δ_kj - x_k x_j` between hydrogen
/// states, assembled from radial integrals and Gaunt coefficients.
#[derive(Clone, Debug, Default)]
pub struct MatrixElements {
    cache: RadialCache,
}

impl MatrixElements {
    pub fn new(cache: RadialCache) -> Self {
        MatrixElements { cache }
    }

    pub fn with_n_max(n_max: u32) -> Result<Self> {
        Ok(MatrixElements::new(RadialCache::build(n_max)?))
    }

    pub fn cache(&self) -> &RadialCache {
        &self.cache
    }

    fn radial(&self, a: HState, b: HState, power: u32) -> f64 {
        self.cache.get(a.n, a.l, b.n, b.l, power).expect("states are valid by construction")
    }

    /// `⟨a| x_i |b⟩` in a0.
    pub fn position_element(&self, a: HState, i: usize, b: HState) -> C64 {
        let ang = dipole_angular(a.l as i32, a.m, i, b.l as i32, b.m);
        if ang.is_zero() {
            return C64::zero();
        }
        ang * self.radial(a, b, 1)
    }

    /// `⟨a| L_i |b⟩` in units of hbar.
    pub fn angular_momentum_element(&self, a: HState, i: usize, b: HState) -> C64 {
        if a.l != b.l {
            return C64::zero();
        }
        let ang = angular_momentum_angular(a.l, a.m, i, b.m);
        if ang.is_zero() {
            return C64::zero();
        }
        ang * self.radial(a, b, 0)
    }

    /// `⟨a| x^2 δ_kj - x_k x_j |b⟩` in a0^2.
    pub fn quadrupole_element(&self, a: HState, k: usize, j: usize, b: HState) -> C64 {
        let mut ang = -second_moment_angular(a.l as i32, a.m, k, j, b.l as i32, b.m);
        if k == j && a.l == b.l && a.m == b.m {
            ang += 1.0;
        }
        if ang.is_zero() {
            return C64::zero();
        }
        ang * self.radial(a, b, 2)
    }
}

/// Angular part of `⟨l ma| L_i |l mb⟩` from the ladder algebra.
pub fn angular_momentum_angular(l: u32, ma: i32, i: usize, mb: i32) -> C64 {
    let l = l as f64;
    let ladder = |m: i32, up: bool| -> f64 {
        let m = m as f64;
        let s = if up { m + 1.0 } else { m - 1.0 };
        (l * (l + 1.0) - m * s).max(0.0).sqrt()
    };
    let raise = if ma == mb + 1 { ladder(mb, true) } else { 0.0 };
    let lower = if ma == mb - 1 { ladder(mb, false) } else { 0.0 };
    match i {
        0 => C64::new(0.5 * (raise + lower), 0.0),
        1 => C64::new(0.0, -0.5 * (raise - lower)),
        _ => {
            if ma == mb {
                C64::new(mb as f64, 0.0)
            } else {
                C64::zero()
            }
        }
    }
}

//! 3x3 complex response tensors.
//!
//! Index convention: `entries[i][j]` couples the induced dipole along axis
//! `i` to the probe magnetic field along axis `j`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{domain, Result};
use crate::units::CODATA;

pub type Matrix3 = [[C64; 3]; 3];

pub const ZERO3: Matrix3 = [[C64 { re: 0.0, im: 0.0 }; 3]; 3];

/// Response tensor at one angular frequency `omega` (rad/s), SI entries
/// (C m per T).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResponseTensor {
    pub entries: Matrix3,
    pub omega: f64,
}

impl ResponseTensor {
    pub fn zeros(omega: f64) -> Self {
        ResponseTensor { entries: ZERO3, omega }
    }

    pub fn new(entries: Matrix3, omega: f64) -> Self {
        ResponseTensor { entries, omega }
    }

    pub fn from_fn(omega: f64, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = ZERO3;
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = f(i, j);
            }
        }
        ResponseTensor { entries, omega }
    }

    /// Entrywise sum. Both tensors must belong to the same frequency.
    pub fn checked_add(&self, other: &ResponseTensor) -> Result<ResponseTensor> {
        if self.omega != other.omega {
            return domain(format!(
                "cannot add tensors at different frequencies ({} vs {})",
                self.omega, other.omega
            ));
        }
        Ok(ResponseTensor::from_fn(self.omega, |i, j| self.entries[i][j] + other.entries[i][j]))
    }

    pub fn scale(&self, factor: f64) -> ResponseTensor {
        ResponseTensor::from_fn(self.omega, |i, j| self.entries[i][j] * factor)
    }

    pub fn conj(&self) -> ResponseTensor {
        ResponseTensor::from_fn(self.omega, |i, j| self.entries[i][j].conj())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_ij |a_ij - b_ij| / max_ij |b_ij|`, with `b = reference`.
    pub fn rel_diff(&self, reference: &ResponseTensor) -> f64 {
        let mut diff: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                diff = diff.max((self.entries[i][j] - reference.entries[i][j]).norm());
            }
        }
        let scale = reference.max_abs();
        if scale == 0.0 {
            if diff == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            diff / scale
        }
    }
}

/// Symmetric and antisymmetric parts, `t = sym + antisym`.
///
/// Both halves are exact (`sym_ij == sym_ji`, `antisym_ij == -antisym_ji`);
/// their sum reproduces `t` up to one rounding per entry, and bit-for-bit
/// whenever `t_ij ± t_ji` are themselves exact.
pub fn split_sym_antisym(t: &ResponseTensor) -> (ResponseTensor, ResponseTensor) {
    let e = &t.entries;
    let sym = ResponseTensor::from_fn(t.omega, |i, j| (e[i][j] + e[j][i]) * 0.5);
    let anti = ResponseTensor::from_fn(t.omega, |i, j| (e[i][j] - e[j][i]) * 0.5);
    (sym, anti)
}

/// The bi-anisotropic entry chi_12 (dipole along x, probe field along y).
pub fn bianisotropic_12(t: &ResponseTensor) -> C64 {
    t.entries[0][1]
}

/// `t / (eps0 c V)` entrywise, for a volume `V` in m^3.
pub fn dimensionless(t: &ResponseTensor, volume: f64) -> Result<Matrix3> {
    if !(volume.is_finite() && volume > 0.0) {
        return domain(format!("volume must be positive, got {volume}"));
    }
    let denom = CODATA.eps0 * CODATA.c_light * volume;
    Ok(t.entries.map(|row| row.map(|z| z / denom)))
}

/// Ground-state hydrogen volume `(4/3) pi a0^3`.
pub fn atomic_volume() -> f64 {
    let a = CODATA.bohr_radius;
    4.0 / 3.0 * PI * a * a * a
}

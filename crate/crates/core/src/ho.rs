//! Closed-form response of a charged pair bound by `V = m omega0^2 x^2 / 2`.
//!
//! Everything here is plain SI; the formulas are dimensionally consistent
//! without any factor of `4 pi eps0`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{domain, Error, Result};
use crate::tensor::ResponseTensor;
use crate::units::{ParticlePair, StaticFieldConfig, CODATA};

/// Frequencies with `|omega^2 - omega0^2| < POLE_WINDOW * omega0^2` are poles.
pub const POLE_WINDOW: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HOModel {
    pub pair: ParticlePair,
    /// trap frequency, rad/s
    pub omega0: f64,
    pub fields: StaticFieldConfig,
}

impl HOModel {
    pub fn new(pair: ParticlePair, omega0: f64, fields: StaticFieldConfig) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return domain(format!("omega0 must be positive, got {omega0}"));
        }
        Ok(HOModel { pair, omega0, fields })
    }

    /// Electron-proton pair in a trap with omega0 = 1e16 rad/s and the
    /// reference bias fields.
    pub fn reference() -> Self {
        HOModel::new(ParticlePair::hydrogen(), 1.0e16, StaticFieldConfig::reference()).expect("valid")
    }

    /// `e^4 m_delta^2 / (omega0^2 m^3 M^2)`
    pub fn prefactor(&self) -> f64 {
        let p = &self.pair;
        let (e2, md, m, big_m) = (p.charge() * p.charge(), p.m_delta(), p.reduced_mass(), p.total_mass());
        e2 * e2 * md * md / (self.omega0 * self.omega0 * m * m * m * big_m * big_m)
    }

    /// `e^2 / (4 pi eps0 m omega0^2)` times `factor`, the oscillator analogue
    /// of the atomic volume used to make chi dimensionless.
    pub fn volume(&self, factor: f64) -> f64 {
        let p = &self.pair;
        p.charge() * p.charge() / (CODATA.eps0 * p.reduced_mass() * self.omega0 * self.omega0) / (4.0 * PI) * factor
    }

    fn check(&self, omega: f64) -> Result<()> {
        if !omega.is_finite() {
            return domain(format!("frequency must be finite, got {omega}"));
        }
        let w02 = self.omega0 * self.omega0;
        if (omega * omega - w02).abs() < POLE_WINDOW * w02 {
            return Err(Error::Pole { omega });
        }
        Ok(())
    }
}

fn e_dot_b(f: &StaticFieldConfig) -> f64 {
    (0..3).map(|k| f.e0[k] * f.b0[k]).sum()
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

fn real_tensor(omega: f64, f: impl Fn(usize, usize) -> f64) -> ResponseTensor {
    ResponseTensor::from_fn(omega, |i, j| C64::new(f(i, j), 0.0))
}

/// Angular-momentum part:
/// `K (E_i B_j - (E.B) delta_ij) (omega^2 + omega0^2) / (omega0^2 - omega^2)^2`.
pub fn ho_chi_l(model: &HOModel, omega: f64) -> Result<ResponseTensor> {
    model.check(omega)?;
    let w02 = model.omega0 * model.omega0;
    let w2 = omega * omega;
    let g = model.prefactor() * (w2 + w02) / ((w02 - w2) * (w02 - w2));
    let f = &model.fields;
    let eb = e_dot_b(f);
    Ok(real_tensor(omega, |i, j| g * (f.e0[i] * f.b0[j] - eb * delta(i, j))))
}

/// Quadrupole part:
/// `-(K/4) (4 E_i B_j - E_j B_i - (E.B) delta_ij) / (omega0^2 - omega^2)`.
pub fn ho_chi_quad(model: &HOModel, omega: f64) -> Result<ResponseTensor> {
    model.check(omega)?;
    let w02 = model.omega0 * model.omega0;
    let g = -0.25 * model.prefactor() / (w02 - omega * omega);
    let f = &model.fields;
    let eb = e_dot_b(f);
    Ok(real_tensor(omega, |i, j| {
        g * (4.0 * f.e0[i] * f.b0[j] - f.e0[j] * f.b0[i] - eb * delta(i, j))
    }))
}

pub fn ho_chi_total(model: &HOModel, omega: f64) -> Result<ResponseTensor> {
    ho_chi_l(model, omega)?.checked_add(&ho_chi_quad(model, omega)?)
}

/// The combined response written as one bracket,
/// `-K [ -(w^2+w0^2)/(w0^2-w^2)^2 (E_i B_j - E.B d_ij)
///       + (E_i B_j - E_j B_i / 4 - E.B d_ij / 4) / (w0^2-w^2) ]`.
pub fn ho_chi_final_form(model: &HOModel, omega: f64) -> Result<ResponseTensor> {
    model.check(omega)?;
    let w02 = model.omega0 * model.omega0;
    let w2 = omega * omega;
    let k = model.prefactor();
    let double = (w2 + w02) / ((w02 - w2) * (w02 - w2));
    let single = 1.0 / (w02 - w2);
    let f = &model.fields;
    let eb = e_dot_b(f);
    Ok(real_tensor(omega, |i, j| {
        let eibj = f.e0[i] * f.b0[j];
        let ejbi = f.e0[j] * f.b0[i];
        let d = delta(i, j);
        -k * (-double * (eibj - eb * d) + single * (eibj - 0.25 * ejbi - 0.25 * eb * d))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::derive_pair;

    fn model_with(e0: [f64; 3], b0: [f64; 3]) -> HOModel {
        HOModel { fields: StaticFieldConfig::new(e0, b0).unwrap(), ..HOModel::reference() }
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn static_l_entry() {
        let m = model_with([2.0e5, 0.0, 0.0], [0.0, 3.0, 0.0]);
        let chi = ho_chi_l(&m, 0.0).unwrap();
        let expect = m.prefactor() * 2.0e5 * 3.0 / m.omega0.powi(2);
        assert!(close(chi.entries[0][1].re, expect, 1e-14));
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) != (0, 1) {
                    assert_eq!(chi.entries[i][j], C64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn l_entry_at_ten_omega0() {
        let m = model_with([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let chi = ho_chi_l(&m, 10.0 * m.omega0).unwrap();
        let expect = m.prefactor() * 101.0 / 9801.0 / m.omega0.powi(2);
        assert!(close(chi.entries[0][1].re, expect, 1e-14));
    }

    #[test]
    fn static_quad_entries() {
        let m = model_with([1.0e5, 0.0, 0.0], [0.0, 10.0, 0.0]);
        let chi = ho_chi_quad(&m, 0.0).unwrap();
        let unit = m.prefactor() * 1.0e6 / m.omega0.powi(2);
        assert!(close(chi.entries[0][1].re, -unit, 1e-14));
        assert!(close(chi.entries[1][0].re, 0.25 * unit, 1e-14));
    }

    #[test]
    fn parallel_fields_quad_diagonal() {
        let m = model_with([0.0, 0.0, 2.0], [0.0, 0.0, 5.0]);
        let chi = ho_chi_quad(&m, 0.0).unwrap();
        let unit = -0.25 * m.prefactor() * 10.0 / m.omega0.powi(2);
        assert!(close(chi.entries[2][2].re, 2.0 * unit, 1e-14));
        assert!(close(chi.entries[0][0].re, -unit, 1e-14));
        assert!(close(chi.entries[1][1].re, -unit, 1e-14));
        assert_eq!(chi.entries[0][1].re, 0.0);
    }

    #[test]
    fn equal_masses_give_zero() {
        let pair = derive_pair(1.0e-30, 1.0e-30, CODATA.e_charge).unwrap();
        let m = HOModel { pair, ..HOModel::reference() };
        for w in [0.0, 0.3e16, 5.0e16] {
            assert!(ho_chi_total(&m, w).unwrap().is_zero());
            assert!(ho_chi_final_form(&m, w).unwrap().is_zero());
        }
    }

    #[test]
    fn static_total_is_sum_of_static_parts() {
        let m = HOModel::reference();
        let total = ho_chi_total(&m, 0.0).unwrap();
        let l = ho_chi_l(&m, 0.0).unwrap();
        let q = ho_chi_quad(&m, 0.0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(total.entries[i][j], l.entries[i][j] + q.entries[i][j]);
            }
        }
    }

    #[test]
    fn pole_is_reported() {
        let m = HOModel::reference();
        let w = m.omega0 * (1.0 + 1e-11);
        assert!(matches!(ho_chi_l(&m, w), Err(Error::Pole { .. })));
        assert!(matches!(ho_chi_quad(&m, -m.omega0), Err(Error::Pole { .. })));
        assert!(ho_chi_total(&m, m.omega0 * 1.001).is_ok());
    }

    #[test]
    fn rejects_bad_trap() {
        assert!(HOModel::new(ParticlePair::hydrogen(), 0.0, StaticFieldConfig::reference()).is_err());
        assert!(HOModel::new(ParticlePair::hydrogen(), f64::NAN, StaticFieldConfig::reference()).is_err());
    }
}

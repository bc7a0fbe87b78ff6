//! Physical constants, SI <-> atomic unit conversion and two-body kinematics.
//!
//! Internally every sum runs in Hartree atomic units (hbar = e = m = 4 pi eps0 = 1).
//! SI values enter and leave through [`to_atomic`], [`from_atomic`] and
//! [`AtomicScale`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// A fixed table of CODATA 2018 values, SI units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    /// reduced Planck constant (J s)
    pub hbar: f64,
    /// elementary charge (C)
    pub e_charge: f64,
    /// vacuum permittivity (F m^-1)
    pub eps0: f64,
    /// speed of light (m s^-1)
    pub c_light: f64,
    /// electron mass (kg)
    pub m_electron: f64,
    /// Bohr radius (m)
    pub bohr_radius: f64,
    /// Hartree energy (J)
    pub hartree: f64,
}

pub const CODATA: Constants = Constants {
    hbar: 1.054571817e-34,
    e_charge: 1.602176634e-19,
    eps0: 8.8541878128e-12,
    c_light: 299792458.0,
    m_electron: 9.1093837015e-31,
    bohr_radius: 5.29177210903e-11,
    hartree: 4.3597447222071e-18,
};

/// proton mass (kg)
pub const PROTON_MASS: f64 = 1.67262192369e-27;

/// electron volt (J)
pub const ELECTRON_VOLT: f64 = 1.602176634e-19;

impl Constants {
    /// Bohr radius rebuilt from hbar, e, eps0 and m_e.
    pub fn derived_bohr_radius(&self) -> f64 {
        4.0 * PI * self.eps0 * self.hbar * self.hbar / (self.m_electron * self.e_charge * self.e_charge)
    }

    /// Hartree energy rebuilt from hbar, e, eps0 and m_e.
    pub fn derived_hartree(&self) -> f64 {
        let k = self.e_charge * self.e_charge / (4.0 * PI * self.eps0);
        self.m_electron * k * k / (self.hbar * self.hbar)
    }
}

/// Physical quantities that can be moved between SI and atomic units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnitKind {
    /// m <-> a0
    Length,
    /// J <-> hartree
    Energy,
    /// rad/s <-> hartree/hbar
    Frequency,
    /// V/m <-> hartree/(e a0)
    EField,
    /// T <-> hbar/(e a0^2)
    BField,
}

impl UnitKind {
    pub const ALL: [UnitKind; 5] = [
        UnitKind::Length,
        UnitKind::Energy,
        UnitKind::Frequency,
        UnitKind::EField,
        UnitKind::BField,
    ];
}

impl FromStr for UnitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "length" => Ok(UnitKind::Length),
            "energy" => Ok(UnitKind::Energy),
            "frequency" => Ok(UnitKind::Frequency),
            "efield" => Ok(UnitKind::EField),
            "bfield" => Ok(UnitKind::BField),
            other => domain(format!("unknown unit kind '{other}'")),
        }
    }
}

impl fmt::Display for UnitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            UnitKind::Length => "length",
            UnitKind::Energy => "energy",
            UnitKind::Frequency => "frequency",
            UnitKind::EField => "efield",
            UnitKind::BField => "bfield",
        };
        f.write_str(s)
    }
}

/// Atomic units built on a particle of mass `mass_ratio * m_e`.
///
/// With `mass_ratio = 1` these are the ordinary Hartree units. A hydrogen
/// atom with a finite-mass nucleus is the standard problem in units whose
/// mass is the reduced mass, so lengths shrink by `1/mass_ratio` and
/// energies grow by `mass_ratio`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtomicScale {
    pub mass_ratio: f64,
}

impl AtomicScale {
    pub const ELECTRON: AtomicScale = AtomicScale { mass_ratio: 1.0 };

    pub fn new(mass_ratio: f64) -> Result<Self> {
        if !(mass_ratio.is_finite() && mass_ratio > 0.0) {
            return domain(format!("mass ratio must be positive, got {mass_ratio}"));
        }
        Ok(AtomicScale { mass_ratio })
    }

    /// SI size of one atomic unit of `kind`.
    pub fn unit(&self, kind: UnitKind) -> f64 {
        let c = &CODATA;
        let mu = self.mass_ratio;
        match kind {
            UnitKind::Length => c.bohr_radius / mu,
            UnitKind::Energy => c.hartree * mu,
            UnitKind::Frequency => c.hartree * mu / c.hbar,
            UnitKind::EField => c.hartree * mu * mu / (c.e_charge * c.bohr_radius),
            UnitKind::BField => mu * mu * c.hbar / (c.e_charge * c.bohr_radius * c.bohr_radius),
        }
    }

    /// SI size (C m / T) of one atomic unit of magneto-electric response,
    /// `e^2 a^3 / hbar`.
    pub fn chi_unit(&self) -> f64 {
        let c = &CODATA;
        let a = self.unit(UnitKind::Length);
        c.e_charge * c.e_charge * a * a * a / c.hbar
    }

    pub fn to_atomic(&self, value: f64, kind: UnitKind) -> f64 {
        value / self.unit(kind)
    }

    pub fn from_atomic(&self, value: f64, kind: UnitKind) -> f64 {
        value * self.unit(kind)
    }

    pub fn vec_to_atomic(&self, v: [f64; 3], kind: UnitKind) -> [f64; 3] {
        v.map(|x| self.to_atomic(x, kind))
    }
}

/// SI -> Hartree atomic units.
pub fn to_atomic(value: f64, kind: UnitKind) -> f64 {
    AtomicScale::ELECTRON.to_atomic(value, kind)
}

/// Hartree atomic units -> SI.
pub fn from_atomic(value: f64, kind: UnitKind) -> f64 {
    AtomicScale::ELECTRON.from_atomic(value, kind)
}

/// Two opposite charges `+e` and `-e` with masses `m1`, `m2`.
///
/// The derived total mass `M`, reduced mass `m` and mass asymmetry
/// `m_delta` are computed once on construction and stored.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParticlePair {
    m1: f64,
    m2: f64,
    e: f64,
    total_mass: f64,
    reduced_mass: f64,
    m_delta: f64,
}

impl ParticlePair {
    pub fn m1(&self) -> f64 {
        self.m1
    }
    pub fn m2(&self) -> f64 {
        self.m2
    }
    pub fn charge(&self) -> f64 {
        self.e
    }
    /// `M = m1 + m2`
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }
    /// `m = m1 m2 / M`
    pub fn reduced_mass(&self) -> f64 {
        self.reduced_mass
    }
    /// `m_delta = m2 - m1`
    pub fn m_delta(&self) -> f64 {
        self.m_delta
    }

    /// Electron bound to a proton.
    pub fn hydrogen() -> Self {
        derive_pair(CODATA.m_electron, PROTON_MASS, CODATA.e_charge).expect("positive constants")
    }

    /// Same pair with masses and charge expressed in atomic units (m_e, e).
    pub fn in_atomic_units(&self) -> AtomicPair {
        let me = CODATA.m_electron;
        AtomicPair {
            total_mass: self.total_mass / me,
            reduced_mass: self.reduced_mass / me,
            m_delta: self.m_delta / me,
            charge: self.e / CODATA.e_charge,
        }
    }
}

/// Pair kinematics in atomic units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtomicPair {
    pub total_mass: f64,
    pub reduced_mass: f64,
    pub m_delta: f64,
    pub charge: f64,
}

pub fn derive_pair(m1: f64, m2: f64, e: f64) -> Result<ParticlePair> {
    for (name, v) in [("m1", m1), ("m2", m2), ("e", e)] {
        if !(v.is_finite() && v > 0.0) {
            return domain(format!("{name} must be positive and finite, got {v}"));
        }
    }
    let total_mass = m1 + m2;
    Ok(ParticlePair {
        m1,
        m2,
        e,
        total_mass,
        reduced_mass: m1 * m2 / total_mass,
        m_delta: m2 - m1,
    })
}

/// Static bias fields: `e0` in V/m, `b0` in T.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StaticFieldConfig {
    pub e0: [f64; 3],
    pub b0: [f64; 3],
}

impl StaticFieldConfig {
    pub fn new(e0: [f64; 3], b0: [f64; 3]) -> Result<Self> {
        if e0.iter().chain(b0.iter()).any(|x| !x.is_finite()) {
            return domain("static field components must be finite");
        }
        Ok(StaticFieldConfig { e0, b0 })
    }

    /// E0 = (1e5 V/m, 0, 0), B0 = (0, 10 T, 0).
    pub fn reference() -> Self {
        StaticFieldConfig { e0: [1.0e5, 0.0, 0.0], b0: [0.0, 10.0, 0.0] }
    }

    pub fn scaled(&self, alpha: f64, beta: f64) -> Self {
        StaticFieldConfig { e0: self.e0.map(|x| alpha * x), b0: self.b0.map(|x| beta * x) }
    }

    pub(crate) fn to_atomic(self, scale: &AtomicScale) -> ([f64; 3], [f64; 3]) {
        (scale.vec_to_atomic(self.e0, UnitKind::EField), scale.vec_to_atomic(self.b0, UnitKind::BField))
    }
}

pub(crate) fn norm(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn constants_are_cross_consistent() {
        assert!(rel(CODATA.derived_bohr_radius(), CODATA.bohr_radius) < 5e-9);
        assert!(rel(CODATA.derived_hartree(), CODATA.hartree) < 5e-9);
        let c = CODATA;
        for v in [c.hbar, c.e_charge, c.eps0, c.c_light, c.m_electron, c.bohr_radius, c.hartree] {
            assert!(v > 0.0);
        }
    }

    #[test]
    fn equal_masses_have_no_asymmetry() {
        let m = 2.5e-30;
        let p = derive_pair(m, m, CODATA.e_charge).unwrap();
        assert_eq!(p.m_delta(), 0.0);
        assert_eq!(p.reduced_mass(), m / 2.0);
    }

    #[test]
    fn electron_proton_like_pair() {
        let me = CODATA.m_electron;
        let p = derive_pair(me, 1836.152 * me, CODATA.e_charge).unwrap();
        assert!(rel(p.reduced_mass(), me * 1836.152 / 1837.152) < 1e-14);
        assert!((p.m_delta() / p.total_mass() - 1835.152 / 1837.152).abs() < 1e-14);
        assert!((p.m_delta() / p.total_mass() - 0.99891).abs() < 1e-5);
    }

    #[test]
    fn heavy_partner_limit() {
        let me = CODATA.m_electron;
        let p = derive_pair(me, 1e12 * me, CODATA.e_charge).unwrap();
        assert!(rel(p.reduced_mass(), me) < 1e-11);
        assert!((p.m_delta() / p.total_mass() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn stored_identities_hold_exactly() {
        let p = derive_pair(1.3e-30, 7.1e-29, 1.6e-19).unwrap();
        assert_eq!(p.total_mass(), p.m1() + p.m2());
        assert_eq!(p.reduced_mass(), p.m1() * p.m2() / p.total_mass());
        assert_eq!(p.m_delta(), p.m2() - p.m1());
    }

    #[test]
    fn non_positive_inputs_are_rejected() {
        assert!(matches!(derive_pair(0.0, 1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(derive_pair(1.0, -1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(derive_pair(1.0, 1.0, 0.0), Err(Error::Domain(_))));
        assert!(derive_pair(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn atomic_length_unit() {
        assert!(rel(to_atomic(CODATA.bohr_radius, UnitKind::Length), 1.0) < 1e-15);
    }

    #[test]
    fn hydrogen_ground_energy_in_hartree() {
        // E1 = -e^2 / (8 pi eps0 a0), built from the constants table
        let c = CODATA;
        let e1 = -c.e_charge * c.e_charge / (8.0 * PI * c.eps0 * c.bohr_radius);
        assert!((to_atomic(e1, UnitKind::Energy) + 0.5).abs() < 1e-9);
        // the same number quoted in eV
        assert!((to_atomic(-13.605693 * ELECTRON_VOLT, UnitKind::Energy) + 0.5).abs() < 1e-7);
    }

    #[test]
    fn ten_tesla_in_atomic_units() {
        let c = CODATA;
        let b_unit = c.hbar / (c.e_charge * c.bohr_radius * c.bohr_radius);
        let b = to_atomic(10.0, UnitKind::BField);
        assert!(rel(b, 10.0 / b_unit) < 1e-15);
        assert!((b - 4.255e-5).abs() < 1e-8);
    }

    #[test]
    fn unknown_kind_is_a_domain_error() {
        assert!(matches!("volume".parse::<UnitKind>(), Err(Error::Domain(_))));
        assert_eq!("BField".parse::<UnitKind>().unwrap(), UnitKind::BField);
        for k in UnitKind::ALL {
            assert_eq!(k.to_string().parse::<UnitKind>().unwrap(), k);
        }
    }

    #[test]
    fn reduced_mass_scale_shrinks_lengths() {
        let s = AtomicScale::new(0.5).unwrap();
        assert!(rel(s.unit(UnitKind::Length), 2.0 * CODATA.bohr_radius) < 1e-15);
        assert!(rel(s.unit(UnitKind::Energy), 0.5 * CODATA.hartree) < 1e-15);
        assert!(AtomicScale::new(0.0).is_err());
    }

    proptest::proptest! {
        #[test]
        fn unit_round_trip(x in -1e30f64..1e30, k in 0usize..5, mu in 0.1f64..10.0) {
            let kind = UnitKind::ALL[k];
            let back = from_atomic(to_atomic(x, kind), kind);
            proptest::prop_assert!((back - x).abs() <= 1e-12 * x.abs());
            let s = AtomicScale::new(mu).unwrap();
            let back = s.from_atomic(s.to_atomic(x, kind), kind);
            proptest::prop_assert!((back - x).abs() <= 1e-12 * x.abs());
        }
    }
}

//! Oracle-versus-main comparisons, grouped into families.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ho::{ho_chi_l, ho_chi_quad, HOModel};
use crate::hydrogen::{gaunt, radial_integral, HydrogenModel, HydrogenResponse};
use crate::oracle::{
    angular_quadrature_gaunt, fock_basis, fock_dense_si, gordon_dipole, hydrogen_basis, hydrogen_dense_si,
    quadrature_radial, same_shell_dipole,
};
use crate::tensor::ResponseTensor;
use crate::units::StaticFieldConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Ho,
    Hydrogen,
    Radial,
    Gaunt,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Ho, Family::Hydrogen, Family::Radial, Family::Gaunt];
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ho" => Ok(Family::Ho),
            "hydrogen" => Ok(Family::Hydrogen),
            "radial" => Ok(Family::Radial),
            "gaunt" => Ok(Family::Gaunt),
            other => Err(Error::Config(format!("unknown validation family '{other}'"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ho => "ho",
            Family::Hydrogen => "hydrogen",
            Family::Radial => "radial",
            Family::Gaunt => "gaunt",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub family: Family,
    pub max_rel_err: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_rel_err <= self.tolerance
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidateOptions {
    /// run a single family
    pub only: Option<Family>,
    /// test hook: scale the main-path value of the named check by
    /// `1 + 1e-6` before comparing
    pub perturb: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{verdict} {:<28} max_rel_err={:e} tol={:e}", c.name, c.max_rel_err, c.tolerance)?;
        }
        let failed = self.failed().len();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

struct Runner<'a> {
    opts: &'a ValidateOptions,
    checks: Vec<Check>,
}

impl Runner<'_> {
    fn factor(&self, name: &str) -> f64 {
        if self.opts.perturb.as_deref() == Some(name) {
            1.0 + 1e-6
        } else {
            1.0
        }
    }

    fn push(&mut self, family: Family, name: &str, max_rel_err: f64, tolerance: f64) {
        self.checks.push(Check { name: name.to_string(), family, max_rel_err, tolerance });
    }

    fn tensors(&mut self, family: Family, name: &str, tol: f64, pairs: &[(ResponseTensor, ResponseTensor)]) {
        let f = self.factor(name);
        let err = pairs.iter().map(|(main, oracle)| main.scale(f).rel_diff(oracle)).fold(0.0, f64::max);
        self.push(family, name, err, tol);
    }

    fn scalars(&mut self, family: Family, name: &str, tol: f64, pairs: &[(f64, f64)]) {
        let f = self.factor(name);
        let err = pairs
            .iter()
            .map(|&(main, oracle)| {
                let d = (main * f - oracle).abs();
                if oracle == 0.0 {
                    d
                } else {
                    d / oracle.abs()
                }
            })
            .fold(0.0, f64::max);
        self.push(family, name, err, tol);
    }
}

fn ho_family(r: &mut Runner) -> Result<()> {
    let basis = fock_basis(6);
    let mut l_pairs = Vec::new();
    let mut q_pairs = Vec::new();
    for fields in [
        StaticFieldConfig::reference(),
        StaticFieldConfig::new([0.0, 2e5, 1e5], [3.0, 0.0, 7.0])?,
    ] {
        let model = HOModel { fields, ..HOModel::reference() };
        for k in 0..10 {
            let omega = model.omega0 * 10f64.powf(-2.0 + 0.4 * k as f64);
            if (omega / model.omega0 - 1.0).abs() < 0.01 {
                continue;
            }
            let (l, q) = fock_dense_si(&basis, &model, omega)?;
            l_pairs.push((ho_chi_l(&model, omega)?, l));
            q_pairs.push((ho_chi_quad(&model, omega)?, q));
        }
    }
    r.tensors(Family::Ho, "ho.chi_l_vs_fock", 1e-8, &l_pairs);
    r.tensors(Family::Ho, "ho.chi_quad_vs_fock", 1e-8, &q_pairs);
    Ok(())
}

fn hydrogen_family(r: &mut Runner) -> Result<()> {
    let basis = hydrogen_basis(4);
    let mut l_pairs = Vec::new();
    let mut q_pairs = Vec::new();
    for fields in [
        StaticFieldConfig::reference(),
        StaticFieldConfig::new([2e5, -1e5, 3e5], [1.0, 4.0, -2.0])?,
    ] {
        let model = HydrogenModel { fields, n_max: 4, ..HydrogenModel::reference() };
        let resp = HydrogenResponse::new(&model)?;
        let res = model.resonance_omega(2);
        for omega in [1e12, 0.3 * res, 0.999 * res, res, 1.2 * res, 3.0 * res, 1e20] {
            let (l, q) = hydrogen_dense_si(&basis, &model, omega)?;
            l_pairs.push((resp.chi_l(omega)?, l));
            q_pairs.push((resp.chi_quad(omega)?, q));
        }
    }
    r.tensors(Family::Hydrogen, "hydrogen.chi_l_vs_dense", 1e-10, &l_pairs);
    r.tensors(Family::Hydrogen, "hydrogen.chi_quad_vs_dense", 1e-10, &q_pairs);
    Ok(())
}

fn radial_family(r: &mut Runner) -> Result<()> {
    let mut gordon = Vec::new();
    for n1 in 1..=10u32 {
        for l1 in 0..n1 {
            for n2 in 1..=10u32 {
                for l2 in [l1.wrapping_sub(1), l1 + 1] {
                    if l2 >= n2 || l2 > l1 + 1 {
                        continue;
                    }
                    let oracle = if n1 == n2 { same_shell_dipole(n1, l1, l2) } else { gordon_dipole(n1, l1, n2, l2) };
                    if let Some(o) = oracle {
                        gordon.push((radial_integral(n1, l1, n2, l2, 1)?, o));
                    }
                }
            }
        }
    }
    r.scalars(Family::Radial, "radial.dipole_vs_gordon", 1e-8, &gordon);

    let mut quad = Vec::new();
    for (n1, l1, n2, l2, p) in [(1, 0, 1, 0, 1), (1, 0, 2, 1, 1), (2, 1, 2, 1, 2), (3, 2, 4, 1, 2), (5, 0, 3, 2, 2), (4, 1, 4, 1, 0)] {
        quad.push((radial_integral(n1, l1, n2, l2, p)?, quadrature_radial(n1, l1, n2, l2, p)));
    }
    r.scalars(Family::Radial, "radial.main_vs_laguerre", 1e-8, &quad);

    let exact = [
        (radial_integral(1, 0, 1, 0, 1)?, 1.5),
        (radial_integral(1, 0, 2, 1, 1)?, 768.0 / (243.0 * 6f64.sqrt())),
        (radial_integral(1, 0, 1, 0, 2)?, 3.0),
        (radial_integral(2, 1, 2, 1, 2)?, 30.0),
    ];
    r.scalars(Family::Radial, "radial.closed_forms", 1e-8, &exact);
    Ok(())
}

fn gaunt_family(r: &mut Runner) {
    let mut pairs = Vec::new();
    for l1 in 0..=3i32 {
        for big_l in 0..=2i32 {
            for l2 in 0..=3i32 {
                for m1 in -l1..=l1 {
                    for big_m in -big_l..=big_l {
                        let m2 = m1 - big_m;
                        if m2.abs() > l2 {
                            continue;
                        }
                        let q = angular_quadrature_gaunt(l1 as u32, m1, big_l as u32, big_m, l2 as u32, m2);
                        pairs.push((gaunt(l1, m1, big_l, big_m, l2, m2), q));
                    }
                }
            }
        }
    }
    let f = r.factor("gaunt.racah_vs_sphere");
    let err = pairs.iter().map(|&(a, b)| (a * f - b).abs()).fold(0.0, f64::max);
    r.push(Family::Gaunt, "gaunt.racah_vs_sphere", err, 1e-12);
}

pub fn run_validation(opts: &ValidateOptions) -> Result<ValidationReport> {
    let mut r = Runner { opts, checks: Vec::new() };
    for family in Family::ALL {
        if opts.only.is_some_and(|f| f != family) {
            continue;
        }
        match family {
            Family::Ho => ho_family(&mut r)?,
            Family::Hydrogen => hydrogen_family(&mut r)?,
            Family::Radial => radial_family(&mut r)?,
            Family::Gaunt => gaunt_family(&mut r),
        }
    }
    if let Some(name) = &opts.perturb {
        if !r.checks.iter().any(|c| &c.name == name) {
            return Err(Error::Config(format!("no check named '{name}' in the selected families")));
        }
    }
    Ok(ValidationReport { checks: r.checks })
}

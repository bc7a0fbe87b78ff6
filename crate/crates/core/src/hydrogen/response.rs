//! Magneto-electric response of hydrogen.
//!
//! The ground state is first dressed to linear order by the static electric
//! field, `|Ω⟩ = |1s⟩ + |δ⟩`, `|δ⟩ = Σ c_s |s⟩`. The response is then the
//! sum of an angular-momentum part (two resolvents, bilinear in `L`) and a
//! quadrupole part (one resolvent). Both reduce to pole sums
//!
//! ```text
//! chi_L(ω)    = Σ_n  W_n / (Δ_n + iΓ - ω)^2 + W_n^* / (Δ_n + iΓ + ω)^2
//! chi_quad(ω) = Σ_n1 V_n1 / (Δ_n1 + iΓ - ω) + V_n1^* / (Δ_n1 + iΓ + ω)
//! ```
//!
//! with frequency-independent weights built once per model, `Δ_n = E_n - E_1`.

use num_complex::Complex64 as C64;
use num_traits::Zero;

use super::states::{HState, MatrixElements};
use crate::error::{domain, Error, Result};
use crate::tensor::{bianisotropic_12, Matrix3, ResponseTensor, ZERO3};
use crate::units::{AtomicScale, ParticlePair, StaticFieldConfig, UnitKind};

/// Paper-style channel ranges for the quadrupole sum: dressed-ground
/// components `|n, L, m⟩` with `L` up to 3, and resolvent states with `L1`
/// up to 2. `L1 = 0` is included: `x_k x_j |1s⟩` has an s-wave part.
pub const QUAD_DRESSING_L: std::ops::RangeInclusive<u32> = 1..=3;
pub const QUAD_RESOLVENT_L: std::ops::RangeInclusive<u32> = 0..=2;

/// Relative distance from an undamped resonance treated as a pole hit.
pub const POLE_WINDOW: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HydrogenModel {
    pub pair: ParticlePair,
    pub fields: StaticFieldConfig,
    /// Line width Γ in rad/s; excited energies become `E_n + i hbar Γ`.
    pub gamma: f64,
    /// Largest principal quantum number kept in every sum.
    pub n_max: u32,
    /// Replace `m_delta / M -> 1` and the reduced mass by `m_e`.
    pub heavy_nucleus_limit: bool,
}

impl HydrogenModel {
    pub fn new(fields: StaticFieldConfig, gamma: f64, n_max: u32) -> Result<Self> {
        let model = HydrogenModel {
            pair: ParticlePair::hydrogen(),
            fields,
            gamma,
            n_max,
            heavy_nucleus_limit: true,
        };
        model.validate()?;
        Ok(model)
    }

    /// E0 = (1e5 V/m, 0, 0), B0 = (0, 10 T, 0), Γ = 1e8 s^-1, n_max = 20.
    pub fn reference() -> Self {
        HydrogenModel::new(StaticFieldConfig::reference(), 1.0e8, 20).expect("valid reference model")
    }

    /// Keep the exact two-mass factors instead of the heavy-nucleus limit.
    pub fn with_pair(mut self, pair: ParticlePair) -> Self {
        self.pair = pair;
        self.heavy_nucleus_limit = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return domain(format!("line width must be >= 0, got {}", self.gamma));
        }
        if self.n_max < 2 {
            return domain(format!("n_max must be >= 2, got {}", self.n_max));
        }
        Ok(())
    }

    /// Atomic units of the internal sums (reduced-mass units unless the
    /// heavy-nucleus limit is on).
    pub fn scale(&self) -> AtomicScale {
        if self.heavy_nucleus_limit {
            AtomicScale::ELECTRON
        } else {
            let p = self.pair.in_atomic_units();
            AtomicScale { mass_ratio: p.reduced_mass }
        }
    }

    /// `(m_delta / M)^2`, the mass-asymmetry factor shared by both parts.
    pub fn asymmetry_factor(&self) -> f64 {
        if self.heavy_nucleus_limit {
            1.0
        } else {
            let r = self.pair.m_delta() / self.pair.total_mass();
            r * r
        }
    }

    /// Transition angular frequency `(E_n - E_1)/hbar` in rad/s.
    pub fn resonance_omega(&self, n: u32) -> f64 {
        self.scale().from_atomic(excitation(n), UnitKind::Frequency)
    }
}

fn excitation(n: u32) -> f64 {
    0.5 - 0.5 / (n as f64 * n as f64)
}

fn dot_field(elements: &MatrixElements, field: [f64; 3], a: HState, b: HState) -> C64 {
    (0..3)
        .filter(|&l| field[l] != 0.0)
        .map(|l| elements.position_element(a, l, b) * field[l])
        .sum()
}

/// First-order Stark admixture coefficient of `s` in the dressed ground
/// state, `c_s = -E0 · ⟨s|x|1s⟩ / (E_s - E_1)`, field in atomic units.
fn dressing_coefficient(elements: &MatrixElements, e0: [f64; 3], s: HState) -> C64 {
    -dot_field(elements, e0, s, HState::ground()) / excitation(s.n)
}

/// Ground state dressed by the static electric field, to first order.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbedGround {
    /// `(|n,1,m⟩, c_{n,m})` for `2 <= n <= n_max`, atomic units.
    pub coefficients: Vec<(HState, C64)>,
    /// The field the coefficients were built with (atomic units).
    pub e0: [f64; 3],
}

impl PerturbedGround {
    pub fn build(elements: &MatrixElements, e0_atomic: [f64; 3], n_max: u32) -> Self {
        let mut coefficients = Vec::new();
        for n in 2..=n_max {
            for m in -1..=1 {
                let s = HState { n, l: 1, m };
                coefficients.push((s, dressing_coefficient(elements, e0_atomic, s)));
            }
        }
        PerturbedGround { coefficients, e0: e0_atomic }
    }

    pub fn coefficient(&self, s: HState) -> C64 {
        self.coefficients
            .iter()
            .find(|(t, _)| *t == s)
            .map(|(_, c)| *c)
            .unwrap_or_else(C64::zero)
    }

    /// Static polarizability `α / (4π eps0)` in a0^3 along the field,
    /// `α = 2 Σ_s |c_s|^2 Δ_s / |E0|^2` (second-order Stark shift).
    pub fn polarizability(&self) -> f64 {
        let e2: f64 = self.e0.iter().map(|x| x * x).sum();
        if e2 == 0.0 {
            return 0.0;
        }
        let shift: f64 = self.coefficients.iter().map(|(s, c)| c.norm_sqr() * excitation(s.n)).sum();
        2.0 * shift / e2
    }
}

pub fn build_perturbed_ground(model: &HydrogenModel, elements: &MatrixElements) -> PerturbedGround {
    let (e0, _) = model.fields.to_atomic(&model.scale());
    PerturbedGround::build(elements, e0, model.n_max)
}

#[derive(Clone, Debug)]
struct Pole {
    n: u32,
    /// angular momentum of the resolvent state (diagnostics)
    l: u32,
    /// angular momentum of the dressed-ground component (diagnostics)
    dressing_l: u32,
    excitation: f64,
    weight: Matrix3,
}

/// Hydrogen response prepared for repeated evaluation at many frequencies.
#[derive(Clone, Debug)]
pub struct HydrogenResponse {
    model: HydrogenModel,
    scale: AtomicScale,
    gamma: f64,
    ground: PerturbedGround,
    l_poles: Vec<Pole>,
    quad_poles: Vec<Pole>,
}

impl HydrogenResponse {
    pub fn new(model: &HydrogenModel) -> Result<Self> {
        let elements = MatrixElements::with_n_max(model.n_max)?;
        HydrogenResponse::with_elements(model, &elements)
    }

    pub fn with_elements(model: &HydrogenModel, elements: &MatrixElements) -> Result<Self> {
        model.validate()?;
        let scale = model.scale();
        let (e0, b0) = model.fields.to_atomic(&scale);
        let gamma = scale.to_atomic(model.gamma, UnitKind::Frequency);
        let kappa = model.asymmetry_factor();
        let ground = PerturbedGround::build(elements, e0, model.n_max);
        let l_poles = angular_momentum_poles(elements, &ground, b0, kappa, model.n_max);
        let quad_poles = quadrupole_poles(elements, e0, b0, kappa, model.n_max);
        Ok(HydrogenResponse { model: *model, scale, gamma, ground, l_poles, quad_poles })
    }

    pub fn model(&self) -> &HydrogenModel {
        &self.model
    }

    pub fn perturbed_ground(&self) -> &PerturbedGround {
        &self.ground
    }

    fn check_pole(&self, omega_au: f64, omega: f64) -> Result<()> {
        if self.gamma == 0.0 {
            for n in 2..=self.model.n_max {
                let d = excitation(n);
                if (d - omega_au.abs()).abs() <= POLE_WINDOW * d {
                    return Err(Error::Pole { omega });
                }
            }
        }
        Ok(())
    }

    fn omega_au(&self, omega: f64) -> Result<f64> {
        if !omega.is_finite() {
            return domain(format!("frequency must be finite, got {omega}"));
        }
        let w = self.scale.to_atomic(omega, UnitKind::Frequency);
        self.check_pole(w, omega)?;
        Ok(w)
    }

    fn to_si(&self, m: Matrix3, omega: f64) -> ResponseTensor {
        let unit = self.scale.chi_unit();
        ResponseTensor::new(m.map(|row| row.map(|z| z * unit)), omega)
    }

    fn sum_double_poles(&self, poles: &[&Pole], w: f64) -> Matrix3 {
        let mut acc = ZERO3;
        for p in poles {
            let minus = C64::new(p.excitation - w, self.gamma);
            let plus = C64::new(p.excitation + w, self.gamma);
            let fm = (minus * minus).inv();
            let fp = (plus * plus).inv();
            for i in 0..3 {
                for j in 0..3 {
                    acc[i][j] += p.weight[i][j] * fm + p.weight[i][j].conj() * fp;
                }
            }
        }
        acc
    }

    fn sum_single_poles(&self, poles: &[&Pole], w: f64) -> Matrix3 {
        let mut acc = ZERO3;
        for p in poles {
            let fm = C64::new(p.excitation - w, self.gamma).inv();
            let fp = C64::new(p.excitation + w, self.gamma).inv();
            for i in 0..3 {
                for j in 0..3 {
                    acc[i][j] += p.weight[i][j] * fm + p.weight[i][j].conj() * fp;
                }
            }
        }
        acc
    }

    /// Angular-momentum part in atomic units, `omega_au` in hartree/hbar.
    pub fn chi_l_atomic(&self, omega_au: f64) -> Matrix3 {
        let poles: Vec<&Pole> = self.l_poles.iter().collect();
        self.sum_double_poles(&poles, omega_au)
    }

    /// Quadrupole part in atomic units.
    pub fn chi_quad_atomic(&self, omega_au: f64) -> Matrix3 {
        let poles: Vec<&Pole> = self.quad_poles.iter().collect();
        self.sum_single_poles(&poles, omega_au)
    }

    pub fn chi_l(&self, omega: f64) -> Result<ResponseTensor> {
        let w = self.omega_au(omega)?;
        Ok(self.to_si(self.chi_l_atomic(w), omega))
    }

    pub fn chi_quad(&self, omega: f64) -> Result<ResponseTensor> {
        let w = self.omega_au(omega)?;
        Ok(self.to_si(self.chi_quad_atomic(w), omega))
    }

    pub fn chi_total(&self, omega: f64) -> Result<ResponseTensor> {
        self.chi_l(omega)?.checked_add(&self.chi_quad(omega)?)
    }

    /// Quadrupole part split by channel `(L, L1)`: `L` of the dressed-ground
    /// component, `L1` of the resolvent state. Atomic units.
    pub fn quad_channels(&self, omega_au: f64) -> Vec<((u32, u32), Matrix3)> {
        let mut out = Vec::new();
        for big_l in QUAD_DRESSING_L {
            for l1 in QUAD_RESOLVENT_L {
                let poles: Vec<&Pole> =
                    self.quad_poles.iter().filter(|p| p.dressing_l == big_l && p.l == l1).collect();
                out.push(((big_l, l1), self.sum_single_poles(&poles, omega_au)));
            }
        }
        out
    }

    /// Contribution of principal shell `n` alone to chi_12 (atomic units).
    pub fn shell_contribution_12(&self, n: u32, omega_au: f64) -> C64 {
        let l: Vec<&Pole> = self.l_poles.iter().filter(|p| p.n == n).collect();
        let q: Vec<&Pole> = self.quad_poles.iter().filter(|p| p.n == n).collect();
        self.sum_double_poles(&l, omega_au)[0][1] + self.sum_single_poles(&q, omega_au)[0][1]
    }
}

/// Double-pole weights of the angular-momentum part:
/// `W_n = -κ Σ ⟨1s|x_i|n1m1⟩ ⟨n1m1|L·B0|n1m2⟩ ⟨n1m2|L_j|n1m⟩ c_{n1m}`.
/// `L` conserves `n` and `l`, so one shell carries all three `m` sums.
fn angular_momentum_poles(
    elements: &MatrixElements,
    ground: &PerturbedGround,
    b0: [f64; 3],
    kappa: f64,
    n_max: u32,
) -> Vec<Pole> {
    let g = HState::ground();
    let mut poles = Vec::new();
    for n in 2..=n_max {
        let shell: Vec<HState> = (-1..=1).map(|m| HState { n, l: 1, m }).collect();
        let mut weight = ZERO3;
        for &a1 in &shell {
            let x0: [C64; 3] = std::array::from_fn(|i| elements.position_element(g, i, a1));
            for &a2 in &shell {
                let lb: C64 = (0..3)
                    .filter(|&k| b0[k] != 0.0)
                    .map(|k| elements.angular_momentum_element(a1, k, a2) * b0[k])
                    .sum();
                if lb.is_zero() {
                    continue;
                }
                for &s in &shell {
                    let c = ground.coefficient(s);
                    if c.is_zero() {
                        continue;
                    }
                    for j in 0..3 {
                        let tail = lb * elements.angular_momentum_element(a2, j, s) * c;
                        for i in 0..3 {
                            weight[i][j] += x0[i] * tail;
                        }
                    }
                }
            }
        }
        let weight = weight.map(|row| row.map(|z| z * -kappa));
        poles.push(Pole { n, l: 1, dressing_l: 1, excitation: excitation(n), weight });
    }
    poles
}

/// Single-pole weights of the quadrupole part, one pole per resolvent shell
/// `(n1, L1)` and dressing channel `L`:
/// `V = κ/4 Σ_m1 [⟨1s|x_i|a⟩ ⟨a|Q_B|δ_L⟩_j + ⟨δ_L|x_i|a⟩ ⟨a|Q_B|1s⟩_j]`,
/// `a = |n1 L1 m1⟩`, `Q_B,j = Σ_k B0_k (x^2 δ_kj - x_k x_j)`.
fn quadrupole_poles(
    elements: &MatrixElements,
    e0: [f64; 3],
    b0: [f64; 3],
    kappa: f64,
    n_max: u32,
) -> Vec<Pole> {
    let g = HState::ground();
    let q_b = |a: HState, b: HState| -> [C64; 3] {
        std::array::from_fn(|j| {
            (0..3)
                .filter(|&k| b0[k] != 0.0)
                .map(|k| elements.quadrupole_element(a, k, j, b) * b0[k])
                .sum()
        })
    };

    // dressed-ground components per channel L, including the selection-rule
    // zeros so every paper channel is evaluated
    let mut dressing: Vec<(u32, Vec<(HState, C64)>)> = Vec::new();
    for big_l in QUAD_DRESSING_L {
        let mut comps = Vec::new();
        for n in (big_l + 1).max(2)..=n_max {
            for m in -(big_l as i32)..=(big_l as i32) {
                let s = HState { n, l: big_l, m };
                comps.push((s, dressing_coefficient(elements, e0, s)));
            }
        }
        dressing.push((big_l, comps));
    }

    let mut poles = Vec::new();
    for n1 in 2..=n_max {
        for l1 in QUAD_RESOLVENT_L {
            if l1 >= n1 {
                continue;
            }
            for (big_l, comps) in &dressing {
                let mut weight = ZERO3;
                for m1 in -(l1 as i32)..=(l1 as i32) {
                    let a = HState { n: n1, l: l1, m: m1 };
                    let x_0a: [C64; 3] = std::array::from_fn(|i| elements.position_element(g, i, a));
                    let q_a0 = q_b(a, g);
                    let mut q_ad = [C64::zero(); 3];
                    let mut x_da = [C64::zero(); 3];
                    for &(s, c) in comps {
                        if c.is_zero() {
                            continue;
                        }
                        let q = q_b(a, s);
                        for j in 0..3 {
                            q_ad[j] += q[j] * c;
                            x_da[j] += c.conj() * elements.position_element(s, j, a);
                        }
                    }
                    for i in 0..3 {
                        for j in 0..3 {
                            weight[i][j] += x_0a[i] * q_ad[j] + x_da[i] * q_a0[j];
                        }
                    }
                }
                let weight = weight.map(|row| row.map(|z| z * (0.25 * kappa)));
                poles.push(Pole { n: n1, l: l1, dressing_l: *big_l, excitation: excitation(n1), weight });
            }
        }
    }
    poles
}

pub fn chi_l_hydrogen(model: &HydrogenModel, omega: f64) -> Result<ResponseTensor> {
    HydrogenResponse::new(model)?.chi_l(omega)
}

pub fn chi_quad_hydrogen(model: &HydrogenModel, omega: f64) -> Result<ResponseTensor> {
    HydrogenResponse::new(model)?.chi_quad(omega)
}

pub fn chi_total_hydrogen(model: &HydrogenModel, omega: f64) -> Result<ResponseTensor> {
    HydrogenResponse::new(model)?.chi_total(omega)
}

/// chi_12 as the principal-quantum-number cutoff grows.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub omega: f64,
    /// `(n_max, chi_12)` in SI
    pub rows: Vec<(u32, C64)>,
    /// `|chi(k) - chi(k-1)| / |chi(k)|` for every row after the first
    pub relative_changes: Vec<f64>,
    /// whether the relative changes shrink monotonically
    pub monotone_tail: bool,
    pub tolerance: f64,
    /// set when the last two rows differ by more than `tolerance`
    pub flagged: bool,
}

pub fn convergence_report(
    model: &HydrogenModel,
    omega: f64,
    n_max_list: &[u32],
    tolerance: f64,
) -> Result<ConvergenceReport> {
    if n_max_list.is_empty() {
        return domain("n_max list is empty");
    }
    if n_max_list.windows(2).any(|w| w[1] <= w[0]) {
        return domain("n_max list must be strictly increasing");
    }
    let largest = *n_max_list.last().expect("non-empty");
    let elements = MatrixElements::with_n_max(largest)?;
    let mut rows = Vec::with_capacity(n_max_list.len());
    for &n_max in n_max_list {
        let m = HydrogenModel { n_max, ..*model };
        let chi = HydrogenResponse::with_elements(&m, &elements)?.chi_total(omega)?;
        rows.push((n_max, bianisotropic_12(&chi)));
    }
    let relative_changes: Vec<f64> =
        rows.windows(2).map(|w| (w[1].1 - w[0].1).norm() / w[1].1.norm()).collect();
    let monotone_tail = relative_changes.windows(2).all(|w| w[1] <= w[0]);
    let flagged = relative_changes.last().is_some_and(|&r| !(r <= tolerance));
    Ok(ConvergenceReport { omega, rows, relative_changes, monotone_tail, tolerance, flagged })
}

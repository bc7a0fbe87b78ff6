//! Three-dimensional oscillator in a truncated Fock basis, units
//! hbar = m = omega0 = e = 1.

use std::collections::HashMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;

use super::dense::{dense_chi_l, dense_chi_quad, CMatrix, DenseBasis, DenseCoupling};
use crate::error::Result;
use crate::ho::HOModel;
use crate::tensor::ResponseTensor;
use crate::units::CODATA;

type Ket = [u32; 3];

#[derive(Clone, Copy)]
enum Ladder {
    Lower(usize),
    Raise(usize),
}

/// Apply a product of ladder operators (rightmost first) to `|n>`.
fn apply(ops: &[Ladder], ket: Ket) -> Option<(f64, Ket)> {
    let mut amp = 1.0;
    let mut k = ket;
    for op in ops.iter().rev() {
        match *op {
            Ladder::Lower(i) => {
                if k[i] == 0 {
                    return None;
                }
                amp *= (k[i] as f64).sqrt();
                k[i] -= 1;
            }
            Ladder::Raise(i) => {
                k[i] += 1;
                amp *= (k[i] as f64).sqrt();
            }
        }
    }
    Some((amp, k))
}

/// Matrix of `sum_t c_t * (ladder product)_t`, exact on the full space and
/// then projected, so no truncation error enters any element.
fn operator(states: &[Ket], index: &HashMap<Ket, usize>, terms: &[(C64, Vec<Ladder>)]) -> CMatrix {
    let n = states.len();
    let mut m = vec![vec![C64::new(0.0, 0.0); n]; n];
    for (b, &ket) in states.iter().enumerate() {
        for (c, ops) in terms {
            if let Some((amp, out)) = apply(ops, ket) {
                if let Some(&a) = index.get(&out) {
                    m[a][b] += c * amp;
                }
            }
        }
    }
    m
}

/// `x_k = (a_k + a_k^dagger)/sqrt 2`, as ladder terms.
fn position_terms(k: usize) -> Vec<(C64, Vec<Ladder>)> {
    let s = C64::new(FRAC_1_SQRT_2, 0.0);
    vec![(s, vec![Ladder::Lower(k)]), (s, vec![Ladder::Raise(k)])]
}

fn product_terms(a: &[(C64, Vec<Ladder>)], b: &[(C64, Vec<Ladder>)]) -> Vec<(C64, Vec<Ladder>)> {
    let mut out = Vec::new();
    for (ca, oa) in a {
        for (cb, ob) in b {
            let mut ops = oa.clone();
            ops.extend(ob.iter().copied());
            out.push((ca * cb, ops));
        }
    }
    out
}

/// All kets with `nx + ny + nz <= n_cap`, ordered by total excitation.
pub fn fock_basis(n_cap: u32) -> DenseBasis {
    let mut states = Vec::new();
    for total in 0..=n_cap {
        for nx in (0..=total).rev() {
            for ny in (0..=total - nx).rev() {
                states.push([nx, ny, total - nx - ny]);
            }
        }
    }
    let index: HashMap<Ket, usize> = states.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let x: [CMatrix; 3] = std::array::from_fn(|k| operator(&states, &index, &position_terms(k)));
    // L_i = -i eps_ijk a_j^dagger a_k
    let l: [CMatrix; 3] = std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let terms = vec![
            (C64::new(0.0, -1.0), vec![Ladder::Raise(j), Ladder::Lower(k)]),
            (C64::new(0.0, 1.0), vec![Ladder::Raise(k), Ladder::Lower(j)]),
        ];
        operator(&states, &index, &terms)
    });
    let q: [[CMatrix; 3]; 3] = std::array::from_fn(|k| {
        std::array::from_fn(|j| {
            let mut terms = Vec::new();
            if k == j {
                for a in 0..3 {
                    terms.extend(product_terms(&position_terms(a), &position_terms(a)));
                }
            }
            for (c, ops) in product_terms(&position_terms(k), &position_terms(j)) {
                terms.push((-c, ops));
            }
            operator(&states, &index, &terms)
        })
    });
    DenseBasis {
        labels: states.iter().map(|k| format!("|{},{},{}>", k[0], k[1], k[2])).collect(),
        energies: states.iter().map(|k| (k[0] + k[1] + k[2]) as f64 + 1.5).collect(),
        x,
        l,
        q,
        ground: 0,
    }
}

/// Oscillator-unit scales: length `sqrt(hbar/(m w0))`, electric field
/// `hbar w0/(e length)`, magnetic field `m w0/e`, response `e^2 length/(m w0)`.
struct OscUnits {
    e_field: f64,
    b_field: f64,
    chi: f64,
}

fn osc_units(model: &HOModel) -> OscUnits {
    let m = model.pair.reduced_mass();
    let e = model.pair.charge();
    let w0 = model.omega0;
    let length = (CODATA.hbar / (m * w0)).sqrt();
    OscUnits {
        e_field: CODATA.hbar * w0 / (e * length),
        b_field: m * w0 / e,
        chi: e * e * length / (m * w0),
    }
}

/// Dense Fock-basis evaluation of both parts, converted to SI.
pub fn fock_dense_si(
    basis: &DenseBasis,
    model: &HOModel,
    omega: f64,
) -> Result<(ResponseTensor, ResponseTensor)> {
    let u = osc_units(model);
    let p = &model.pair;
    let coupling = DenseCoupling {
        e0: model.fields.e0.map(|v| v / u.e_field),
        b0: model.fields.b0.map(|v| v / u.b_field),
        kappa: (p.m_delta() / p.total_mass()).powi(2),
    };
    let w = omega / model.omega0;
    let l = dense_chi_l(basis, &coupling, w, 0.0);
    let q = dense_chi_quad(basis, &coupling, w, 0.0);
    let to_si = |t: ResponseTensor| ResponseTensor::new(t.entries.map(|r| r.map(|z| z * u.chi)), omega);
    Ok((to_si(l), to_si(q)))
}

/// Quadrupole part with both intermediate shells kept:
/// `-(K/8) [ (4 E_i B_j - E_j B_i - E.B d_ij) / (w0^2 - w^2)
///          + 2 (2 E_i B_j - E_j B_i - E.B d_ij) / (4 w0^2 - w^2) ]`.
/// The second term comes from the two-quantum states reached by
/// `Q |0>`; it is absent from the single-pole closed form.
pub fn ho_quad_two_shell(model: &HOModel, omega: f64) -> ResponseTensor {
    let w02 = model.omega0 * model.omega0;
    let w2 = omega * omega;
    let k = model.prefactor();
    let f = &model.fields;
    let eb: f64 = (0..3).map(|i| f.e0[i] * f.b0[i]).sum();
    ResponseTensor::from_fn(omega, |i, j| {
        let d = if i == j { eb } else { 0.0 };
        let eibj = f.e0[i] * f.b0[j];
        let ejbi = f.e0[j] * f.b0[i];
        let one = (4.0 * eibj - ejbi - d) / (w02 - w2);
        let two = 2.0 * (2.0 * eibj - ejbi - d) / (4.0 * w02 - w2);
        C64::new(-k / 8.0 * (one + two), 0.0)
    })
}

use num_complex::Complex64 as C64;

use crate::tensor::{Matrix3, ResponseTensor, ZERO3};

pub type CMatrix = Vec<Vec<C64>>;

fn zeros(n: usize) -> CMatrix {
    vec![vec![C64::new(0.0, 0.0); n]; n]
}

/// Truncated basis with explicit operator matrices, in the natural units of
/// the system (hbar = e = m = 1 and the system's own length/energy scale).
#[derive(Clone, Debug)]
pub struct DenseBasis {
    pub labels: Vec<String>,
    pub energies: Vec<f64>,
    /// relative coordinate `x_i`
    pub x: [CMatrix; 3],
    /// relative angular momentum `L_i`
    pub l: [CMatrix; 3],
    /// `Q_kj = x^2 delta_kj - x_k x_j`
    pub q: [[CMatrix; 3]; 3],
    pub ground: usize,
}

impl DenseBasis {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    fn all_matrices(&self) -> Vec<&CMatrix> {
        let mut v: Vec<&CMatrix> = self.x.iter().chain(self.l.iter()).collect();
        for row in &self.q {
            v.extend(row.iter());
        }
        v
    }

    /// Largest `|A_ab - conj(A_ba)|` over every operator matrix.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.len();
        let mut worst = 0.0f64;
        for m in self.all_matrices() {
            for a in 0..n {
                for b in 0..n {
                    worst = worst.max((m[a][b] - m[b][a].conj()).norm());
                }
            }
        }
        worst
    }

    /// Same physics with the states reordered: new state `k` is old `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> DenseBasis {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let p = |m: &CMatrix| -> CMatrix {
            let mut out = zeros(n);
            for a in 0..n {
                for b in 0..n {
                    out[a][b] = m[perm[a]][perm[b]];
                }
            }
            out
        };
        DenseBasis {
            labels: perm.iter().map(|&k| self.labels[k].clone()).collect(),
            energies: perm.iter().map(|&k| self.energies[k]).collect(),
            x: std::array::from_fn(|i| p(&self.x[i])),
            l: std::array::from_fn(|i| p(&self.l[i])),
            q: std::array::from_fn(|k| std::array::from_fn(|j| p(&self.q[k][j]))),
            ground: perm.iter().position(|&k| k == self.ground).expect("ground in permutation"),
        }
    }
}

/// Static fields and mass-asymmetry factor `(m_delta/M)^2`, natural units.
#[derive(Clone, Copy, Debug)]
pub struct DenseCoupling {
    pub e0: [f64; 3],
    pub b0: [f64; 3],
    pub kappa: f64,
}

fn mat_vec(m: &CMatrix, v: &[C64]) -> Vec<C64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn combine(ms: &[CMatrix; 3], w: [f64; 3]) -> CMatrix {
    let n = ms[0].len();
    let mut out = zeros(n);
    for k in 0..3 {
        for a in 0..n {
            for b in 0..n {
                out[a][b] += ms[k][a][b] * w[k];
            }
        }
    }
    out
}

fn hadamard(r: &[C64], v: &[C64]) -> Vec<C64> {
    r.iter().zip(v).map(|(a, b)| a * b).collect()
}

fn bra_ket(bra: &[C64], ket: &[C64]) -> C64 {
    bra.iter().zip(ket).map(|(a, b)| a.conj() * b).sum()
}

fn unit(n: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); n];
    v[k] = C64::new(1.0, 0.0);
    v
}

/// First-order dressing of the ground state, ground component zero.
fn dressing(basis: &DenseBasis, e0: [f64; 3]) -> Vec<C64> {
    let g = basis.ground;
    let xe = combine(&basis.x, e0);
    (0..basis.len())
        .map(|s| {
            if s == g {
                C64::new(0.0, 0.0)
            } else {
                -xe[s][g] / (basis.energies[s] - basis.energies[g])
            }
        })
        .collect()
}

/// Diagonal resolvent `1/(E_n - E_0 + i gamma - omega)`, ground excluded.
/// With `conjugated` the entries are conjugated so that conjugating the
/// whole product afterwards leaves the denominators as written.
fn resolvent(basis: &DenseBasis, omega: f64, gamma: f64, conjugated: bool) -> Vec<C64> {
    let g = basis.ground;
    (0..basis.len())
        .map(|n| {
            if n == g {
                return C64::new(0.0, 0.0);
            }
            let r = C64::new(basis.energies[n] - basis.energies[g] - omega, gamma).inv();
            if conjugated {
                r.conj()
            } else {
                r
            }
        })
        .collect()
}

/// `-kappa [<0| x_i R (L.B) R L_j |d> + conj(...)|_{omega -> -omega}]`.
pub fn dense_chi_l(basis: &DenseBasis, c: &DenseCoupling, omega: f64, gamma: f64) -> ResponseTensor {
    let n = basis.len();
    let d = dressing(basis, c.e0);
    let lb = combine(&basis.l, c.b0);
    let ground = unit(n, basis.ground);
    let mut out = ZERO3;
    for (sign, conj) in [(1.0, false), (-1.0, true)] {
        let r = resolvent(basis, sign * omega, gamma, conj);
        for j in 0..3 {
            let v = hadamard(&r, &mat_vec(&basis.l[j], &d));
            let v = hadamard(&r, &mat_vec(&lb, &v));
            for i in 0..3 {
                let z = bra_ket(&ground, &mat_vec(&basis.x[i], &v));
                out[i][j] += if conj { z.conj() } else { z };
            }
        }
    }
    ResponseTensor::new(out.map(|row| row.map(|z| z * -c.kappa)), omega)
}

/// `kappa/4 [<0| x_i R Q_B,j |d> + <d| x_i R Q_B,j |0>] + conjugate family`,
/// `Q_B,j = sum_k B_k Q_kj`.
pub fn dense_chi_quad(basis: &DenseBasis, c: &DenseCoupling, omega: f64, gamma: f64) -> ResponseTensor {
    let n = basis.len();
    let d = dressing(basis, c.e0);
    let ground = unit(n, basis.ground);
    let qb: [CMatrix; 3] = std::array::from_fn(|j| {
        let col: [CMatrix; 3] = std::array::from_fn(|k| basis.q[k][j].clone());
        combine(&col, c.b0)
    });
    let mut out: Matrix3 = ZERO3;
    for (sign, conj) in [(1.0, false), (-1.0, true)] {
        let r = resolvent(basis, sign * omega, gamma, conj);
        for j in 0..3 {
            let from_d = hadamard(&r, &mat_vec(&qb[j], &d));
            let from_g = hadamard(&r, &mat_vec(&qb[j], &ground));
            for i in 0..3 {
                let z = bra_ket(&ground, &mat_vec(&basis.x[i], &from_d))
                    + bra_ket(&d, &mat_vec(&basis.x[i], &from_g));
                out[i][j] += if conj { z.conj() } else { z };
            }
        }
    }
    ResponseTensor::new(out.map(|row| row.map(|z| z * (0.25 * c.kappa))), omega)
}

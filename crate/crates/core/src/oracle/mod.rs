//! Brute-force validators that share no integral or coefficient code with the
//! main evaluation paths.
//!
//! Everything here is slow and explicit: dense matrices over a truncated
//! basis, fixed-rule quadratures, exact rational arithmetic. Used by tests and
//! by the `validate` command.

mod coulomb;
mod dense;
mod fock;
mod gordon;

pub use coulomb::{
    angular_quadrature_gaunt, gauss_laguerre, gauss_legendre, hydrogen_basis, hydrogen_dense_si, quadrature_radial,
    SphereGrid,
};
pub use dense::{dense_chi_l, dense_chi_quad, CMatrix, DenseBasis, DenseCoupling};
pub use fock::{fock_basis, fock_dense_si, ho_quad_two_shell};
pub use gordon::{gordon_dipole, same_shell_dipole};

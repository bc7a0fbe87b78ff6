//! Hydrogen: bound-state data and the magneto-electric response built on it.

pub mod angular;
pub mod response;
pub mod states;

pub use angular::{gaunt, wigner_3j, Axis};
pub use response::{
    chi_l_hydrogen, chi_quad_hydrogen, chi_total_hydrogen, convergence_report, ConvergenceReport,
    HydrogenModel, HydrogenResponse, PerturbedGround,
};
pub use states::{energy, radial_integral, radial_wavefunction, HState, MatrixElements, RadialCache};

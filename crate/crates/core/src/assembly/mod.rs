//! Quadrature, mass and stiffness assembly, eigenvalues and condition
//! numbers on the reference elements.

pub mod cond;
pub mod eigen;
pub mod matrix;
pub mod quadrature;

pub use cond::{
    condition_number, condition_number_with, set_condition, CondReport, ZERO_THRESHOLD,
};
pub use eigen::{eigenvalues, Spectrum};
pub use matrix::{gram, mass_matrix, path_discrepancy, stiffness_matrix, Path, SymmetricMatrix};
pub use quadrature::{gauss_legendre, quadrature, QuadratureRule};

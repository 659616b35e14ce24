//! Dense complex linear algebra and angular-momentum primitives.

mod eigen;
mod matrix;
mod spin;

pub use eigen::{
    hermitian_eigendecomposition_with, joint_eigendecomposition, unitarity_defect, Eigen, JointEigen,
};
pub use matrix::{
    anticommutator_half, basis_vector, commutator, expectation, inner, kron, norm, ComplexMatrix, C64, I, ONE, ZERO,
};
pub use spin::{angular_momentum_matrices, levi_civita, pauli, AngularMomentum, HalfInt};
pub(crate) use spin::spin_matrices;

use crate::error::Result;
use crate::units::Tolerances;

/// Eigendecomposition with the default tolerance record.
pub fn hermitian_eigendecomposition(m: &ComplexMatrix) -> Result<Eigen> {
    let tol = Tolerances::default();
    hermitian_eigendecomposition_with(m, tol.eigen_input, tol.jacobi_off_diagonal)
}

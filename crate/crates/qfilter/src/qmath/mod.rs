//! Complex linear algebra kernel for systems of up to three qubits.
//!
//! Matrices are capped at 8×8 and all spectra come from closed-form 2×2
//! eigenwork or short Jacobi sweeps; nothing here iterates to convergence on
//! data-dependent sizes.

mod matrix;
mod schmidt;
mod state;
mod su2;

pub use matrix::{
    c64, cnot, diag2, hadamard, hermitian_eigen2, hermitian_eigenvalues, kron, pauli,
    phase_aligned_distance, phase_fix_2, phase_max_fidelity, ComplexMatrix,
};
pub use schmidt::{entanglement_entropy, is_product, schmidt_decompose, SchmidtForm};
pub use state::{apply_to_subsystems, partial_trace, Label, StateVector};
pub use su2::{
    connecting_unitary, orthonormalize_columns, random_gaussian_matrix, random_state,
    random_unitary, su2_from_angles,
};

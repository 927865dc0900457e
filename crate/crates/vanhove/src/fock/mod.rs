//! Truncated bosonic Fock space: basis enumeration, states, sparse
//! operators, ladder-operator algebra and unitary exponentials.

pub mod basis;
pub mod operator;
pub mod ops;
pub mod sparse;
pub mod state;

pub use basis::{truncated_dimension, OccupationBasis, DEFAULT_MAX_STATES};
pub use operator::{
    commutator, exponential_anti_hermitian, hermitian_eigendecomposition, unitary_exponential,
    unitary_exponential_capped, LinearOperator, DEFAULT_EIGH_THRESHOLD, HERMITICITY_TOL,
};
pub use ops::{
    mode_annihilator, mode_creator, second_quantization, second_quantization_power, segal_field,
    segal_momentum, smeared_annihilator, smeared_creator,
};
pub use sparse::SparseMatrix;
pub use state::StateVector;

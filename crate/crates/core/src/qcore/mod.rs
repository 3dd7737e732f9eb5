//! Complex linear algebra over two atoms ⊗ a truncated cavity mode.

mod matrix;
mod operator;
mod state;

pub use matrix::{kron, pauli_x, sigma_minus, sigma_plus, sigma_z, Mat2, Mat4, Matrix};
pub use operator::{annihilation, creation, embed_atom, embed_atomic, number, SparseOperator};
pub use state::{
    atom1_outcome_probs, basis_state, fidelity_mixture, fidelity_pure, make_space, thermal_levels_for, thermal_tail,
    thermal_weights, Atom, Level, MixtureState, Space, StateVector,
};

pub use num_complex::Complex64 as C64;

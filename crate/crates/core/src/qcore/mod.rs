//! Dense quantum linear algebra on qubit registers.

mod entropy;
mod gates;
mod operators;
mod register;

pub(crate) use entropy::log_hermitian;
pub use entropy::{
    gibbs_qubit, relative_entropy, trace_distance, von_neumann_entropy, RelativeEntropy,
};
pub use gates::{
    collision_unitary, interaction_hamiltonian, partial_swap, pauli_x, pauli_y, pauli_z,
    swap_unitary,
};
pub use operators::{
    expm_hermitian, CouplingTriple, DensityOperator, QubitHamiltonianParams, UnitaryOperator, C64,
    HERMITICITY_TOL, POSITIVITY_TOL, TRACE_TOL, UNITARITY_TOL,
};
pub use register::{
    tensor_product, tensor_product_within, Label, LabeledRegister, DEFAULT_MAX_QUBITS,
};

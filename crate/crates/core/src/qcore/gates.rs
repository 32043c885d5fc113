use nalgebra::DMatrix;

use super::operators::{c, expm_hermitian, CouplingTriple, UnitaryOperator, C64};
use crate::{Error, Result};

pub fn pauli_x() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn pauli_y() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

pub fn pauli_z() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

/// `−½ (Jx σxσx + Jy σyσy + Jz σzσz)`.
pub fn interaction_hamiltonian(j: &CouplingTriple) -> DMatrix<C64> {
    let (x, y, z) = (pauli_x(), pauli_y(), pauli_z());
    (x.kronecker(&x) * c(j.jx, 0.0)
        + y.kronecker(&y) * c(j.jy, 0.0)
        + z.kronecker(&z) * c(j.jz, 0.0))
        * c(-0.5, 0.0)
}

/// Two-qubit collision unitary for couplings `j` acting for a time `tau`.
///
/// The unitary is `exp(+i Ĥ τ)` with `Ĥ` from [`interaction_hamiltonian`]. With
/// this orientation an isotropic collision is exactly the partial SWAP
/// `cos(Jτ)𝟙 − i sin(Jτ)Ŝ` up to the global phase `e^{iJτ/2}`; the opposite
/// orientation gives the complex-conjugate map, which acts identically on
/// real initial states.
pub fn collision_unitary(j: &CouplingTriple, tau: f64) -> Result<UnitaryOperator> {
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::Argument(format!(
            "collision time {tau} must be finite and ≥ 0"
        )));
    }
    let h = interaction_hamiltonian(j);
    let u = expm_hermitian(&h, -tau);
    UnitaryOperator::new(u)
}

/// `Ŝ|ab⟩ = |ba⟩`.
pub fn swap_unitary() -> UnitaryOperator {
    let mut m = DMatrix::zeros(4, 4);
    m[(0, 0)] = c(1.0, 0.0);
    m[(1, 2)] = c(1.0, 0.0);
    m[(2, 1)] = c(1.0, 0.0);
    m[(3, 3)] = c(1.0, 0.0);
    UnitaryOperator::from_matrix_unchecked(m)
}

/// `cos θ 𝟙 − i sin θ Ŝ`.
pub fn partial_swap(theta: f64) -> UnitaryOperator {
    let s = swap_unitary();
    let m =
        DMatrix::<C64>::identity(4, 4) * c(theta.cos(), 0.0) + s.matrix() * c(0.0, -theta.sin());
    UnitaryOperator::from_matrix_unchecked(m)
}

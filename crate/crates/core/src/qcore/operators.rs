use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::{Error, Result};

pub type C64 = Complex64;

/// Entrywise tolerance on `ρ − ρ†`.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance on `|Tr ρ − 1|`.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues down to `-POSITIVITY_TOL` count as round-off zeros.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Entrywise tolerance on `U†U − 𝟙`.
pub const UNITARITY_TOL: f64 = 1e-12;

// Positivity needs an eigendecomposition; debug builds only check it on small
// operators so that large registers stay cheap to evolve.
const DEBUG_POSITIVITY_MAX_DIM: usize = 16;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub(crate) fn hermitian_part(m: &DMatrix<C64>) -> DMatrix<C64> {
    (m + m.adjoint()) * c(0.5, 0.0)
}

/// Eigenvalues (ascending) and eigenvectors of the Hermitian part of `m`.
pub(crate) fn eigh(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

pub(crate) fn eigvalsh(m: &DMatrix<C64>) -> Vec<f64> {
    let mut values: Vec<f64> = hermitian_part(m)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

/// `exp(−i·h·t)` for Hermitian `h`, via eigendecomposition of its Hermitian part.
pub fn expm_hermitian(h: &DMatrix<C64>, t: f64) -> DMatrix<C64> {
    let (values, vectors) = eigh(h);
    let phases = DMatrix::from_fn(values.len(), values.len(), |i, j| {
        if i == j {
            C64::from_polar(1.0, -values[i] * t)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    &vectors * phases * vectors.adjoint()
}

pub(crate) fn is_power_of_two(n: usize) -> bool {
    n > 0 && n & (n - 1) == 0
}

/// A Hermitian, unit-trace, positive-semidefinite matrix on `2^k` dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    mat: DMatrix<C64>,
}

impl DensityOperator {
    /// Validates all three invariants.
    pub fn new(mat: DMatrix<C64>) -> Result<Self> {
        let rho = Self { mat };
        rho.check()?;
        Ok(rho)
    }

    /// Wraps a matrix produced by an invariant-preserving operation, rescaling
    /// away round-off drift of the trace.
    pub(crate) fn from_matrix_unchecked(mut mat: DMatrix<C64>) -> Self {
        let tr = mat.trace().re;
        if tr > 0.0 && tr != 1.0 {
            mat.unscale_mut(tr);
        }
        let rho = Self { mat };
        if cfg!(debug_assertions) {
            let cheap = rho.check_hermitian_unit_trace();
            debug_assert!(cheap.is_ok(), "{:?}", cheap);
            if rho.dim() <= DEBUG_POSITIVITY_MAX_DIM {
                let full = rho.check();
                debug_assert!(full.is_ok(), "{:?}", full);
            }
        }
        rho
    }

    /// Projector onto a normalized version of `amplitudes`.
    pub fn pure(amplitudes: &[C64]) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !is_power_of_two(amplitudes.len()) || norm == 0.0 || !norm.is_finite() {
            return Err(Error::Argument(
                "pure state needs a non-zero vector of length 2^k".into(),
            ));
        }
        let psi: Vec<C64> = amplitudes.iter().map(|a| a / norm).collect();
        let n = psi.len();
        let mat = DMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj());
        Ok(Self::from_matrix_unchecked(mat))
    }

    /// `|k⟩⟨k|` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if !is_power_of_two(dim) || k >= dim {
            return Err(Error::Argument(format!(
                "basis state {k} in dimension {dim}"
            )));
        }
        let mut mat = DMatrix::zeros(dim, dim);
        mat[(k, k)] = c(1.0, 0.0);
        Ok(Self { mat })
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if !is_power_of_two(dim) {
            return Err(Error::Argument(format!(
                "dimension {dim} is not a power of two"
            )));
        }
        Ok(Self {
            mat: DMatrix::identity(dim, dim) * c(1.0 / dim as f64, 0.0),
        })
    }

    /// Qubit state `(𝟙 + x σx + y σy + z σz)/2`; requires `|r| ≤ 1`.
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        let r = (x * x + y * y + z * z).sqrt();
        if !r.is_finite() || r > 1.0 + 1e-12 {
            return Err(Error::Argument(format!(
                "Bloch vector ({x}, {y}, {z}) lies outside the unit ball"
            )));
        }
        let mat = DMatrix::from_row_slice(
            2,
            2,
            &[
                c(0.5 * (1.0 + z), 0.0),
                c(0.5 * x, -0.5 * y),
                c(0.5 * x, 0.5 * y),
                c(0.5 * (1.0 - z), 0.0),
            ],
        );
        Self::new(mat)
    }

    /// `|0⟩⟨0|`, the ground state of `−ω₀σz`.
    pub fn zero() -> Self {
        Self::basis(2, 0).expect("qubit basis state")
    }

    /// `|1⟩⟨1|`.
    pub fn one() -> Self {
        Self::basis(2, 1).expect("qubit basis state")
    }

    /// `|+⟩⟨+|` with `|+⟩ = (|0⟩ + |1⟩)/√2`.
    pub fn plus() -> Self {
        Self::pure(&[c(1.0, 0.0), c(1.0, 0.0)]).expect("valid amplitudes")
    }

    /// `|−⟩⟨−|` with `|−⟩ = (|0⟩ − |1⟩)/√2`.
    pub fn minus() -> Self {
        Self::pure(&[c(1.0, 0.0), c(-1.0, 0.0)]).expect("valid amplitudes")
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.mat)
    }

    /// `Tr(ρ·op)`.
    pub fn expectation(&self, op: &DMatrix<C64>) -> Result<C64> {
        if op.shape() != self.mat.shape() {
            return Err(Error::Argument(format!(
                "observable of shape {:?} on a state of dimension {}",
                op.shape(),
                self.dim()
            )));
        }
        Ok((&self.mat * op).trace())
    }

    /// `(⟨σx⟩, ⟨σy⟩, ⟨σz⟩)` of a qubit state.
    pub fn bloch_vector(&self) -> Option<[f64; 3]> {
        (self.dim() == 2).then(|| {
            let m = &self.mat;
            [
                2.0 * m[(0, 1)].re,
                -2.0 * m[(0, 1)].im,
                (m[(0, 0)] - m[(1, 1)]).re,
            ]
        })
    }

    /// Largest entrywise deviation from another operator.
    pub fn max_abs_diff(&self, other: &DensityOperator) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        max_abs(&(&self.mat - &other.mat))
    }

    /// `(1−ε)ρ + ε𝟙/dim`.
    pub fn mixed_with_identity(&self, eps: f64) -> Self {
        let dim = self.dim();
        let mat = &self.mat * c(1.0 - eps, 0.0)
            + DMatrix::<C64>::identity(dim, dim) * c(eps / dim as f64, 0.0);
        Self::from_matrix_unchecked(mat)
    }

    fn check_hermitian_unit_trace(&self) -> Result<()> {
        let m = &self.mat;
        if m.nrows() != m.ncols() || !is_power_of_two(m.nrows()) {
            return Err(Error::Invariant(format!(
                "density operator of shape {:?} is not 2^k × 2^k",
                m.shape()
            )));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invariant("non-finite matrix entry".into()));
        }
        let herm = max_abs(&(m - m.adjoint()));
        if herm > HERMITICITY_TOL {
            return Err(Error::Invariant(format!(
                "not Hermitian: max |ρ − ρ†| = {herm:e}"
            )));
        }
        let tr = m.trace();
        if (tr - c(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::Invariant(format!("trace {tr} differs from 1")));
        }
        Ok(())
    }

    /// Re-checks all invariants.
    pub fn check(&self) -> Result<()> {
        self.check_hermitian_unit_trace()?;
        let lowest = self.eigenvalues()[0];
        if lowest < -POSITIVITY_TOL {
            return Err(Error::Invariant(format!("negative eigenvalue {lowest:e}")));
        }
        Ok(())
    }
}

/// A unitary matrix acting on `2^k` dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryOperator {
    mat: DMatrix<C64>,
}

impl UnitaryOperator {
    pub fn new(mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() || !is_power_of_two(mat.nrows()) {
            return Err(Error::Invariant(format!(
                "unitary of shape {:?} is not 2^k × 2^k",
                mat.shape()
            )));
        }
        let n = mat.nrows();
        let defect = max_abs(&(mat.adjoint() * &mat - DMatrix::<C64>::identity(n, n)));
        if defect > UNITARITY_TOL {
            return Err(Error::Invariant(format!(
                "not unitary: max |U†U − 𝟙| = {defect:e}"
            )));
        }
        Ok(Self { mat })
    }

    pub(crate) fn from_matrix_unchecked(mat: DMatrix<C64>) -> Self {
        Self { mat }
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
        }
    }

    /// `self · other`, i.e. `other` acts first.
    pub fn then_after(&self, other: &UnitaryOperator) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Argument(
                "composing unitaries of different dimension".into(),
            ));
        }
        Ok(Self {
            mat: &self.mat * &other.mat,
        })
    }

    /// `U ρ U†` on a full-size state.
    pub fn conjugate(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        if self.dim() != rho.dim() {
            return Err(Error::Argument(format!(
                "unitary of dimension {} on a state of dimension {}",
                self.dim(),
                rho.dim()
            )));
        }
        let out = &self.mat * rho.matrix() * self.mat.adjoint();
        Ok(DensityOperator::from_matrix_unchecked(hermitian_part(&out)))
    }
}

/// Exchange couplings `(Jx, Jy, Jz)` of a two-qubit collision, in units of `J`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingTriple {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
}

impl CouplingTriple {
    pub fn new(jx: f64, jy: f64, jz: f64) -> Result<Self> {
        if !(jx.is_finite() && jy.is_finite() && jz.is_finite()) {
            return Err(Error::Argument(format!(
                "non-finite coupling ({jx}, {jy}, {jz})"
            )));
        }
        Ok(Self { jx, jy, jz })
    }

    /// Heisenberg coupling `Jx = Jy = Jz = j`, whose collision is a partial SWAP.
    pub fn isotropic(j: f64) -> Self {
        Self {
            jx: j,
            jy: j,
            jz: j,
        }
    }

    pub fn is_isotropic(&self) -> bool {
        const TOL: f64 = 1e-12;
        (self.jx - self.jy).abs() <= TOL && (self.jy - self.jz).abs() <= TOL
    }
}

/// Free qubit Hamiltonian `−ω₀σz` (ħ = 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitHamiltonianParams {
    pub omega0: f64,
}

impl Default for QubitHamiltonianParams {
    fn default() -> Self {
        Self { omega0: 1.0 }
    }
}

impl QubitHamiltonianParams {
    pub fn new(omega0: f64) -> Result<Self> {
        if !omega0.is_finite() {
            return Err(Error::Argument(format!("non-finite omega0 {omega0}")));
        }
        Ok(Self { omega0 })
    }

    pub fn hamiltonian(&self) -> DMatrix<C64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(-self.omega0, 0.0),
            c(self.omega0, 0.0),
        ]))
    }

    /// `⟨−ω₀σz⟩` of a qubit state.
    pub fn energy(&self, rho: &DensityOperator) -> f64 {
        let m = rho.matrix();
        -self.omega0 * (m[(0, 0)].re - m[(1, 1)].re)
    }
}

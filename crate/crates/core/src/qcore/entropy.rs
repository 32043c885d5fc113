//! Distances and entropic functionals. All logarithms are natural (nats).

use super::operators::{c, eigh, eigvalsh, DensityOperator, QubitHamiltonianParams};
use crate::{Error, Result};
use nalgebra::DMatrix;

/// Eigenvalues below this carry no entropy.
const EIGENVALUE_FLOOR: f64 = 1e-15;
/// A reference eigenvalue this small counts as outside the support.
const SUPPORT_EIGENVALUE: f64 = 1e-12;
/// Weight a state must put outside the reference support to diverge.
const SUPPORT_WEIGHT: f64 = 1e-10;

/// `½ Σ |λ|` over the eigenvalues of `a − b`.
pub fn trace_distance(a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::Argument(format!(
            "trace distance between dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let diff = a.matrix() - b.matrix();
    let d = 0.5 * eigvalsh(&diff).iter().map(|l| l.abs()).sum::<f64>();
    Ok(d.clamp(0.0, 1.0))
}

fn eta(p: f64) -> f64 {
    if p < EIGENVALUE_FLOOR {
        0.0
    } else {
        let p = p.min(1.0);
        -p * p.ln()
    }
}

/// `−Tr ρ ln ρ`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    rho.eigenvalues().into_iter().map(eta).sum::<f64>().max(0.0)
}

/// Value of `S(ρ‖σ)`, infinite when `ρ` leaves the support of `σ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RelativeEntropy {
    Finite(f64),
    Infinite,
}

impl RelativeEntropy {
    pub fn value(self) -> f64 {
        match self {
            RelativeEntropy::Finite(v) => v,
            RelativeEntropy::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, RelativeEntropy::Infinite)
    }
}

/// `Tr ρ (ln ρ − ln σ)`.
pub fn relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> Result<RelativeEntropy> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Argument(format!(
            "relative entropy between dimensions {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let (mu, vecs) = eigh(sigma.matrix());
    // Weight of ρ along each eigenvector of σ: ⟨s_j|ρ|s_j⟩.
    let rotated = vecs.adjoint() * rho.matrix() * &vecs;
    let mut cross = 0.0;
    for (j, &m) in mu.iter().enumerate() {
        let w = rotated[(j, j)].re;
        if m < SUPPORT_EIGENVALUE {
            if w > SUPPORT_WEIGHT {
                return Ok(RelativeEntropy::Infinite);
            }
            continue;
        }
        cross += w * m.ln();
    }
    let value = -von_neumann_entropy(rho) - cross;
    Ok(RelativeEntropy::Finite(value.max(0.0)))
}

/// `ln σ` of a full-rank Hermitian matrix.
pub(crate) fn log_hermitian(
    m: &DMatrix<num_complex::Complex64>,
) -> Result<DMatrix<num_complex::Complex64>> {
    let (values, vecs) = eigh(m);
    if values[0] <= 0.0 {
        return Err(Error::Argument("logarithm of a singular operator".into()));
    }
    let n = values.len();
    let diag = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            c(values[i].ln(), 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    Ok(&vecs * diag * vecs.adjoint())
}

/// Thermal qubit state `e^{−βĤ}/Z` for `Ĥ = −ω₀σz`.
pub fn gibbs_qubit(beta: f64, h: &QubitHamiltonianParams) -> DensityOperator {
    // Logistic form stays finite for any β ω₀.
    let x = 2.0 * beta * h.omega0;
    let p_excited = 1.0 / (1.0 + x.exp());
    let p_ground = 1.0 / (1.0 + (-x).exp());
    let mat = DMatrix::from_row_slice(
        2,
        2,
        &[
            c(p_ground, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(p_excited, 0.0),
        ],
    );
    DensityOperator::from_matrix_unchecked(mat)
}

//! Random states, unitaries and couplings for randomized checks.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::qcore::{CouplingTriple, DensityOperator, UnitaryOperator, C64};

fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<C64> {
    DMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Full-rank mixed state `G G† / Tr(G G†)` from a Ginibre matrix.
pub fn density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityOperator {
    let g = ginibre(dim, rng);
    let w = &g * g.adjoint();
    let tr = w.trace();
    let m = w / tr;
    DensityOperator::new((&m + m.adjoint()) * C64::new(0.5, 0.0)).expect("Ginibre state is valid")
}

pub fn pure<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityOperator {
    let amps: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    DensityOperator::pure(&amps).expect("non-zero Gaussian vector")
}

/// Haar-distributed unitary from the QR decomposition of a Ginibre matrix.
pub fn unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> UnitaryOperator {
    let qr = ginibre(dim, rng).qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            let d = r[(i, i)];
            d / d.norm()
        } else {
            C64::new(0.0, 0.0)
        }
    });
    UnitaryOperator::new(q * phases).expect("QR factor is unitary")
}

/// Couplings drawn uniformly from `[lo, hi]`.
pub fn coupling<R: Rng + ?Sized>(lo: f64, hi: f64, rng: &mut R) -> CouplingTriple {
    CouplingTriple {
        jx: rng.random_range(lo..=hi),
        jy: rng.random_range(lo..=hi),
        jz: rng.random_range(lo..=hi),
    }
}

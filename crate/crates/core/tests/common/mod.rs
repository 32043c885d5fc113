#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use colmem_core::engine::{AncillaInit, ModelConfig};
use colmem_core::qcore::{
    collision_unitary, pauli_z, swap_unitary, tensor_product, trace_distance, CouplingTriple,
    DensityOperator, Label, LabeledRegister, UnitaryOperator, C64,
};
use colmem_core::random;
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn fig2_coupling() -> CouplingTriple {
    CouplingTriple::new(1.0, 0.5, 1.0).unwrap()
}

/// Anisotropic couplings, weak SA, strong AA, ground-state ancillas.
pub fn fig2_config(steps: usize) -> ModelConfig {
    ModelConfig {
        sa_coupling: fig2_coupling(),
        aa_coupling: fig2_coupling(),
        tau_sa: 0.05,
        tau_aa: 0.95 * FRAC_PI_2,
        steps,
        ..ModelConfig::default()
    }
}

/// Partial swaps everywhere, system excited, ground-state ancillas.
pub fn partial_swap_config(tau_aa: f64, steps: usize) -> ModelConfig {
    ModelConfig {
        sa_coupling: CouplingTriple::isotropic(1.0),
        aa_coupling: CouplingTriple::isotropic(1.0),
        tau_sa: 0.05,
        tau_aa,
        steps,
        system_init: DensityOperator::one(),
        ..ModelConfig::default()
    }
}

pub fn fig7_config(steps: usize) -> ModelConfig {
    ModelConfig {
        ancilla_init: AncillaInit::Gibbs { beta: 1.0 },
        system_init: DensityOperator::zero(),
        ..partial_swap_config(0.95 * FRAC_PI_2, steps)
    }
}

/// Couplings in `[−2, 2]`, angles in `[0, 2]`, random mixed ancillas and
/// system.
pub fn random_config<R: Rng>(rng: &mut R, depth: usize, steps: usize) -> ModelConfig {
    ModelConfig {
        sa_coupling: random::coupling(-2.0, 2.0, rng),
        aa_coupling: random::coupling(-2.0, 2.0, rng),
        tau_sa: rng.random_range(0.0..2.0),
        tau_aa: rng.random_range(0.0..2.0),
        depth,
        steps,
        ancilla_init: AncillaInit::Explicit(random::density(2, rng)),
        system_init: random::density(2, rng),
        ..ModelConfig::default()
    }
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Entrywise Kronecker product.
pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    DMatrix::from_fn(ra * rb, ca * cb, |i, j| {
        a[(i / rb, j / cb)] * b[(i % rb, j % cb)]
    })
}

/// Reduced state of the first factor of a `da·db` matrix.
pub fn trace_second(m: &DMatrix<C64>, da: usize, db: usize) -> DMatrix<C64> {
    DMatrix::from_fn(da, da, |i, j| {
        (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()
    })
}

pub fn trace_first(m: &DMatrix<C64>, da: usize, db: usize) -> DMatrix<C64> {
    DMatrix::from_fn(db, db, |i, j| {
        (0..da).map(|k| m[(k * db + i, k * db + j)]).sum()
    })
}

/// `−Σ λ ln λ` over the eigenvalues of a Hermitian matrix.
pub fn entropy_oracle(m: &DMatrix<C64>) -> f64 {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    h.symmetric_eigenvalues()
        .iter()
        .filter(|&&l| l > 1e-15)
        .map(|&l| -l * l.ln())
        .sum()
}

pub fn mi_oracle(m: &DMatrix<C64>, da: usize, db: usize) -> f64 {
    entropy_oracle(&trace_second(m, da, db)) + entropy_oracle(&trace_first(m, da, db))
        - entropy_oracle(m)
}

/// Coefficients `(a, b)` of `U = a·𝟙 + b·Ŝ` from the overlaps with `𝟙` and `Ŝ`.
pub fn identity_swap_components(u: &UnitaryOperator) -> (C64, C64) {
    let s = swap_unitary();
    let t1 = u.matrix().trace();
    let ts = (u.matrix() * s.matrix()).trace();
    // Tr 𝟙 = 4, Tr Ŝ = 2 on two qubits.
    let a = (t1 * 4.0 - ts * 2.0) / 12.0;
    let b = (ts * 4.0 - t1 * 2.0) / 12.0;
    (a, b)
}

pub type Check = fn(&mut StdRng) -> Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn check_partial_trace_of_product(rng: &mut StdRng) -> Result<(), String> {
    let da = 1 << rng.random_range(1..=2);
    let a = random::density(da, rng);
    let b = random::density(2, rng);
    let ab = tensor_product(&a, &b).map_err(|e| e.to_string())?;
    let direct = kron(a.matrix(), b.matrix());
    ensure(max_abs(&(ab.matrix() - &direct)) < 1e-12, || {
        "tensor product entries".into()
    })?;
    let labels: Vec<Label> = (0..a.num_qubits() + 1).map(Label::Ancilla).collect();
    let reg = LabeledRegister::new(ab, labels.clone()).map_err(|e| e.to_string())?;
    let kept = reg
        .partial_trace(&labels[..a.num_qubits()])
        .map_err(|e| e.to_string())?;
    let err = kept.state().max_abs_diff(&a);
    ensure(err < 1e-12, || {
        format!("partial trace recovered a with error {err:e}")
    })
}

pub fn check_triangle_inequality(rng: &mut StdRng) -> Result<(), String> {
    let dim = 1 << rng.random_range(1..=2);
    let [a, b, c] = [0; 3].map(|_| random::density(dim, rng));
    let d = |x: &DensityOperator, y: &DensityOperator| trace_distance(x, y).unwrap();
    let (ab, bc, ac) = (d(&a, &b), d(&b, &c), d(&a, &c));
    ensure(ac <= ab + bc + 1e-10, || format!("{ac} > {ab} + {bc}"))?;
    ensure((0.0..=1.0).contains(&ab), || {
        format!("distance {ab} outside [0,1]")
    })
}

pub fn check_mi_local_unitary_invariance(rng: &mut StdRng) -> Result<(), String> {
    let rho = random::density(4, rng);
    let ua = random::unitary(2, rng);
    let ub = random::unitary(2, rng);
    let local = UnitaryOperator::new(kron(ua.matrix(), ub.matrix())).map_err(|e| e.to_string())?;
    let reg = LabeledRegister::new(rho, vec![Label::System, Label::Ancilla(1)]).unwrap();
    let moved = reg
        .apply_on(&[Label::System, Label::Ancilla(1)], &local)
        .unwrap();
    let before = reg.mutual_information(&[Label::System]).unwrap();
    let after = moved.mutual_information(&[Label::System]).unwrap();
    let oracle = mi_oracle(reg.state().matrix(), 2, 2);
    ensure((before - after).abs() < 1e-10, || {
        format!("MI {before} vs {after}")
    })?;
    ensure((before - oracle).abs() < 1e-10, || {
        format!("MI {before} vs oracle {oracle}")
    })?;
    ensure(before >= -1e-10, || format!("negative MI {before}"))
}

pub fn check_magnetization_conservation(rng: &mut StdRng) -> Result<(), String> {
    let jxy = rng.random_range(-2.0..2.0);
    let j = CouplingTriple::new(jxy, jxy, rng.random_range(-2.0..2.0)).unwrap();
    let u = collision_unitary(&j, rng.random_range(0.0..3.0)).unwrap();
    let id = DMatrix::<C64>::identity(2, 2);
    let mz = kron(&pauli_z(), &id) + kron(&id, &pauli_z());
    let comm = u.matrix() * &mz - &mz * u.matrix();
    ensure(max_abs(&comm) < 1e-12, || {
        format!("[U, Mz] = {:e}", max_abs(&comm))
    })
}

pub fn check_swap_sign_reflection(rng: &mut StdRng) -> Result<(), String> {
    let jt: f64 = rng.random_range(0.05..1.5);
    let j = CouplingTriple::isotropic(1.0);
    let (a1, b1) = identity_swap_components(&collision_unitary(&j, jt).unwrap());
    let (a2, b2) =
        identity_swap_components(&collision_unitary(&j, std::f64::consts::PI - jt).unwrap());
    let r1 = b1 / a1;
    let r2 = b2 / a2;
    ensure((r1 + r2).norm() < 1e-9 * (1.0 + r1.norm()), || {
        format!("swap/identity ratio {r1} vs {r2}")
    })?;
    // cos(Jτ)·𝟙 − i sin(Jτ)·Ŝ
    let expected = C64::new(0.0, -jt.tan());
    ensure(
        (r1 - expected).norm() < 1e-9 * (1.0 + expected.norm()),
        || format!("ratio {r1}, partial swap gives {expected}"),
    )
}

pub fn check_swap_conjugation(rng: &mut StdRng) -> Result<(), String> {
    let a = random::density(2, rng);
    let b = random::density(2, rng);
    let swapped = swap_unitary()
        .conjugate(&tensor_product(&a, &b).unwrap())
        .unwrap();
    let direct = kron(b.matrix(), a.matrix());
    ensure(max_abs(&(swapped.matrix() - direct)) < 1e-12, || {
        "Ŝ(a⊗b)Ŝ ≠ b⊗a".into()
    })
}

pub fn check_apply_trace_commute(rng: &mut StdRng) -> Result<(), String> {
    let labels = vec![Label::System, Label::Ancilla(1), Label::Ancilla(2)];
    let reg = LabeledRegister::new(random::density(8, rng), labels).unwrap();
    let u = random::unitary(4, rng);
    // Targets in either order, the traced qubit anywhere.
    let perm: Vec<Label> = match rng.random_range(0..3) {
        0 => vec![Label::System, Label::Ancilla(1)],
        1 => vec![Label::Ancilla(2), Label::System],
        _ => vec![Label::Ancilla(1), Label::Ancilla(2)],
    };
    let first = reg
        .apply_on(&perm, &u)
        .unwrap()
        .partial_trace(&perm)
        .unwrap();
    let second = reg
        .partial_trace(&perm)
        .unwrap()
        .apply_on(&perm, &u)
        .unwrap();
    let err = first.state().max_abs_diff(second.state());
    ensure(err < 1e-12, || format!("apply/trace mismatch {err:e}"))?;
    first.state().check().map_err(|e| e.to_string())
}

pub fn check_decorrelate_kills_mi(rng: &mut StdRng) -> Result<(), String> {
    let rho = if rng.random_bool(0.5) {
        random::pure(4, rng)
    } else {
        random::density(4, rng)
    };
    let reg = LabeledRegister::new(rho, vec![Label::System, Label::Ancilla(1)]).unwrap();
    let d = reg.decorrelate(&[Label::System]).unwrap();
    let mi = d.mutual_information(&[Label::System]).unwrap();
    ensure(mi.abs() < 1e-10, || {
        format!("MI after decorrelation {mi:e}")
    })?;
    let direct = kron(
        &trace_second(reg.state().matrix(), 2, 2),
        &trace_first(reg.state().matrix(), 2, 2),
    );
    ensure(max_abs(&(d.state().matrix() - direct)) < 1e-12, || {
        "not the product of marginals".into()
    })
}

pub fn check_collision_preserves_state(rng: &mut StdRng) -> Result<(), String> {
    let j = random::coupling(-2.0, 2.0, rng);
    let u = collision_unitary(&j, rng.random_range(0.0..3.0)).unwrap();
    let unitarity = max_abs(&(u.matrix().adjoint() * u.matrix() - DMatrix::<C64>::identity(4, 4)));
    ensure(unitarity < 1e-12, || format!("U†U − 𝟙 = {unitarity:e}"))?;
    let out = u.conjugate(&random::density(4, rng)).unwrap();
    out.check().map_err(|e| e.to_string())
}

pub const BATTERY: &[(&str, Check)] = &[
    ("partial trace of product", check_partial_trace_of_product),
    ("triangle inequality", check_triangle_inequality),
    (
        "mutual information under local unitaries",
        check_mi_local_unitary_invariance,
    ),
    (
        "magnetization conservation",
        check_magnetization_conservation,
    ),
    ("swap sign reflection", check_swap_sign_reflection),
    ("swap conjugation", check_swap_conjugation),
    ("apply and trace commute", check_apply_trace_commute),
    (
        "decorrelation removes correlations",
        check_decorrelate_kills_mi,
    ),
    (
        "collision preserves states",
        check_collision_preserves_state,
    ),
];

/// Runs `cases` randomized cases spread over the battery.
pub fn run_battery(seed: u64, cases: usize) -> Result<(), String> {
    let mut rng = rng(seed);
    for i in 0..cases {
        let (name, check) = BATTERY[i % BATTERY.len()];
        check(&mut rng).map_err(|e| format!("case {i} ({name}): {e}"))?;
    }
    Ok(())
}

/// Named qcore examples with exact or closed-form expected values.
pub fn qcore_examples() -> Vec<(&'static str, bool)> {
    use colmem_core::qcore::{
        gibbs_qubit, relative_entropy, von_neumann_entropy, QubitHamiltonianParams,
    };
    let zero = DensityOperator::zero();
    let one = DensityOperator::one();
    let half = DensityOperator::maximally_mixed(2).unwrap();
    let h = QubitHamiltonianParams::default();
    let e = std::f64::consts::E;
    let p0 = e / (e + 1.0 / e);
    let gibbs = gibbs_qubit(1.0, &h);
    let bell = DensityOperator::pure(&[
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
    ])
    .unwrap();
    let bell_reg = LabeledRegister::new(bell, vec![Label::System, Label::Ancilla(1)]).unwrap();
    let ln2 = std::f64::consts::LN_2;
    let j = CouplingTriple::isotropic(1.0);
    let full = collision_unitary(&j, FRAC_PI_2).unwrap();
    let b01 = DensityOperator::basis(4, 1).unwrap();
    let b10 = DensityOperator::basis(4, 2).unwrap();
    let pswap_overlap = {
        let jt = 0.37_f64;
        let u = collision_unitary(&j, jt).unwrap();
        let s = swap_unitary();
        let ps = DMatrix::<C64>::identity(4, 4) * C64::new(jt.cos(), 0.0)
            - s.matrix() * C64::new(0.0, jt.sin());
        (u.matrix().adjoint() * ps).trace().norm()
    };
    let gibbs_entropy_oracle = -(p0 * p0.ln() + (1.0 - p0) * (1.0 - p0).ln());
    vec![
        (
            "I/2 ⊗ I/2 = I/4",
            tensor_product(&half, &half)
                .unwrap()
                .max_abs_diff(&DensityOperator::maximally_mixed(4).unwrap())
                < 1e-15,
        ),
        (
            "|0⟩⊗|1⟩ = |01⟩",
            tensor_product(&zero, &one).unwrap().max_abs_diff(&b01) < 1e-15,
        ),
        (
            "Bell marginal is I/2",
            bell_reg
                .marginal(Label::System)
                .unwrap()
                .max_abs_diff(&half)
                < 1e-12,
        ),
        (
            "zero-time collision is identity",
            max_abs(
                &(collision_unitary(&j, 0.0).unwrap().matrix() - DMatrix::<C64>::identity(4, 4)),
            ) < 1e-15,
        ),
        (
            "Jτ = π/2 swaps |01⟩ to |10⟩",
            full.conjugate(&b01).unwrap().max_abs_diff(&b10) < 1e-12,
        ),
        (
            "isotropic collision is a partial swap",
            (pswap_overlap - 4.0).abs() < 1e-12,
        ),
        (
            "Ŝ·Ŝ = 𝟙",
            max_abs(
                &(swap_unitary().matrix() * swap_unitary().matrix()
                    - DMatrix::<C64>::identity(4, 4)),
            ) < 1e-15,
        ),
        (
            "Bell decorrelates to I/4",
            bell_reg
                .decorrelate(&[Label::System])
                .unwrap()
                .state()
                .max_abs_diff(&DensityOperator::maximally_mixed(4).unwrap())
                < 1e-12,
        ),
        (
            "Gibbs β = 0 is I/2",
            gibbs_qubit(0.0, &h).max_abs_diff(&half) < 1e-15,
        ),
        (
            "Gibbs β = 1e3 is |0⟩",
            gibbs_qubit(1e3, &h).max_abs_diff(&zero) < 1e-12,
        ),
        (
            "Gibbs β = 1 populations",
            (gibbs.matrix()[(0, 0)].re - p0).abs() < 1e-12 && (p0 - 0.880797).abs() < 1e-6,
        ),
        (
            "D(|0⟩, |1⟩) = 1",
            (trace_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-12,
        ),
        (
            "D(ρ, ρ) = 0",
            trace_distance(&gibbs, &gibbs).unwrap() == 0.0,
        ),
        (
            "D(|0⟩, |+⟩) = 1/√2",
            (trace_distance(&zero, &DensityOperator::plus()).unwrap() - 0.5_f64.sqrt()).abs()
                < 1e-12,
        ),
        (
            "S(pure) = 0",
            von_neumann_entropy(&DensityOperator::plus()).abs() < 1e-12,
        ),
        (
            "S(I/2) = ln 2",
            (von_neumann_entropy(&half) - ln2).abs() < 1e-12,
        ),
        (
            "S(Gibbs β = 1)",
            (von_neumann_entropy(&gibbs) - gibbs_entropy_oracle).abs() < 1e-12
                && (gibbs_entropy_oracle - 0.365334).abs() < 1e-6,
        ),
        (
            "S(ρ‖ρ) = 0",
            relative_entropy(&gibbs, &gibbs).unwrap().value().abs() < 1e-12,
        ),
        (
            "S(|0⟩‖I/2) = ln 2",
            (relative_entropy(&zero, &half).unwrap().value() - ln2).abs() < 1e-12,
        ),
        (
            "S(|0⟩‖|1⟩) is infinite",
            relative_entropy(&zero, &one).unwrap().is_infinite(),
        ),
        (
            "product MI = 0",
            LabeledRegister::product(
                &[
                    (Label::System, gibbs.clone()),
                    (Label::Ancilla(1), half.clone()),
                ],
                12,
            )
            .unwrap()
            .mutual_information(&[Label::System])
            .unwrap()
            .abs()
                < 1e-12,
        ),
        (
            "Bell MI = 2 ln 2",
            (bell_reg.mutual_information(&[Label::System]).unwrap() - 2.0 * ln2).abs() < 1e-12,
        ),
    ]
}

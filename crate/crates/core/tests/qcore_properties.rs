mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn partial_trace_inverts_tensor_product(seed in any::<u64>()) {
        check_partial_trace_of_product(&mut rng(seed)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn trace_distance_triangle_inequality(seed in any::<u64>()) {
        check_triangle_inequality(&mut rng(seed)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn mutual_information_local_unitary_invariance(seed in any::<u64>()) {
        check_mi_local_unitary_invariance(&mut rng(seed)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn xx_yy_symmetric_coupling_conserves_magnetization(seed in any::<u64>()) {
        check_magnetization_conservation(&mut rng(seed)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn reflected_angle_flips_swap_component(seed in any::<u64>()) {
        check_swap_sign_reflection(&mut rng(seed)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn swap_exchanges_product_factors(seed in any::<u64>()) {
        check_swap_conjugation(&mut rng(seed)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn apply_commutes_with_disjoint_trace(seed in any::<u64>()) {
        check_apply_trace_commute(&mut rng(seed)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn decorrelation_gives_zero_mutual_information(seed in any::<u64>()) {
        check_decorrelate_kills_mi(&mut rng(seed)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn collisions_preserve_density_operators(seed in any::<u64>()) {
        check_collision_preserves_state(&mut rng(seed)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn bloch_states_round_trip(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
        let r = (x * x + y * y + z * z).sqrt();
        let s = if r > 1.0 { 1.0 / r } else { 1.0 };
        let rho = colmem_core::qcore::DensityOperator::from_bloch(x * s, y * s, z * s).unwrap();
        let v = rho.bloch_vector().unwrap();
        prop_assert!((v[0] - x * s).abs() < 1e-12 && (v[1] - y * s).abs() < 1e-12 && (v[2] - z * s).abs() < 1e-12);
    }
}

#[test]
fn closed_form_examples() {
    for (name, ok) in qcore_examples() {
        assert!(ok, "{name}");
    }
}

#[test]
fn literal_sign_gives_conjugate_dynamics() {
    use colmem_core::qcore::{
        expm_hermitian, interaction_hamiltonian, DensityOperator, UnitaryOperator,
    };
    let mut r = rng(7);
    let j = colmem_core::random::coupling(-2.0, 2.0, &mut r);
    let tau = 0.8;
    let h = interaction_hamiltonian(&j);
    let ours = colmem_core::qcore::collision_unitary(&j, tau).unwrap();
    let literal = UnitaryOperator::new(expm_hermitian(&h, tau)).unwrap();
    let rho = colmem_core::random::density(4, &mut r);
    let a = ours.conjugate(&rho).unwrap();
    let conj = DensityOperator::new(rho.matrix().map(|z| z.conj())).unwrap();
    let b = literal.conjugate(&conj).unwrap();
    assert!(max_abs(&(a.matrix().map(|z| z.conj()) - b.matrix())) < 1e-12);
}

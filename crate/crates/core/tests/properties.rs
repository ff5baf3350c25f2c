//! Randomized invariants across modules.

use proptest::prelude::*;
use superfock_core::fock::{audit_relations, deformed_level, FockSpec};
use superfock_core::linalg::{eig_hermitian, group_degeneracies, kron, ComplexMatrix};
use superfock_core::mackey::{
    check_imprimitivity_all, commutant_dimension, induce, pauli_group, SubgroupRep,
};
use superfock_core::osp::{build_generators, closure_report};
use superfock_core::qubit::{pauli_mul, PauliWord};
use superfock_core::susy::{build_supercharge_1d, partner_identity_residual, ModelParams};

fn word(n: usize) -> impl Strategy<Value = PauliWord> {
    (
        0u8..4,
        prop::collection::vec(any::<bool>(), n),
        prop::collection::vec(any::<bool>(), n),
    )
        .prop_map(|(p, x, z)| PauliWord::new(p, x, z).unwrap())
}

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * n * n).prop_map(move |v| {
        ComplexMatrix::from_fn(n, n, |r, c| {
            let k = 2 * (r * n + c);
            num_complex::Complex64::new(v[k], v[k + 1])
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 24,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn deformed_relations_hold(cutoff in 4usize..48, nu in -0.95f64..3.0) {
        let audit = audit_relations(&FockSpec::new(cutoff, nu).unwrap());
        for (key, value) in &audit {
            prop_assert!(*value < 1e-11, "{key}: {value}");
        }
    }

    #[test]
    fn deformed_levels_reduce_to_integers_at_even_n(n in 0usize..200, nu in -0.95f64..3.0) {
        let level = deformed_level(n, nu);
        let expected = if n % 2 == 0 { n as f64 } else { n as f64 + nu };
        prop_assert_eq!(level, expected);
    }

    #[test]
    fn pauli_product_matches_matrices(a in word(3), b in word(3)) {
        let p = pauli_mul(&a, &b).unwrap();
        prop_assert!((p.matrix() - a.matrix() * b.matrix()).norm() < 1e-15);
        let comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
        prop_assert_eq!(a.commutes_with(&b), comm.norm() < 1e-12);
    }

    #[test]
    fn pauli_text_round_trips(a in word(4)) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<PauliWord>().unwrap(), a);
    }

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(3), c in matrix(2), d in matrix(3)) {
        let lhs = kron(&a, &b) * kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn eigendecomposition_reconstructs(m in matrix(6)) {
        let h = &m + m.adjoint();
        let eig = eig_hermitian(&h).unwrap();
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        let d = ComplexMatrix::from_diagonal(
            &eig.values.iter().map(|&v| num_complex::Complex64::new(v, 0.0)).collect::<Vec<_>>().into(),
        );
        let rebuilt = &eig.vectors * d * eig.vectors.adjoint();
        prop_assert!((rebuilt - &h).norm() < 1e-10 * h.norm().max(1.0));
        let groups = group_degeneracies(&eig.values, 1e-6);
        prop_assert_eq!(groups.iter().sum::<usize>(), eig.values.len());
    }

    #[test]
    fn osp_closes_for_any_deformation(nu in -0.9f64..2.0, plus in any::<bool>(), cutoff in 10usize..24) {
        let spec = FockSpec::new(cutoff, nu).unwrap();
        let gens = build_generators(&spec, if plus { 1 } else { -1 }).unwrap();
        let report = closure_report(&gens, 1e-10).unwrap();
        prop_assert!(report.pass, "max residual {}", report.max_residual);
    }

    #[test]
    fn partner_identity_for_any_coupling(g0 in 0.0f64..0.5, nu in -0.5f64..1.0) {
        let params = ModelParams::new(24, nu, g0).unwrap();
        let pair = build_supercharge_1d(&params).unwrap();
        prop_assert!(pair.nilpotency_residual() < 1e-12);
        prop_assert!(pair.decomposition_residual() < 1e-10);
        prop_assert!(partner_identity_residual(&pair) < 1e-9);
    }

    #[test]
    fn induced_reps_are_imprimitive(pick in prop::collection::vec(0usize..16, 2..4)) {
        let group = pauli_group(2).unwrap();
        let gens: Vec<_> = pick
            .iter()
            .map(|&k| (k * 4 % group.order(), superfock_core::linalg::identity(1)))
            .collect();
        let rep = SubgroupRep::from_generators(&group, &gens).unwrap();
        prop_assume!(rep.order() >= 8);
        let induced = induce(&group, &rep).unwrap();
        prop_assert_eq!(induced.dim(), group.order() / rep.order());
        prop_assert!(check_imprimitivity_all(&induced, &group) < 1e-12);
        // a permutation rep always commutes with the all-ones matrix and I
        let expected = if induced.dim() == 1 { 1 } else { 2 };
        prop_assert!(commutant_dimension(&induced.unitaries) >= expected);
    }
}

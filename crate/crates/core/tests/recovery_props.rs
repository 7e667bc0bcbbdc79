use convkit_core::graph::{Graph, GraphShiftSystem, ShiftKind};
use convkit_core::multi_shift::MultiShiftSystem;
use convkit_core::numeric::{eig_symmetric, CMatrix, RMatrix};
use convkit_core::recovery::{
    matched_distance, multiplicativity_defect, product_discrepancy, recover_kernel,
    verify_idempotents, SpectralOracle,
};
use proptest::prelude::*;

/// Eigenbasis of a random symmetric matrix, i.e. a random orthogonal matrix.
fn orthogonal() -> impl Strategy<Value = RMatrix> {
    (2usize..9).prop_flat_map(|n| {
        prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |v| {
            let s = RMatrix::from_fn(n, n, |i, j| v[i.min(j) * n + i.max(j)]);
            eig_symmetric(&s).unwrap().0
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recovers_orthogonal_kernels(u in orthogonal(), seed in any::<u64>()) {
        let oracle = SpectralOracle::new(u.to_complex()).unwrap();
        let k = recover_kernel(&oracle, seed).unwrap();
        prop_assert_eq!(k.n(), u.rows());
        prop_assert!(matched_distance(k.columns(), oracle.basis()) <= 1e-6);
        prop_assert!(verify_idempotents(&oracle, &k).passed);
        prop_assert!(multiplicativity_defect(&oracle, &k, 20, seed) <= 1e-6);
        prop_assert!(product_discrepancy(&oracle, &k, 20, seed ^ 1) <= 1e-8);
    }

    #[test]
    fn recovery_is_deterministic(u in orthogonal(), seed in any::<u64>()) {
        let oracle = SpectralOracle::new(u.to_complex()).unwrap();
        let a = recover_kernel(&oracle, seed).unwrap();
        let b = recover_kernel(&oracle, seed).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn multi_shift_kernel_is_block_structured() {
    let systems = vec![
        GraphShiftSystem::build(Graph::path(4), ShiftKind::Laplacian).unwrap(),
        GraphShiftSystem::build(Graph::cycle(4), ShiftKind::NormalizedLaplacianSelfLoop).unwrap(),
        GraphShiftSystem::build(Graph::path(4), ShiftKind::Adjacency).unwrap(),
    ];
    let ms = MultiShiftSystem::new(systems, vec![0.25, 0.25, 0.5]).unwrap();
    let k = recover_kernel(&ms, 11).unwrap();
    assert_eq!(k.n(), 12);
    assert!(matched_distance(k.columns(), &ms.block_kernel()) <= 1e-6);
    for i in 0..12 {
        let col = k.column(i);
        let blocks: Vec<f64> = (0..3)
            .map(|t| {
                col[t * 4..(t + 1) * 4]
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max)
            })
            .collect();
        assert_eq!(
            blocks.iter().filter(|&&b| b > 1e-8).count(),
            1,
            "column {i}: {blocks:?}"
        );
    }
    let _: &CMatrix = k.columns();
}

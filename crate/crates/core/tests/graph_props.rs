use convkit_core::graph::{Graph, GraphShiftSystem, ShiftKind};
use convkit_core::numeric::CMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn weighted_graph() -> impl Strategy<Value = Graph> {
    (2usize..10).prop_flat_map(|n| {
        prop::collection::vec(prop::option::weighted(0.5, 0.2f64..3.0), n * (n - 1) / 2).prop_map(
            move |w| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if let Some(weight) = w[k] {
                            edges.push((i, j, weight));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, false, edges).unwrap()
            },
        )
    })
}

fn system() -> impl Strategy<Value = GraphShiftSystem> {
    (
        weighted_graph(),
        prop_oneof![Just(ShiftKind::Adjacency), Just(ShiftKind::Laplacian)],
    )
        .prop_map(|(g, kind)| GraphShiftSystem::build(g, kind).unwrap())
}

fn vector(n: usize, seed: u64) -> Vec<Complex64> {
    (0..n)
        .map(|i| {
            let t = (seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add((i as u64).wrapping_mul(1442695040888963407))
                >> 33) as f64;
            Complex64::new(t / (1u64 << 31) as f64 - 0.5, 0.0)
        })
        .collect()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gft_round_trip(sys in system(), seed in any::<u64>()) {
        let x = vector(sys.n(), seed);
        let back = sys.igft(&sys.gft(&x).unwrap()).unwrap();
        prop_assert!(max_diff(&back, &x) <= 1e-10);
    }

    #[test]
    fn spectral_convolution_laws(sys in system(), seed in any::<u64>()) {
        let n = sys.n();
        let (x, y, z) = (vector(n, seed), vector(n, seed ^ 0xA5A5), vector(n, seed.rotate_left(17)));
        let xy = sys.spectral_convolve(&x, &y).unwrap();
        prop_assert!(max_diff(&xy, &sys.spectral_convolve(&y, &x).unwrap()) <= 1e-9);
        let left = sys.spectral_convolve(&xy, &z).unwrap();
        let right = sys.spectral_convolve(&x, &sys.spectral_convolve(&y, &z).unwrap()).unwrap();
        prop_assert!(max_diff(&left, &right) <= 1e-9);
        let sum: Vec<_> = y.iter().zip(&z).map(|(a, b)| a * 2.0 + b).collect();
        let lin: Vec<_> = xy.iter().zip(&sys.spectral_convolve(&x, &z).unwrap()).map(|(a, b)| a * 2.0 + b).collect();
        prop_assert!(max_diff(&sys.spectral_convolve(&x, &sum).unwrap(), &lin) <= 1e-9);
    }

    #[test]
    fn filter_matrix_commutes_with_shift(sys in system(), seed in any::<u64>()) {
        let h = sys.filter_matrix(&vector(sys.n(), seed)).unwrap();
        let r = sys.is_shift_invariant(&h, 1e-8).unwrap();
        prop_assert!(r.invariant, "commutator {}", r.commutator);
    }

    #[test]
    fn polynomial_fit_when_spectrum_is_simple(sys in system(), seed in any::<u64>()) {
        prop_assume!(sys.n() <= 6);
        let (gap, _) = sys.eigenvalue_gap();
        prop_assume!(gap > 0.05);
        let x = vector(sys.n(), seed);
        let p = sys.fit_polynomial(&x).unwrap();
        let target = sys.filter_matrix(&x).unwrap();
        prop_assert!(p.eval_matrix(sys.shift()).unwrap().max_abs_diff(&target) <= 1e-6);
    }

    #[test]
    fn random_matrix_usually_not_invariant(sys in system(), seed in any::<u64>()) {
        let n = sys.n();
        let v = vector(n * n, seed);
        let m = CMatrix::from_fn(n, n, |i, j| v[i * n + j]);
        let r = sys.is_shift_invariant(&m, 1e-9).unwrap();
        prop_assert_eq!(r.invariant, r.commutator <= 1e-9);
        prop_assert_eq!(r.certificate.is_some(), r.invariant && sys.has_distinct_eigenvalues());
    }
}

use convkit_core::numeric::{eig_circulant, eig_symmetric, solve, CMatrix, RMatrix};
use num_complex::Complex64;
use proptest::prelude::*;

fn symmetric(max_n: usize) -> impl Strategy<Value = RMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |v| {
            RMatrix::from_fn(n, n, |i, j| {
                let (a, b) = (i.min(j), i.max(j));
                v[a * n + b]
            })
        })
    })
}

fn well_conditioned(max_n: usize) -> impl Strategy<Value = (RMatrix, Vec<f64>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(-1.0f64..1.0, n * n),
            prop::collection::vec(-5.0f64..5.0, n),
        )
            .prop_map(move |(v, b)| {
                // diagonal dominance keeps the condition number modest
                let a = RMatrix::from_fn(n, n, |i, j| {
                    v[i * n + j] + if i == j { n as f64 + 1.0 } else { 0.0 }
                });
                (a, b)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_reconstructs(s in symmetric(32)) {
        let n = s.rows();
        let (u, l) = eig_symmetric(&s).unwrap();
        let scale = s.frobenius().max(1.0);
        let rebuilt = u.matmul(&RMatrix::from_diagonal(&l)).unwrap().matmul(&u.transpose()).unwrap();
        prop_assert!(rebuilt.max_abs_diff(&s) <= 1e-9 * scale);
        let gram = u.transpose().matmul(&u).unwrap();
        prop_assert!(gram.max_abs_diff(&RMatrix::identity(n)) <= 1e-10);
        prop_assert!(l.windows(2).all(|w| w[0] <= w[1]));
        let trace: f64 = s.diagonal().iter().sum();
        prop_assert!((l.iter().sum::<f64>() - trace).abs() <= 1e-9 * scale * n as f64);
    }

    #[test]
    fn jacobi_first_significant_entry_positive(s in symmetric(12)) {
        let (u, _) = eig_symmetric(&s).unwrap();
        for j in 0..u.cols() {
            let col = u.column(j);
            let first = col.iter().find(|x| x.abs() > 1e-12).copied().unwrap();
            prop_assert!(first > 0.0);
        }
    }

    #[test]
    fn lu_solve_residual((a, b) in well_conditioned(16)) {
        let x = solve(&a, &RMatrix::column_vector(&b)).unwrap();
        let ax = a.matmul(&x).unwrap();
        let norm_b = b.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
        prop_assert!(ax.max_abs_diff(&RMatrix::column_vector(&b)) <= 1e-10 * norm_b);
    }

    #[test]
    fn circulant_eigenpairs(row in prop::collection::vec(-3.0f64..3.0, 1..24)) {
        let n = row.len();
        let row: Vec<Complex64> = row.into_iter().map(|r| Complex64::new(r, 0.0)).collect();
        let c = CMatrix::from_fn(n, n, |j, l| row[(l + n - j) % n]);
        let (u, l) = eig_circulant(&row).unwrap();
        let cu = c.matmul(&u).unwrap();
        let ul = u.matmul(&CMatrix::from_diagonal(&l)).unwrap();
        prop_assert!(cu.max_abs_diff(&ul) <= 1e-10);
        let gram = u.adjoint().matmul(&u).unwrap();
        prop_assert!(gram.max_abs_diff(&CMatrix::identity(n)) <= 1e-12);
    }
}

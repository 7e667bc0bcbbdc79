//! Eigendecomposition of normal complex matrices through a real symmetric
//! embedding.
//!
//! For normal `M = H + iK` with `H`, `K` Hermitian and commuting, the matrix
//! `A = H + γK` shares the eigenvectors of `M`, and its real form
//! `[[Re A, −Im A], [Im A, Re A]]` is symmetric with every eigenvalue of `A`
//! doubled. Each doubled pair spans `{c·v}` for one eigenvector `v` of `A`.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{eig_symmetric, inner, norm2, normalize_phase, CMatrix, RMatrix};
use crate::{Error, Result};

/// Mixing weights tried in turn; a second try only matters when `H + γK`
/// happens to merge two eigenvalues of `M`.
const GAMMAS: [f64; 3] = [
    0.618_033_988_749_894_9,
    0.414_213_562_373_095_1,
    0.271_828_182_845_904_5,
];
const NORMALITY_TOL: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-8;

/// `‖M·M* − M*·M‖_max`.
pub fn normality_defect(m: &CMatrix) -> f64 {
    let adj = m.adjoint();
    match (m.matmul(&adj), adj.matmul(m)) {
        (Ok(a), Ok(b)) => a.max_abs_diff(&b),
        _ => f64::INFINITY,
    }
}

/// Unitary `U` and eigenvalues `μ` with `M·U = U·diag(μ)` for a normal `M`,
/// ordered by the eigenvalues of `Re μ + γ·Im μ`. Columns are unit norm with
/// the first significant entry positive real.
pub fn eig_normal(m: &CMatrix) -> Result<(CMatrix, Vec<Complex64>)> {
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            context: "eigendecomposition",
            expected: n,
            found: m.cols(),
        });
    }
    let scale = m.max_abs().max(1.0);
    if normality_defect(m) > NORMALITY_TOL * scale * scale {
        return Err(Error::UnsupportedShift);
    }
    let adj = m.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let h = m.add(&adj)?.scale(half);
    let k = m.sub(&adj)?.scale(Complex64::new(0.0, -0.5));

    let tolerance = RESIDUAL_TOL * scale;
    let mut best = f64::INFINITY;
    for gamma in GAMMAS {
        let a = h.add(&k.scale(Complex64::new(gamma, 0.0)))?;
        let embed = RMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let z = a[(i % n, j % n)];
            match (i < n, j < n) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        });
        let (w, _) = eig_symmetric(&embed)?;
        let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        for c in 0..2 * n {
            if columns.len() == n {
                break;
            }
            let mut v: Vec<Complex64> = (0..n)
                .map(|i| Complex64::new(w[(i, c)], w[(i + n, c)]))
                .collect();
            // the partner of an accepted vector is the same complex line and
            // projects to nothing
            for u in &columns {
                let p = inner(u, &v);
                v.iter_mut().zip(u).for_each(|(z, uz)| *z -= p * uz);
            }
            let len = norm2(&v);
            if len < 0.5 {
                continue;
            }
            v.iter_mut().for_each(|z| *z /= len);
            columns.push(v);
        }
        if columns.len() < n {
            continue;
        }
        let mut u = CMatrix::zeros(n, n);
        let mut values = Vec::with_capacity(n);
        for (j, mut v) in columns.into_iter().enumerate() {
            normalize_phase(&mut v);
            let mv = m.mul_vec(&v)?;
            values.push(inner(&v, &mv));
            u.set_column(j, &v);
        }
        let residual = m
            .matmul(&u)?
            .max_abs_diff(&u.matmul(&CMatrix::from_diagonal(&values))?);
        let unitarity = u.adjoint().matmul(&u)?.max_abs_diff(&CMatrix::identity(n));
        if residual <= tolerance && unitarity <= RESIDUAL_TOL {
            return Ok((u, values));
        }
        best = best.min(residual.max(unitarity));
    }
    Err(Error::DecompositionMismatch {
        residual: best,
        tolerance,
    })
}

use alloc::vec::Vec;
use core::f64::consts::TAU;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use super::{CMatrix, Scalar};
use crate::{Error, Result};

/// `e^{2πi k/n}` for `k = 0..n`.
pub(crate) fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64))
        .collect()
}

/// The circulant matrix `C[j][l] = first_row[(l - j) mod n]`.
pub fn circulant_from_first_row(first_row: &[Complex64]) -> CMatrix {
    let n = first_row.len();
    CMatrix::from_fn(n, n, |j, l| first_row[(l + n - j) % n])
}

/// Whether every row of `m` is the cyclic right shift of the row above, to `tol`.
pub fn is_circulant<T: Scalar>(m: &super::Matrix<T>, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    (1..n).all(|j| (0..n).all(|l| (m[(j, l)] - m[(0, (l + n - j) % n)]).modulus() <= tol))
}

/// Closed-form eigendecomposition of the circulant matrix with the given first row.
///
/// `U[j][k] = e^{2πi jk/n}/√n` and `λ_k = Σ_m c_m e^{2πi mk/n}`, kept in
/// frequency order `k = 0..n` so that `U` is the unitary DFT matrix.
pub fn eig_circulant(first_row: &[Complex64]) -> Result<(CMatrix, Vec<Complex64>)> {
    let n = first_row.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    if let Some(pos) = first_row.iter().position(|z| !Scalar::is_finite(*z)) {
        return Err(Error::NonFinite(pos));
    }
    let w = roots_of_unity(n);
    let scale = 1.0 / (n as f64).sqrt();
    let u = CMatrix::from_fn(n, n, |j, k| w[(j * k) % n] * scale);
    let values = (0..n)
        .map(|k| {
            first_row
                .iter()
                .enumerate()
                .map(|(m, &c)| c * w[(m * k) % n])
                .sum()
        })
        .collect();
    Ok((u, values))
}

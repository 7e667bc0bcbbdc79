//! Dense linear algebra over real, complex and integer scalars.
//!
//! Only what the signal-processing modules need: products, an LU solver, a
//! cyclic Jacobi eigensolver for real symmetric matrices, the closed-form
//! eigendecomposition of circulant matrices and a Jacobi-based route for
//! other normal matrices.

mod circulant;
mod jacobi;
mod lu;
mod matrix;
mod normal;
mod scalar;

pub use circulant::{circulant_from_first_row, eig_circulant, is_circulant};
pub use jacobi::{eig_symmetric, max_asymmetry, MAX_SWEEPS};
pub use lu::{solve, Lu};
pub use matrix::{CMatrix, IMatrix, Matrix, RMatrix};
pub use normal::{eig_normal, normality_defect};
pub use scalar::{FieldScalar, Scalar};

use num_complex::Complex64;

/// Tolerance for treating a matrix as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Relative pivot threshold below which a matrix counts as singular.
pub const PIVOT_TOL: f64 = 1e-12;

/// `⟨u, v⟩ = Σ conj(u_i)·v_i`.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm2(v: &[Complex64]) -> f64 {
    // unused once std is linked and the inherent methods take over
    #[allow(unused_imports)]
    use num_traits::Float;
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs_diff<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).modulus())
        .fold(0.0, f64::max)
}

pub(crate) fn to_complex(v: &[f64]) -> alloc::vec::Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

/// Rotates `v` by a unit scalar so its first significant entry is positive real.
pub(crate) fn normalize_phase(v: &mut [Complex64]) {
    let peak = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return;
    }
    if let Some(first) = v.iter().find(|z| z.norm() > 1e-8 * peak) {
        let phase = first.conj() / first.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// Eigendecomposition of a shift-like matrix: real symmetric (Jacobi,
/// ascending spectrum), circulant (closed form, frequency order) or otherwise
/// normal (unitary eigenbasis through a symmetric embedding).
pub fn eig_structured(s: &CMatrix) -> crate::Result<(CMatrix, alloc::vec::Vec<Complex64>)> {
    let scale = s.max_abs().max(1.0);
    if s.is_square() && s.max_imag() <= SYMMETRY_TOL * scale {
        let real = s.real_part();
        if max_asymmetry(&real) <= SYMMETRY_TOL * scale {
            let (u, values) = eig_symmetric(&real)?;
            return Ok((u.to_complex(), to_complex(&values)));
        }
    }
    if s.rows() > 0 && is_circulant(s, SYMMETRY_TOL * scale) {
        return eig_circulant(s.row(0));
    }
    eig_normal(s)
}

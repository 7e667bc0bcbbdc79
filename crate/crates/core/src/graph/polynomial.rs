use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::GraphShiftSystem;
use crate::numeric::{CMatrix, Lu};
use crate::{Error, Result};

/// Tolerance on `‖P(S) − filter_matrix(x)‖_max` accepted by a fit.
pub const FIT_TOL: f64 = 1e-6;

/// Polynomial `c₀ + c₁·t + … + c_d·t^d`, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialFilter {
    coeffs: Vec<Complex64>,
}

impl PolynomialFilter {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(crate::numeric::to_complex(coeffs))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Drops trailing coefficients below `rel_tol · max|c|`.
    pub fn trimmed(&self, rel_tol: f64) -> Self {
        let peak = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= rel_tol * peak) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    /// `P(S)·X` by Horner's rule, never forming `P(S)`.
    pub fn apply(&self, s: &CMatrix, x: &CMatrix) -> Result<CMatrix> {
        if s.cols() != x.rows() || !s.is_square() {
            return Err(Error::DimensionMismatch {
                context: "polynomial filter",
                expected: s.cols(),
                found: x.rows(),
            });
        }
        let mut acc = CMatrix::zeros(x.rows(), x.cols());
        for &c in self.coeffs.iter().rev() {
            acc = s.matmul(&acc)?.add(&x.scale(c))?;
        }
        Ok(acc)
    }

    /// `P(S)` as a dense matrix.
    pub fn eval_matrix(&self, s: &CMatrix) -> Result<CMatrix> {
        self.apply(s, &CMatrix::identity(s.rows()))
    }
}

/// Outcome of a shift-invariance test.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftInvariance {
    /// `‖M·S − S·M‖_max`.
    pub commutator: f64,
    pub invariant: bool,
    /// Polynomial `P` with `M = P(S)`, read off `diag(U⁻¹·M·U)`.
    /// Present only when invariant and the spectrum is simple.
    pub certificate: Option<PolynomialFilter>,
}

impl GraphShiftSystem {
    fn require_distinct(&self) -> Result<()> {
        if self.has_distinct_eigenvalues() {
            Ok(())
        } else {
            let (gap, threshold) = self.eigenvalue_gap();
            Err(Error::RepeatedEigenvalues {
                gap: if gap.is_finite() { gap } else { 0.0 },
                threshold,
            })
        }
    }

    /// The unique polynomial of degree `< n` whose value at `S` is the filter `x∗`.
    ///
    /// Solves the Vandermonde system `P(λᵢ) = (U⁻¹x)ᵢ` and checks the result
    /// against [`filter_matrix`](Self::filter_matrix).
    pub fn fit_polynomial(&self, x: &[Complex64]) -> Result<PolynomialFilter> {
        self.require_distinct()?;
        let response = self.gft(x)?;
        let poly = vandermonde_fit(&self.eigenvalues, &response)?;
        let target = self.filter_matrix(x)?;
        let residual = poly.eval_matrix(&self.shift)?.max_abs_diff(&target);
        if residual > FIT_TOL {
            return Err(Error::IllConditioned {
                residual,
                tolerance: FIT_TOL,
            });
        }
        Ok(poly)
    }

    pub fn is_shift_invariant(&self, m: &CMatrix, tol: f64) -> Result<ShiftInvariance> {
        let n = self.n();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                context: "shift-invariance test",
                expected: n,
                found: m.rows().max(m.cols()),
            });
        }
        let ms = m.matmul(&self.shift)?;
        let sm = self.shift.matmul(m)?;
        let commutator = ms.max_abs_diff(&sm);
        let invariant = commutator <= tol;
        let certificate = if invariant && self.has_distinct_eigenvalues() {
            let response = self.diagonal_response(m)?;
            Some(newton_fit(&self.eigenvalues, &response))
        } else {
            None
        };
        Ok(ShiftInvariance {
            commutator,
            invariant,
            certificate,
        })
    }
}

/// Monomial coefficients interpolating `(nodes[i], values[i])` via a
/// Vandermonde solve with two rounds of iterative refinement.
pub(crate) fn vandermonde_fit(
    nodes: &[Complex64],
    values: &[Complex64],
) -> Result<PolynomialFilter> {
    let n = nodes.len();
    let v = CMatrix::from_fn(n, n, |i, k| nodes[i].powu(k as u32));
    let lu = Lu::new(&v)?;
    let mut c = lu.solve_vec(values)?;
    for _ in 0..2 {
        let fitted = v.mul_vec(&c)?;
        let residual: Vec<_> = values.iter().zip(&fitted).map(|(a, b)| a - b).collect();
        let delta = lu.solve_vec(&residual)?;
        c.iter_mut().zip(&delta).for_each(|(ci, di)| *ci += di);
    }
    Ok(PolynomialFilter::new(c))
}

/// Monomial coefficients from Newton divided differences.
pub(crate) fn newton_fit(nodes: &[Complex64], values: &[Complex64]) -> PolynomialFilter {
    let n = nodes.len();
    let mut dd = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);
        }
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut poly = vec![dd.last().copied().unwrap_or(zero)];
    for k in (0..n.saturating_sub(1)).rev() {
        // poly ← poly·(t − nodes[k]) + dd[k]
        let mut next = vec![zero; poly.len() + 1];
        for (i, &p) in poly.iter().enumerate() {
            next[i + 1] += p;
            next[i] -= p * nodes[k];
        }
        next[0] += dd[k];
        poly = next;
    }
    PolynomialFilter::new(poly)
}

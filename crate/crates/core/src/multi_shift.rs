//! A finite family of graph shifts over one node set.
//!
//! Signals are `n×m` real matrices whose column `t` lives on system `t`, and
//! convolution acts column by column. The characters are
//! `ν_{t,j}(M) = ⟨U_{t,j}, M_t⟩` for the `j`-th eigenvector of system `t`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::graph::GraphShiftSystem;
use crate::numeric::{max_asymmetry, to_complex, CMatrix, RMatrix, SYMMETRY_TOL};
use crate::recovery::ConvolutionOracle;
use crate::{Error, Result};

/// Tolerance on `‖UᵀU − I‖_max` for each system.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;
/// Tolerance on `|Σ w_t − 1|`.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Gram deviation above which the composite transform is flagged.
pub const GRAM_FLAG_TOL: f64 = 1e-6;

/// Column `t` holds the signal seen by system `t`.
pub type MultiSignal = RMatrix;

#[derive(Debug, Clone)]
pub struct MultiShiftSystem {
    n: usize,
    systems: Vec<GraphShiftSystem>,
    bases: Vec<RMatrix>,
    weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositeTransform {
    pub coefficients: Vec<f64>,
    /// `‖ΦᵀΦ − I‖_max` for `Φ = Σ_t w_t·U_tᵀ`.
    pub gram_deviation: f64,
    /// Set when `Φ` is not an orthogonal change of basis.
    pub non_orthogonal: bool,
}

fn orthogonality_defect(u: &RMatrix) -> f64 {
    let g = u
        .transpose()
        .matmul(u)
        .unwrap_or_else(|_| RMatrix::zeros(0, 0));
    g.max_abs_diff(&RMatrix::identity(u.cols()))
}

impl MultiShiftSystem {
    pub fn new(systems: Vec<GraphShiftSystem>, weights: Vec<f64>) -> Result<Self> {
        let Some(first) = systems.first() else {
            return Err(Error::Empty);
        };
        let n = first.n();
        if weights.len() != systems.len() {
            return Err(Error::DimensionMismatch {
                context: "multi-shift weights",
                expected: systems.len(),
                found: weights.len(),
            });
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0)
            || (total - 1.0).abs() > WEIGHT_SUM_TOL
        {
            return Err(Error::InvalidWeights);
        }
        let mut bases = Vec::with_capacity(systems.len());
        for sys in &systems {
            if sys.n() != n {
                return Err(Error::DimensionMismatch {
                    context: "multi-shift node count",
                    expected: n,
                    found: sys.n(),
                });
            }
            let s = sys.shift();
            let scale = s.max_abs().max(1.0);
            if s.max_imag() > SYMMETRY_TOL * scale {
                return Err(Error::UnsupportedShift);
            }
            let asymmetry = max_asymmetry(&s.real_part());
            if asymmetry > SYMMETRY_TOL * scale {
                return Err(Error::NotSymmetric { asymmetry });
            }
            let u = sys.basis();
            if u.max_imag() > SYMMETRY_TOL {
                return Err(Error::NotOrthogonal {
                    deviation: u.max_imag(),
                });
            }
            let u = u.real_part();
            let deviation = orthogonality_defect(&u);
            if deviation > ORTHOGONALITY_TOL {
                return Err(Error::NotOrthogonal { deviation });
            }
            bases.push(u);
        }
        Ok(Self {
            n,
            systems,
            bases,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.systems.len()
    }

    pub fn systems(&self) -> &[GraphShiftSystem] {
        &self.systems
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Real orthogonal eigenbasis `U_t`.
    pub fn basis(&self, t: usize) -> &RMatrix {
        &self.bases[t]
    }

    fn check_signal(&self, m: &MultiSignal) -> Result<()> {
        if m.rows() != self.n || m.cols() != self.m() {
            return Err(Error::DimensionMismatch {
                context: "multi-signal shape",
                expected: self.n * self.m(),
                found: m.rows() * m.cols(),
            });
        }
        Ok(())
    }

    fn check_length(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "graph signal",
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `(M∗N)_t = U_t·(U_tᵀM_t ⊙ U_tᵀN_t)`.
    pub fn multi_convolve(&self, a: &MultiSignal, b: &MultiSignal) -> Result<MultiSignal> {
        self.check_signal(a)?;
        self.check_signal(b)?;
        let mut out = RMatrix::zeros(self.n, self.m());
        for (t, u) in self.bases.iter().enumerate() {
            let ut = u.transpose();
            let ah = ut.mul_vec(&a.column(t))?;
            let bh = ut.mul_vec(&b.column(t))?;
            let prod: Vec<f64> = ah.iter().zip(&bh).map(|(x, y)| x * y).collect();
            out.set_column(t, &u.mul_vec(&prod)?);
        }
        Ok(out)
    }

    /// `ν_{t,j}(M) = ⟨U_{t,j}, M_t⟩`.
    pub fn multi_character(&self, t: usize, j: usize, m: &MultiSignal) -> Result<f64> {
        self.check_signal(m)?;
        if t >= self.m() {
            return Err(Error::IndexOutOfRange {
                index: t,
                len: self.m(),
            });
        }
        if j >= self.n {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.n,
            });
        }
        let u = &self.bases[t];
        Ok((0..self.n).map(|i| u[(i, j)] * m[(i, t)]).sum())
    }

    /// All `n·m` character values, parameter-major.
    pub fn characters(&self, m: &MultiSignal) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.n * self.m());
        for t in 0..self.m() {
            for j in 0..self.n {
                out.push(self.multi_character(t, j, m)?);
            }
        }
        Ok(out)
    }

    /// Broadcasts `x` into every column.
    pub fn phi1(&self, x: &[f64]) -> Result<MultiSignal> {
        self.check_length(x)?;
        Ok(RMatrix::from_fn(self.n, self.m(), |i, _| x[i]))
    }

    /// Weighted average of the columns, computed as
    /// `M₀ + Σ_{t≥1} w_t·(M_t − M₀)` so equal columns come back unchanged.
    pub fn phi2(&self, m: &MultiSignal) -> Result<Vec<f64>> {
        self.check_signal(m)?;
        Ok((0..self.n)
            .map(|i| {
                let base = m[(i, 0)];
                let spread: f64 = self.weights[1..]
                    .iter()
                    .enumerate()
                    .map(|(k, w)| w * (m[(i, k + 1)] - base))
                    .sum();
                base + spread
            })
            .collect())
    }

    /// `φ₂` of the columnwise GFT of `φ₁(x)`, i.e. `Σ_t w_t·U_tᵀx`.
    pub fn composite_transform(&self, x: &[f64]) -> Result<CompositeTransform> {
        self.check_length(x)?;
        let mut spectra = RMatrix::zeros(self.n, self.m());
        for (t, u) in self.bases.iter().enumerate() {
            spectra.set_column(t, &u.transpose().mul_vec(x)?);
        }
        let coefficients = self.phi2(&spectra)?;

        let mut phi = RMatrix::zeros(self.n, self.n);
        for j in 0..self.n {
            let mut e = alloc::vec![0.0; self.n];
            e[j] = 1.0;
            let mut cols = RMatrix::zeros(self.n, self.m());
            for (t, u) in self.bases.iter().enumerate() {
                cols.set_column(t, &u.transpose().mul_vec(&e)?);
            }
            phi.set_column(j, &self.phi2(&cols)?);
        }
        let gram_deviation = orthogonality_defect(&phi);
        Ok(CompositeTransform {
            coefficients,
            gram_deviation,
            non_orthogonal: gram_deviation > GRAM_FLAG_TOL,
        })
    }

    /// Column-major flattening: block `t` holds column `t`.
    pub fn vectorize(&self, m: &MultiSignal) -> Result<Vec<f64>> {
        self.check_signal(m)?;
        Ok((0..self.m()).flat_map(|t| m.column(t)).collect())
    }

    pub fn unvectorize(&self, v: &[f64]) -> Result<MultiSignal> {
        if v.len() != self.n * self.m() {
            return Err(Error::DimensionMismatch {
                context: "vectorized multi-signal",
                expected: self.n * self.m(),
                found: v.len(),
            });
        }
        Ok(RMatrix::from_fn(self.n, self.m(), |i, t| v[t * self.n + i]))
    }

    /// The `nm×nm` kernel with `U_{t,j}` placed in block `t` of column `t·n + j`.
    pub fn block_kernel(&self) -> CMatrix {
        let (n, m) = (self.n, self.m());
        let mut k = RMatrix::zeros(n * m, n * m);
        for (t, u) in self.bases.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    k[(t * n + i, t * n + j)] = u[(i, j)];
                }
            }
        }
        k.to_complex()
    }
}

/// The vectorized product on `C^{nm}`, blocks of length `n` in parameter order.
impl ConvolutionOracle for MultiShiftSystem {
    fn dim(&self) -> usize {
        self.n * self.m()
    }

    fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        if x.len() != self.dim() || y.len() != self.dim() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(self.dim());
        for (t, u) in self.bases.iter().enumerate() {
            let u = u.to_complex();
            let ut = u.transpose();
            let block = t * n..(t + 1) * n;
            let (Ok(xh), Ok(yh)) = (ut.mul_vec(&x[block.clone()]), ut.mul_vec(&y[block])) else {
                return Vec::new();
            };
            let prod: Vec<_> = xh.iter().zip(&yh).map(|(a, b)| a * b).collect();
            match u.mul_vec(&prod) {
                Ok(z) => out.extend(z),
                Err(_) => return Vec::new(),
            }
        }
        out
    }
}

/// Complex copy of a real multi-signal, for use with the generic tools.
pub fn to_complex_columns(m: &MultiSignal) -> Vec<Vec<Complex64>> {
    (0..m.cols()).map(|t| to_complex(&m.column(t))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, ShiftKind};

    fn path_system(m: usize) -> MultiShiftSystem {
        let sys = GraphShiftSystem::build(Graph::path(4), ShiftKind::Laplacian).unwrap();
        MultiShiftSystem::new(alloc::vec![sys; m], alloc::vec![1.0 / m as f64; m]).unwrap()
    }

    fn two_systems() -> MultiShiftSystem {
        let a = GraphShiftSystem::build(Graph::path(4), ShiftKind::Laplacian).unwrap();
        let b = GraphShiftSystem::build(Graph::cycle(4), ShiftKind::NormalizedLaplacianSelfLoop)
            .unwrap();
        MultiShiftSystem::new(alloc::vec![a, b], alloc::vec![0.5, 0.5]).unwrap()
    }

    fn sample(n: usize, m: usize, seed: usize) -> MultiSignal {
        RMatrix::from_fn(n, m, |i, t| {
            ((i * 7 + t * 3 + seed * 5) % 11) as f64 / 4.0 - 1.2
        })
    }

    #[test]
    fn rejects_bad_weights_and_shapes() {
        let sys = GraphShiftSystem::build(Graph::path(4), ShiftKind::Laplacian).unwrap();
        let other = GraphShiftSystem::build(Graph::path(3), ShiftKind::Laplacian).unwrap();
        assert_eq!(
            MultiShiftSystem::new(alloc::vec![sys.clone(), sys.clone()], alloc::vec![0.6, 0.6])
                .unwrap_err(),
            Error::InvalidWeights
        );
        assert_eq!(
            MultiShiftSystem::new(
                alloc::vec![sys.clone(), sys.clone()],
                alloc::vec![1.5, -0.5]
            )
            .unwrap_err(),
            Error::InvalidWeights
        );
        assert!(MultiShiftSystem::new(alloc::vec![sys, other], alloc::vec![0.5, 0.5]).is_err());
        assert_eq!(
            MultiShiftSystem::new(Vec::new(), Vec::new()).unwrap_err(),
            Error::Empty
        );
    }

    #[test]
    fn rejects_directed_shift() {
        let sys = GraphShiftSystem::build(Graph::directed_cycle(4), ShiftKind::Adjacency).unwrap();
        assert!(MultiShiftSystem::new(alloc::vec![sys], alloc::vec![1.0]).is_err());
    }

    #[test]
    fn unit_spectrum_is_identity() {
        let ms = two_systems();
        let mut one = RMatrix::zeros(4, 2);
        for t in 0..2 {
            let u = ms.basis(t);
            let col: Vec<f64> = (0..4).map(|i| (0..4).map(|j| u[(i, j)]).sum()).collect();
            one.set_column(t, &col);
        }
        let m = sample(4, 2, 1);
        assert!(ms.multi_convolve(&m, &one).unwrap().max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn single_parameter_matches_graph_convolution() {
        let sys = GraphShiftSystem::build(Graph::path(4), ShiftKind::Laplacian).unwrap();
        let ms = MultiShiftSystem::new(alloc::vec![sys.clone()], alloc::vec![1.0]).unwrap();
        let (a, b) = (sample(4, 1, 2), sample(4, 1, 3));
        let got = ms.multi_convolve(&a, &b).unwrap().column(0);
        let want = sys
            .spectral_convolve(&to_complex(&a.column(0)), &to_complex(&b.column(0)))
            .unwrap();
        for (g, w) in got.iter().zip(&want) {
            assert!((Complex64::new(*g, 0.0) - w).norm() < 1e-12);
        }
    }

    #[test]
    fn columns_follow_their_own_system() {
        let ms = two_systems();
        let (a, b) = (sample(4, 2, 4), sample(4, 2, 5));
        let c = ms.multi_convolve(&a, &b).unwrap();
        for t in 0..2 {
            let want = ms.systems()[t]
                .spectral_convolve(&to_complex(&a.column(t)), &to_complex(&b.column(t)))
                .unwrap();
            for (g, w) in c.column(t).iter().zip(&want) {
                assert!((Complex64::new(*g, 0.0) - w).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn characters_examples() {
        let ms = two_systems();
        let mut m = RMatrix::zeros(4, 2);
        m.set_column(1, &ms.basis(1).column(2));
        assert!((ms.multi_character(1, 2, &m).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(ms.multi_character(0, 2, &m).unwrap(), 0.0);
        assert_eq!(
            ms.multi_character(1, 0, &RMatrix::zeros(4, 2)).unwrap(),
            0.0
        );
        assert!(ms.multi_character(2, 0, &m).is_err());
        assert!(ms.multi_character(0, 4, &m).is_err());

        let (a, b) = (sample(4, 2, 6), sample(4, 2, 7));
        let ab = ms.multi_convolve(&a, &b).unwrap();
        for t in 0..2 {
            for j in 0..4 {
                let lhs = ms.multi_character(t, j, &ab).unwrap();
                let rhs =
                    ms.multi_character(t, j, &a).unwrap() * ms.multi_character(t, j, &b).unwrap();
                assert!((lhs - rhs).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn phi_examples() {
        let sys = GraphShiftSystem::build(Graph::path(3), ShiftKind::Laplacian).unwrap();
        let ms =
            MultiShiftSystem::new(alloc::vec![sys.clone(), sys.clone()], alloc::vec![0.5, 0.5])
                .unwrap();
        let b = ms.phi1(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(b.column(0), [1.0, 2.0, 3.0]);
        assert_eq!(b.column(1), [1.0, 2.0, 3.0]);
        assert_eq!(ms.phi1(&[0.0; 3]).unwrap(), RMatrix::zeros(3, 2));
        assert!(ms.phi1(&[1.0]).is_err());

        let m = RMatrix::from_fn(3, 2, |_, t| if t == 0 { 1.0 } else { 3.0 });
        assert_eq!(ms.phi2(&m).unwrap(), [2.0, 2.0, 2.0]);
        let first =
            MultiShiftSystem::new(alloc::vec![sys.clone(), sys], alloc::vec![1.0, 0.0]).unwrap();
        assert_eq!(first.phi2(&m).unwrap(), [1.0, 1.0, 1.0]);

        let x = [0.1, -7.3, 1.0 / 3.0];
        let odd = MultiShiftSystem::new(
            alloc::vec![ms.systems()[0].clone(); 3],
            alloc::vec![0.2, 0.3, 0.5],
        )
        .unwrap();
        assert_eq!(odd.phi2(&odd.phi1(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn composite_transform_flags() {
        let same = path_system(3);
        let x = [1.0, -2.0, 0.5, 4.0];
        let r = same.composite_transform(&x).unwrap();
        let gft = same.basis(0).transpose().mul_vec(&x).unwrap();
        assert_eq!(r.coefficients, gft);
        assert!(!r.non_orthogonal);

        let r = two_systems().composite_transform(&x).unwrap();
        assert!(r.non_orthogonal, "{}", r.gram_deviation);
    }

    #[test]
    fn vectorization_round_trip() {
        let ms = two_systems();
        let m = sample(4, 2, 8);
        let v = ms.vectorize(&m).unwrap();
        assert_eq!(v[4], m[(0, 1)]);
        assert_eq!(ms.unvectorize(&v).unwrap(), m);
        let k = ms.block_kernel();
        assert_eq!(k[(5, 1)], Complex64::new(0.0, 0.0));
        assert_eq!(k[(5, 6)].re, ms.basis(1)[(1, 2)]);
    }
}

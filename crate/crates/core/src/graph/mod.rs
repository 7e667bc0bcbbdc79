//! Graph signal processing on a frozen shift system `S = U·Λ·U⁻¹`.
//!
//! Every transform and product here is defined relative to the eigenbasis `U`
//! fixed when the [`GraphShiftSystem`] is built: rescaling a column of `U`
//! changes the Hadamard product in the frequency domain.

mod gcn;
mod polynomial;

pub use gcn::{local_kernel_params, DofReport, GRID_STENCIL_DEGREE};
pub use polynomial::{PolynomialFilter, ShiftInvariance, FIT_TOL};

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::numeric::{eig_circulant, eig_structured, is_circulant, CMatrix, Lu, RMatrix};
use crate::{Error, Result};

/// Weighted edge `src → dst`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
}

impl Graph {
    /// Validates and stores an edge list. Undirected edges are stored once
    /// with `src ≤ dst`.
    pub fn new(
        n: usize,
        directed: bool,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (src, dst, weight) in edges {
            if src >= n || dst >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({src}, {dst}) out of range for {n} nodes"
                )));
            }
            if !weight.is_finite() {
                return Err(Error::InvalidGraph(format!(
                    "edge ({src}, {dst}) has non-finite weight"
                )));
            }
            let (src, dst) = if directed {
                (src, dst)
            } else {
                (src.min(dst), src.max(dst))
            };
            if !seen.insert((src, dst)) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({src}, {dst})"
                )));
            }
            out.push(Edge { src, dst, weight });
        }
        Ok(Self {
            n,
            directed,
            edges: out,
        })
    }

    pub fn edgeless(n: usize) -> Self {
        Self {
            n,
            directed: false,
            edges: Vec::new(),
        }
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, false, (1..n).map(|i| (i - 1, i, 1.0))).expect("valid path")
    }

    /// Undirected cycle (a single edge for `n = 2`, a self-loop for `n = 1`).
    pub fn cycle(n: usize) -> Self {
        let edges: BTreeSet<(usize, usize)> = (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                (i.min(j), i.max(j))
            })
            .collect();
        Self::new(n, false, edges.into_iter().map(|(a, b)| (a, b, 1.0))).expect("valid cycle")
    }

    /// Directed cycle `i → i+1 mod n`, the Cayley graph of `Z/n`.
    pub fn directed_cycle(n: usize) -> Self {
        let edges: BTreeSet<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, true, edges.into_iter().map(|(a, b)| (a, b, 1.0))).expect("valid cycle")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `A[src][dst] = weight`, mirrored for undirected graphs.
    pub fn adjacency(&self) -> RMatrix {
        let mut a = RMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            a[(e.src, e.dst)] += e.weight;
            if !self.directed && e.src != e.dst {
                a[(e.dst, e.src)] += e.weight;
            }
        }
        a
    }

    /// Number of distinct neighbours, ignoring direction and self-loops.
    pub fn node_degree(&self, v: usize) -> usize {
        let nbrs: BTreeSet<usize> = self
            .edges
            .iter()
            .filter(|e| e.src != e.dst)
            .filter_map(|e| {
                if e.src == v {
                    Some(e.dst)
                } else if e.dst == v {
                    Some(e.src)
                } else {
                    None
                }
            })
            .collect();
        nbrs.len()
    }

    pub fn laplacian(&self) -> Result<RMatrix> {
        if self.directed {
            return Err(Error::DirectedLaplacian);
        }
        let a = self.adjacency();
        let n = self.n;
        Ok(RMatrix::from_fn(n, n, |i, j| {
            let d = if i == j { a.row(i).iter().sum() } else { 0.0 };
            d - a[(i, j)]
        }))
    }

    /// `I − D̃^{-1/2}·(A + I)·D̃^{-1/2}` with `D̃` the degrees of `A + I`.
    pub fn normalized_laplacian_selfloop(&self) -> Result<RMatrix> {
        if self.directed {
            return Err(Error::DirectedLaplacian);
        }
        let n = self.n;
        let a = self.adjacency().add(&RMatrix::identity(n))?;
        let mut inv_sqrt = Vec::with_capacity(n);
        for i in 0..n {
            let d: f64 = a.row(i).iter().sum();
            if d <= 0.0 {
                return Err(Error::InvalidGraph(format!(
                    "node {i} has non-positive self-looped degree {d}"
                )));
            }
            inv_sqrt.push(1.0 / d.sqrt());
        }
        Ok(RMatrix::from_fn(n, n, |i, j| {
            let id = if i == j { 1.0 } else { 0.0 };
            id - inv_sqrt[i] * a[(i, j)] * inv_sqrt[j]
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftKind {
    Adjacency,
    Laplacian,
    NormalizedLaplacianSelfLoop,
    Custom,
}

impl ShiftKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ShiftKind::Adjacency => "adjacency",
            ShiftKind::Laplacian => "laplacian",
            ShiftKind::NormalizedLaplacianSelfLoop => "normalized_laplacian_selfloop",
            ShiftKind::Custom => "custom",
        }
    }
}

impl core::str::FromStr for ShiftKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacency" => Ok(ShiftKind::Adjacency),
            "laplacian" => Ok(ShiftKind::Laplacian),
            "normalized_laplacian_selfloop" => Ok(ShiftKind::NormalizedLaplacianSelfLoop),
            "custom" => Ok(ShiftKind::Custom),
            other => Err(Error::InvalidInput(format!("unknown shift kind {other:?}"))),
        }
    }
}

/// A user-supplied eigendecomposition `S·U = U·diag(eigenvalues)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub basis: CMatrix,
    pub eigenvalues: Vec<Complex64>,
}

/// Relative reconstruction tolerance for `‖S·U − U·Λ‖_max`.
pub const RECONSTRUCTION_TOL: f64 = 1e-8;
/// Relative gap below which two eigenvalues count as repeated.
pub const DISTINCT_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct GraphShiftSystem {
    graph: Graph,
    kind: ShiftKind,
    shift: CMatrix,
    basis: CMatrix,
    eigenvalues: Vec<Complex64>,
    lu: Lu<Complex64>,
}

impl GraphShiftSystem {
    /// Assembles the shift of the given kind and decomposes it.
    ///
    /// `Custom` is not accepted here; use [`GraphShiftSystem::custom`].
    pub fn build(graph: Graph, kind: ShiftKind) -> Result<Self> {
        let s = match kind {
            ShiftKind::Adjacency => graph.adjacency(),
            ShiftKind::Laplacian => graph.laplacian()?,
            ShiftKind::NormalizedLaplacianSelfLoop => graph.normalized_laplacian_selfloop()?,
            ShiftKind::Custom => {
                return Err(Error::InvalidInput(
                    "custom shift needs an explicit matrix".into(),
                ))
            }
        };
        Self::assemble(graph, kind, s.to_complex(), None)
    }

    /// Uses `shift` as the operator. Without a decomposition it must be real
    /// symmetric or circulant; a supplied decomposition is validated.
    pub fn custom(
        graph: Graph,
        shift: CMatrix,
        decomposition: Option<Decomposition>,
    ) -> Result<Self> {
        Self::assemble(graph, ShiftKind::Custom, shift, decomposition)
    }

    fn assemble(
        graph: Graph,
        kind: ShiftKind,
        shift: CMatrix,
        decomposition: Option<Decomposition>,
    ) -> Result<Self> {
        let n = graph.n();
        if shift.rows() != n || shift.cols() != n {
            return Err(Error::DimensionMismatch {
                context: "shift operator",
                expected: n,
                found: shift.rows().max(shift.cols()),
            });
        }
        let (basis, eigenvalues) = match decomposition {
            Some(d) => (d.basis, d.eigenvalues),
            // a directed circulant keeps its DFT basis even when it happens
            // to be symmetric, as the directed 2-cycle is
            None if graph.is_directed()
                && n > 0
                && is_circulant(&shift, 1e-12 * (1.0 + shift.max_abs())) =>
            {
                eig_circulant(shift.row(0))?
            }
            None => eig_structured(&shift)?,
        };
        if basis.rows() != n || basis.cols() != n || eigenvalues.len() != n {
            return Err(Error::DimensionMismatch {
                context: "decomposition",
                expected: n,
                found: eigenvalues.len(),
            });
        }
        let residual = reconstruction_residual(&shift, &basis, &eigenvalues)?;
        let tolerance = RECONSTRUCTION_TOL * (1.0 + shift.max_abs());
        if residual > tolerance {
            return Err(Error::DecompositionMismatch {
                residual,
                tolerance,
            });
        }
        let lu = Lu::new(&basis)?;
        Ok(Self {
            graph,
            kind,
            shift,
            basis,
            eigenvalues,
            lu,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn kind(&self) -> ShiftKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn shift(&self) -> &CMatrix {
        &self.shift
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Smallest pairwise eigenvalue distance and the threshold it must exceed.
    pub fn eigenvalue_gap(&self) -> (f64, f64) {
        let ev = &self.eigenvalues;
        let mut gap = f64::INFINITY;
        let mut spread: f64 = 0.0;
        for i in 0..ev.len() {
            for j in i + 1..ev.len() {
                let d = (ev[i] - ev[j]).norm();
                gap = gap.min(d);
                spread = spread.max(d);
            }
        }
        (gap, DISTINCT_TOL * spread)
    }

    pub fn has_distinct_eigenvalues(&self) -> bool {
        let (gap, threshold) = self.eigenvalue_gap();
        self.eigenvalues.len() <= 1 || gap > threshold
    }

    fn check_len(&self, x: &[Complex64]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                context: "graph signal",
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `x̂ = U⁻¹·x`, solved against the stored factorization.
    pub fn gft(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(x)?;
        self.lu.solve_vec(x)
    }

    /// `x = U·x̂`.
    pub fn igft(&self, xh: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(xh)?;
        self.basis.mul_vec(xh)
    }

    /// `z = U·(U⁻¹x ⊙ U⁻¹y)`.
    pub fn spectral_convolve(&self, x: &[Complex64], y: &[Complex64]) -> Result<Vec<Complex64>> {
        let xh = self.gft(x)?;
        let yh = self.gft(y)?;
        let zh: Vec<_> = xh.iter().zip(&yh).map(|(a, b)| a * b).collect();
        self.igft(&zh)
    }

    /// Matrix of `y ↦ x∗y`, namely `U·diag(U⁻¹x)·U⁻¹`.
    pub fn filter_matrix(&self, x: &[Complex64]) -> Result<CMatrix> {
        let response = self.gft(x)?;
        self.from_response(&response)
    }

    /// `U·diag(response)·U⁻¹`.
    pub fn from_response(&self, response: &[Complex64]) -> Result<CMatrix> {
        self.check_len(response)?;
        let ud = self.basis.matmul(&CMatrix::from_diagonal(response))?;
        // (U D) U⁻¹ = ((U⁻¹)ᵀ (U D)ᵀ)ᵀ, i.e. solve Uᵀ Zᵀ = (U D)ᵀ
        let ut = Lu::new(&self.basis.transpose())?;
        Ok(ut.solve(&ud.transpose())?.transpose())
    }

    /// Eigen-response `diag(U⁻¹·M·U)` of a matrix.
    pub fn diagonal_response(&self, m: &CMatrix) -> Result<Vec<Complex64>> {
        let mu = m.matmul(&self.basis)?;
        Ok(self.lu.solve(&mu)?.diagonal())
    }
}

fn reconstruction_residual(s: &CMatrix, u: &CMatrix, values: &[Complex64]) -> Result<f64> {
    let su = s.matmul(u)?;
    let ul = u.matmul(&CMatrix::from_diagonal(values))?;
    Ok(su.max_abs_diff(&ul))
}

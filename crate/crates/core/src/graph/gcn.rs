use super::{GraphShiftSystem, PolynomialFilter};
use crate::numeric::CMatrix;
use crate::{Error, Result};

/// Neighbours of an interior node of `Z ⊕ Z` under a 3×3 stencil.
pub const GRID_STENCIL_DEGREE: usize = 8;

/// A free kernel on a node with `degree` neighbours weighs each neighbour and
/// the node itself independently.
pub fn local_kernel_params(degree: usize) -> usize {
    degree + 1
}

/// Parameter counts of a polynomial graph filter versus a free local kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DofReport {
    pub degree: usize,
    /// `degree + 1` coefficients, shared by every node.
    pub polynomial_params: usize,
    /// Free 3×3 stencil on the 2D grid.
    pub stencil3x3_params: usize,
    /// Free local kernel at the highest-degree node of the graph, if any.
    pub max_local_kernel_params: Option<usize>,
}

impl DofReport {
    pub fn new(degree: usize) -> Self {
        Self {
            degree,
            polynomial_params: degree + 1,
            stencil3x3_params: local_kernel_params(GRID_STENCIL_DEGREE),
            max_local_kernel_params: None,
        }
    }
}

impl GraphShiftSystem {
    /// One graph convolution layer `θ(X) = P(S)·X·W`.
    pub fn gcn_layer(&self, x: &CMatrix, p: &PolynomialFilter, w: &CMatrix) -> Result<CMatrix> {
        if x.rows() != self.n() {
            return Err(Error::DimensionMismatch {
                context: "GCN features",
                expected: self.n(),
                found: x.rows(),
            });
        }
        if w.rows() != x.cols() {
            return Err(Error::DimensionMismatch {
                context: "GCN weights",
                expected: x.cols(),
                found: w.rows(),
            });
        }
        p.apply(&self.shift, x)?.matmul(w)
    }

    pub fn dof_report(&self, degree: usize) -> DofReport {
        let n = self.n();
        let max_degree = (0..n).map(|v| self.graph.node_degree(v)).max();
        DofReport {
            max_local_kernel_params: max_degree.map(local_kernel_params),
            ..DofReport::new(degree)
        }
    }
}

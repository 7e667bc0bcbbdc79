use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("non-finite value at position {0}")]
    NonFinite(usize),
    #[error("empty input")]
    Empty,
    #[error("matrix is singular to tolerance (pivot {pivot:e} below {threshold:e})")]
    Singular { pivot: f64, threshold: f64 },
    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("Jacobi iteration did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("group orders must be positive, found 0 at factor {0}")]
    ZeroOrder(usize),
    #[error("element has {found} coordinates, group has {expected} factors")]
    ArityMismatch { expected: usize, found: usize },
    #[error("coordinate {coord} at factor {factor} is out of range for order {order}")]
    CoordinateOutOfRange {
        factor: usize,
        coord: usize,
        order: usize,
    },
    #[error("signals live on different groups")]
    GroupMismatch,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("Laplacian shift requires an undirected graph")]
    DirectedLaplacian,
    #[error("shift operator is not normal; supply a decomposition")]
    UnsupportedShift,
    #[error("supplied decomposition fails reconstruction (residual {residual:e} > {tolerance:e})")]
    DecompositionMismatch { residual: f64, tolerance: f64 },
    #[error("shift operator has repeated eigenvalues (min gap {gap:e} <= {threshold:e})")]
    RepeatedEigenvalues { gap: f64, threshold: f64 },
    #[error("polynomial fit is ill-conditioned (residual {residual:e} > {tolerance:e})")]
    IllConditioned { residual: f64, tolerance: f64 },

    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("relation is not reflexive at element {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("elements {0} and {1} have no greatest lower bound")]
    NoMeet(usize, usize),

    #[error("oracle failed the {check} spot check (deviation {deviation:e})")]
    OracleInconsistent { check: &'static str, deviation: f64 },
    #[error("multiplication operator is not normal, so the kernel is not unitary")]
    UnsupportedOracle,
    #[error("probe spectrum stayed degenerate after {attempts} draws")]
    DegenerateProbe { attempts: usize },

    #[error("weights must be nonnegative and sum to 1")]
    InvalidWeights,
    #[error("eigenbasis is not real orthogonal (deviation {deviation:e})")]
    NotOrthogonal { deviation: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

//! Recovering the Fourier kernel of a convolution algebra from its product.
//!
//! For a product of the form `x∗y = U·(U⁻¹x ⊙ U⁻¹y)` the multiplication
//! operator `M_r: y ↦ r∗y` equals `U·diag(U⁻¹r)·U⁻¹`, so for a generic probe `r`
//! its eigenvectors are exactly the columns of `U`. Each column `uᵢ` carries a
//! character `νᵢ(x) = cᵢ·⟨uᵢ, x⟩` of the algebra, where the scale `cᵢ = ⟨uᵢ, uᵢ∗uᵢ⟩`
//! makes `uᵢ/cᵢ` idempotent.
//!
//! Only normal multiplication operators, i.e. unitary kernels, are supported.
//! Real symmetric operators (orthogonal kernels) go through Jacobi, circulant
//! ones (`Z/n`) through the closed-form DFT, and the rest, such as the group
//! algebra of `Z/2 ⊕ Z/3`, through a symmetric embedding.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{self, FiniteAbelianGroup, GroupSignal};
use crate::numeric::{eig_structured, inner, norm2, normalize_phase, CMatrix, Lu};
use crate::{Error, Result};

/// Redraws allowed after the first probe when its spectrum is degenerate.
pub const MAX_REDRAWS: usize = 16;
/// Relative tolerance of the bilinearity and commutativity spot checks.
pub const SPOT_CHECK_TOL: f64 = 1e-8;
/// Minimum relative eigenvalue gap for a probe to count as simple.
pub const PROBE_GAP_TOL: f64 = 1e-6;
/// Default acceptance for idempotent and multiplicativity defects.
pub const IDEMPOTENT_TOL: f64 = 1e-6;

/// A bilinear, commutative, associative product on `Cⁿ`.
pub trait ConvolutionOracle {
    fn dim(&self) -> usize;
    fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64>;
}

impl<T: ConvolutionOracle + ?Sized> ConvolutionOracle for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        (**self).product(x, y)
    }
}

/// Componentwise product, the algebra whose kernel is the standard basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HadamardOracle {
    pub n: usize,
}

impl ConvolutionOracle for HadamardOracle {
    fn dim(&self) -> usize {
        self.n
    }
    fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        x.iter().zip(y).map(|(a, b)| a * b).collect()
    }
}

/// `x∗y = U·(U⁻¹x ⊙ U⁻¹y)` for an invertible `U`.
#[derive(Debug, Clone)]
pub struct SpectralOracle {
    basis: CMatrix,
    lu: Lu<Complex64>,
}

impl SpectralOracle {
    pub fn new(basis: CMatrix) -> Result<Self> {
        let lu = Lu::new(&basis)?;
        Ok(Self { basis, lu })
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }
}

impl ConvolutionOracle for SpectralOracle {
    fn dim(&self) -> usize {
        self.basis.rows()
    }
    fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let (Ok(xh), Ok(yh)) = (self.lu.solve_vec(x), self.lu.solve_vec(y)) else {
            return Vec::new();
        };
        let zh: Vec<_> = xh.iter().zip(&yh).map(|(a, b)| a * b).collect();
        self.basis.mul_vec(&zh).unwrap_or_default()
    }
}

impl ConvolutionOracle for crate::graph::GraphShiftSystem {
    fn dim(&self) -> usize {
        self.n()
    }
    fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        self.spectral_convolve(x, y).unwrap_or_default()
    }
}

/// Group convolution on a finite abelian group.
impl ConvolutionOracle for FiniteAbelianGroup {
    fn dim(&self) -> usize {
        self.size()
    }
    fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let (Ok(f), Ok(h)) = (
            GroupSignal::new(self.clone(), x.to_vec()),
            GroupSignal::new(self.clone(), y.to_vec()),
        ) else {
            return Vec::new();
        };
        group::convolve(&f, &h)
            .map(|z| z.values().to_vec())
            .unwrap_or_default()
    }
}

/// Adds `eps·(x ⊙ y)` to another product. Still bilinear and commutative,
/// but no longer associative unless the inner product is componentwise.
#[derive(Debug, Clone)]
pub struct PerturbedOracle<O> {
    pub inner: O,
    pub eps: f64,
}

impl<O: ConvolutionOracle> ConvolutionOracle for PerturbedOracle<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let mut z = self.inner.product(x, y);
        for ((zi, a), b) in z.iter_mut().zip(x).zip(y) {
            *zi += a * b * self.eps;
        }
        z
    }
}

/// Product given by a closure.
pub struct FnOracle<F> {
    n: usize,
    f: F,
}

impl<F> FnOracle<F>
where
    F: Fn(&[Complex64], &[Complex64]) -> Vec<Complex64>,
{
    pub fn new(n: usize, f: F) -> Self {
        Self { n, f }
    }
}

impl<F> core::fmt::Debug for FnOracle<F> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FnOracle")
            .field("n", &self.n)
            .finish_non_exhaustive()
    }
}

impl<F> ConvolutionOracle for FnOracle<F>
where
    F: Fn(&[Complex64], &[Complex64]) -> Vec<Complex64>,
{
    fn dim(&self) -> usize {
        self.n
    }
    fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        (self.f)(x, y)
    }
}

fn basis_vector(n: usize, j: usize) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    e[j] = Complex64::new(1.0, 0.0);
    e
}

fn checked_product<O: ConvolutionOracle + ?Sized>(
    oracle: &O,
    x: &[Complex64],
    y: &[Complex64],
) -> Result<Vec<Complex64>> {
    let z = oracle.product(x, y);
    if z.len() != oracle.dim() {
        return Err(Error::DimensionMismatch {
            context: "oracle output",
            expected: oracle.dim(),
            found: z.len(),
        });
    }
    Ok(z)
}

/// Matrix of `y ↦ r∗y`; column `j` is `r∗eⱼ`.
pub fn multiplication_operator<O: ConvolutionOracle + ?Sized>(
    oracle: &O,
    r: &[Complex64],
) -> Result<CMatrix> {
    let n = oracle.dim();
    if r.len() != n {
        return Err(Error::DimensionMismatch {
            context: "probe",
            expected: n,
            found: r.len(),
        });
    }
    let mut m = CMatrix::zeros(n, n);
    for j in 0..n {
        let col = checked_product(oracle, r, &basis_vector(n, j))?;
        m.set_column(j, &col);
    }
    Ok(m)
}

fn random_signal(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), 0.0))
        .collect()
}

fn combine(a: f64, x: &[Complex64], b: f64, y: &[Complex64]) -> Vec<Complex64> {
    x.iter().zip(y).map(|(p, q)| p * a + q * b).collect()
}

fn relative_gap(lhs: &[Complex64], rhs: &[Complex64]) -> f64 {
    let scale = norm2(lhs).max(norm2(rhs)).max(1.0);
    let diff: Vec<_> = lhs.iter().zip(rhs).map(|(a, b)| a - b).collect();
    norm2(&diff) / scale
}

/// Bilinearity (both slots) and commutativity on a few random triples.
pub fn spot_check<O: ConvolutionOracle + ?Sized>(
    oracle: &O,
    seed: u64,
    trials: usize,
) -> Result<()> {
    let n = oracle.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED_C0DE);
    for _ in 0..trials {
        let (x, y, z) = (
            random_signal(&mut rng, n),
            random_signal(&mut rng, n),
            random_signal(&mut rng, n),
        );
        let (a, b) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let mix = combine(a, &x, b, &y);
        let xz = checked_product(oracle, &x, &z)?;
        let yz = checked_product(oracle, &y, &z)?;
        let expected = combine(a, &xz, b, &yz);

        let left = relative_gap(&checked_product(oracle, &mix, &z)?, &expected);
        if left > SPOT_CHECK_TOL {
            return Err(Error::OracleInconsistent {
                check: "left linearity",
                deviation: left,
            });
        }
        let zx = checked_product(oracle, &z, &x)?;
        let zy = checked_product(oracle, &z, &y)?;
        let right = relative_gap(
            &checked_product(oracle, &z, &mix)?,
            &combine(a, &zx, b, &zy),
        );
        if right > SPOT_CHECK_TOL {
            return Err(Error::OracleInconsistent {
                check: "right linearity",
                deviation: right,
            });
        }
        let comm = relative_gap(&xz, &zx);
        if comm > SPOT_CHECK_TOL {
            return Err(Error::OracleInconsistent {
                check: "commutativity",
                deviation: comm,
            });
        }
    }
    Ok(())
}

/// Unit-norm kernel columns together with their character scales.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredKernel {
    columns: CMatrix,
    scales: Vec<Complex64>,
    draws: usize,
}

impl RecoveredKernel {
    pub fn n(&self) -> usize {
        self.columns.cols()
    }

    /// Columns `uᵢ` as a matrix.
    pub fn columns(&self) -> &CMatrix {
        &self.columns
    }

    pub fn column(&self, i: usize) -> Vec<Complex64> {
        self.columns.column(i)
    }

    /// `cᵢ = νᵢ(uᵢ)`.
    pub fn scales(&self) -> &[Complex64] {
        &self.scales
    }

    /// Number of probes drawn before one had a simple spectrum.
    pub fn draws(&self) -> usize {
        self.draws
    }

    /// `νᵢ(x) = cᵢ·⟨uᵢ, x⟩`.
    pub fn character(&self, i: usize, x: &[Complex64]) -> Complex64 {
        self.scales[i] * inner(&self.column(i), x)
    }

    /// `uᵢ / νᵢ(uᵢ)`.
    pub fn idempotent(&self, i: usize) -> Vec<Complex64> {
        let s = self.scales[i];
        self.column(i).into_iter().map(|z| z / s).collect()
    }
}

/// Rebuilds the product `Σᵢ νᵢ(x)·νᵢ(y)·uᵢ/cᵢ` from the recovered kernel.
impl ConvolutionOracle for RecoveredKernel {
    fn dim(&self) -> usize {
        self.columns.rows()
    }
    fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..self.n() {
            let u = self.column(i);
            let w = self.scales[i] * inner(&u, x) * inner(&u, y);
            for (zk, uk) in z.iter_mut().zip(&u) {
                *zk += w * uk;
            }
        }
        z
    }
}

/// Recovers the Fourier kernel of `oracle` from the eigenvectors of a random
/// multiplication operator.
pub fn recover_kernel<O: ConvolutionOracle + ?Sized>(
    oracle: &O,
    seed: u64,
) -> Result<RecoveredKernel> {
    let n = oracle.dim();
    if n == 0 {
        return Err(Error::Empty);
    }
    spot_check(oracle, seed, 3)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for draw in 1..=MAX_REDRAWS + 1 {
        let r = random_signal(&mut rng, n);
        let m = multiplication_operator(oracle, &r)?;
        let (basis, values) = eig_structured(&m).map_err(|e| match e {
            Error::UnsupportedShift => Error::UnsupportedOracle,
            other => other,
        })?;
        if !is_simple(&values) {
            continue;
        }
        let mut columns = basis;
        let mut scales = Vec::with_capacity(n);
        for i in 0..n {
            let mut u = columns.column(i);
            let norm = norm2(&u);
            u.iter_mut().for_each(|z| *z /= norm);
            normalize_phase(&mut u);
            let uu = checked_product(oracle, &u, &u)?;
            let scale = inner(&u, &uu);
            if scale.norm() <= SPOT_CHECK_TOL {
                return Err(Error::OracleInconsistent {
                    check: "idempotent scale",
                    deviation: scale.norm(),
                });
            }
            columns.set_column(i, &u);
            scales.push(scale);
        }
        return Ok(RecoveredKernel {
            columns,
            scales,
            draws: draw,
        });
    }
    Err(Error::DegenerateProbe {
        attempts: MAX_REDRAWS + 1,
    })
}

fn is_simple(values: &[Complex64]) -> bool {
    let mut gap = f64::INFINITY;
    let mut spread: f64 = 0.0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let d = (values[i] - values[j]).norm();
            gap = gap.min(d);
            spread = spread.max(d);
        }
    }
    values.len() <= 1 || gap > PROBE_GAP_TOL * spread
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdempotentReport {
    /// `max_{i,j} ‖eᵢ∗eⱼ − [i=j]·eᵢ‖` with `eᵢ = uᵢ/νᵢ(uᵢ)`.
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Checks that the rescaled kernel columns are orthogonal idempotents of `oracle`.
pub fn verify_idempotents<O: ConvolutionOracle + ?Sized>(
    oracle: &O,
    kernel: &RecoveredKernel,
) -> IdempotentReport {
    let n = kernel.n();
    let idem: Vec<_> = (0..n).map(|i| kernel.idempotent(i)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let prod = oracle.product(&idem[i], &idem[j]);
            if prod.len() != idem[i].len() {
                worst = f64::INFINITY;
                continue;
            }
            let dev: f64 = if i == j {
                let d: Vec<_> = prod.iter().zip(&idem[i]).map(|(a, b)| a - b).collect();
                norm2(&d)
            } else {
                norm2(&prod)
            };
            worst = worst.max(dev);
        }
    }
    IdempotentReport {
        max_deviation: worst,
        tolerance: IDEMPOTENT_TOL,
        passed: worst <= IDEMPOTENT_TOL,
    }
}

/// `max |νᵢ(x∗y) − νᵢ(x)·νᵢ(y)|` over all characters and `pairs` random pairs.
pub fn multiplicativity_defect<O: ConvolutionOracle + ?Sized>(
    oracle: &O,
    kernel: &RecoveredKernel,
    pairs: usize,
    seed: u64,
) -> f64 {
    let n = oracle.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let x = random_signal(&mut rng, n);
        let y = random_signal(&mut rng, n);
        let xy = oracle.product(&x, &y);
        for i in 0..kernel.n() {
            let lhs = kernel.character(i, &xy);
            let rhs = kernel.character(i, &x) * kernel.character(i, &y);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

/// Largest entry difference between two products over `pairs` random pairs.
pub fn product_discrepancy<A, B>(a: &A, b: &B, pairs: usize, seed: u64) -> f64
where
    A: ConvolutionOracle + ?Sized,
    B: ConvolutionOracle + ?Sized,
{
    let n = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let x = random_signal(&mut rng, n);
        let y = random_signal(&mut rng, n);
        let (p, q) = (a.product(&x, &y), b.product(&x, &y));
        if p.len() != q.len() {
            return f64::INFINITY;
        }
        worst = worst.max(crate::numeric::max_abs_diff(&p, &q));
    }
    worst
}

/// Distance between two kernels modulo column order and unit scalars.
///
/// Every reference column is normalized, paired with the recovered column of
/// largest overlap, phase-aligned, and compared in 2-norm. Returns the
/// largest such distance, or `√2` when the pairing is not a bijection.
pub fn matched_distance(recovered: &CMatrix, reference: &CMatrix) -> f64 {
    let n = reference.cols();
    if recovered.cols() != n || recovered.rows() != reference.rows() {
        return f64::INFINITY;
    }
    let mut used = vec![false; n];
    let mut worst: f64 = 0.0;
    for j in 0..n {
        let mut g = reference.column(j);
        let gn = norm2(&g);
        g.iter_mut().for_each(|z| *z /= gn);
        let (best, overlap) = (0..n).map(|i| (i, inner(&recovered.column(i), &g))).fold(
            (0, Complex64::new(0.0, 0.0)),
            |acc, cur| {
                if cur.1.norm() > acc.1.norm() {
                    cur
                } else {
                    acc
                }
            },
        );
        if used[best] || overlap.norm() == 0.0 {
            return core::f64::consts::SQRT_2;
        }
        used[best] = true;
        let phase = overlap / overlap.norm();
        let u = recovered.column(best);
        let diff: Vec<_> = u.iter().zip(&g).map(|(a, b)| a * phase - b).collect();
        worst = worst.max(norm2(&diff));
    }
    worst
}

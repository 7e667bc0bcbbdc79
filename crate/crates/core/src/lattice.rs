//! Signal processing on finite meet-semilattices.
//!
//! The shift `T_a` moves the value at `b` to `b∧a`: `(T_a s)_b = s_{b∧a}`. All
//! shifts commute (`T_a·T_{a'} = T_{a∧a'}`) and are diagonalized at once by the
//! zeta matrix `Z[b][c] = [c ≤ b]`:
//!
//! ```text
//! Z⁻¹·T_a·Z = diag([c ≤ a])_c
//! ```
//!
//! Everything here is exact integer arithmetic. The forward lattice Fourier
//! transform is taken to be `ŝ = Z⁻¹·s` (Möbius inversion); the opposite
//! convention is equally valid.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::numeric::IMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetSemilattice {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    extension: Vec<usize>,
}

impl MeetSemilattice {
    /// Validates a complete order relation, `leq[a][b]` meaning `a ≤ b`.
    pub fn from_relation(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in leq {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "order relation",
                    expected: n,
                    found: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, flat)
    }

    /// Builds the order generated by `pairs` (each `(i, j)` meaning `i ≤ j`)
    /// by reflexive-transitive closure, then validates it.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for &(i, j) in pairs {
            for idx in [i, j] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, len: n });
                }
            }
            leq[i * n + j] = true;
        }
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_flat(n, leq)
    }

    fn from_flat(n: usize, leq: Vec<bool>) -> Result<Self> {
        let le = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(Error::NotReflexive(a));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if le(a, b) && le(b, a) {
                    return Err(Error::NotAntisymmetric(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !le(a, b) {
                    continue;
                }
                for c in 0..n {
                    if le(b, c) && !le(a, c) {
                        return Err(Error::NotTransitive(a, b, c));
                    }
                }
            }
        }

        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                let greatest = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&c| le(c, g)))
                    .ok_or(Error::NoMeet(a, b))?;
                meet[a * n + b] = greatest;
                meet[b * n + a] = greatest;
            }
        }

        // linear extension: repeatedly take the lowest-index minimal element
        let mut placed = vec![false; n];
        let mut extension = Vec::with_capacity(n);
        while extension.len() < n {
            let next = (0..n)
                .find(|&c| !placed[c] && (0..n).all(|d| d == c || placed[d] || !le(d, c)))
                .expect("finite partial orders always have a minimal element");
            placed[next] = true;
            extension.push(next);
        }

        Ok(Self {
            n,
            leq,
            meet,
            extension,
        })
    }

    /// Chain `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(n, &pairs).expect("chains are lattices")
    }

    /// Subsets of a `k`-set encoded as bitmasks, ordered by inclusion.
    pub fn subsets(k: u32) -> Self {
        let n = 1usize << k;
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|a| (0..n).map(|b| a & b == a).collect())
            .collect();
        Self::from_relation(&leq).expect("boolean lattices are lattices")
    }

    /// Divisors of `m` in increasing order, ordered by divisibility.
    pub fn divisors(m: u64) -> (Self, Vec<u64>) {
        let divs: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
        let leq: Vec<Vec<bool>> = divs
            .iter()
            .map(|&a| divs.iter().map(|&b| b % a == 0).collect())
            .collect();
        (
            Self::from_relation(&leq).expect("divisor lattices are lattices"),
            divs,
        )
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    /// A linear extension of the order (topological order of the elements).
    pub fn linear_extension(&self) -> &[usize] {
        &self.extension
    }

    /// The least element, when there is one (always, for nonempty lattices).
    pub fn bottom(&self) -> Option<usize> {
        (0..self.n).find(|&b| (0..self.n).all(|c| self.leq(b, c)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.n).find(|&t| (0..self.n).all(|c| self.leq(c, t)))
    }

    fn check_index(&self, a: usize) -> Result<()> {
        if a >= self.n {
            return Err(Error::IndexOutOfRange {
                index: a,
                len: self.n,
            });
        }
        Ok(())
    }

    /// 0/1 matrix of `T_a`: row `b` has its single 1 in column `b∧a`.
    pub fn shift_operator(&self, a: usize) -> Result<IMatrix> {
        self.check_index(a)?;
        Ok(IMatrix::from_fn(self.n, self.n, |b, c| {
            i64::from(self.meet(b, a) == c)
        }))
    }

    /// Checks `T_a·T_{a'} = T_{a∧a'}` for every ordered pair.
    pub fn check_commutation(&self) -> CommutationReport {
        let shifts: Vec<IMatrix> = (0..self.n)
            .map(|a| self.shift_operator(a).expect("index in range"))
            .collect();
        let mut violations = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let prod = shifts[a].matmul(&shifts[b]).expect("square");
                if prod != shifts[self.meet(a, b)] {
                    violations.push((a, b));
                }
            }
        }
        CommutationReport {
            pairs_checked: self.n * self.n,
            violations,
        }
    }

    /// `d_a[c] = [c ≤ a]`, the eigenvalues of `T_a` in the zeta basis.
    pub fn response(&self, a: usize) -> Result<Vec<i64>> {
        self.check_index(a)?;
        Ok((0..self.n).map(|c| i64::from(self.leq(c, a))).collect())
    }

    /// `Z[b][c] = [c ≤ b]`.
    pub fn zeta(&self) -> IMatrix {
        IMatrix::from_fn(self.n, self.n, |b, c| i64::from(self.leq(c, b)))
    }

    /// `Z⁻¹`, by substitution along the linear extension (Z is unitriangular there).
    pub fn moebius(&self) -> IMatrix {
        let n = self.n;
        let mut mu = IMatrix::zeros(n, n);
        // μ(c, c) = 1, μ(b, c) = −Σ_{c ≤ d < b} μ(d, c) for c < b; mu[b][c] = μ(c, b)
        for (pos, &c) in self.extension.iter().enumerate() {
            mu[(c, c)] = 1;
            for &b in &self.extension[pos + 1..] {
                if !self.leq(c, b) {
                    continue;
                }
                let mut acc = 0;
                for &d in &self.extension[pos..] {
                    if d == b {
                        break;
                    }
                    if self.leq(c, d) && self.leq(d, b) {
                        acc += mu[(d, c)];
                    }
                }
                mu[(b, c)] = -acc;
            }
        }
        mu
    }

    /// Zeta/Möbius pair and the response of every shift.
    pub fn diagonalize_shifts(&self) -> Diagonalization {
        Diagonalization {
            zeta: self.zeta(),
            moebius: self.moebius(),
            responses: (0..self.n)
                .map(|a| self.response(a).expect("index in range"))
                .collect(),
        }
    }

    /// `(Σ_a h_a·T_a)·s`, i.e. `out_b = Σ_a h_a·s_{b∧a}`.
    pub fn convolve(&self, h: &[f64], s: &[f64]) -> Result<Vec<f64>> {
        for v in [h, s] {
            if v.len() != self.n {
                return Err(Error::DimensionMismatch {
                    context: "lattice signal",
                    expected: self.n,
                    found: v.len(),
                });
            }
        }
        Ok((0..self.n)
            .map(|b| {
                h.iter()
                    .enumerate()
                    .map(|(a, &ha)| ha * s[self.meet(b, a)])
                    .sum()
            })
            .collect())
    }

    /// Algebra element `Σ_a h_a·T_a` as an integer matrix.
    pub fn convolution_operator(&self, h: &[i64]) -> Result<IMatrix> {
        if h.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "lattice filter",
                expected: self.n,
                found: h.len(),
            });
        }
        let mut m = IMatrix::zeros(self.n, self.n);
        for b in 0..self.n {
            for (a, &ha) in h.iter().enumerate() {
                m[(b, self.meet(b, a))] += ha;
            }
        }
        Ok(m)
    }

    /// `ŝ = Z⁻¹·s`.
    pub fn fourier(&self, s: &[f64]) -> Result<Vec<f64>> {
        self.apply_int(&self.moebius(), s)
    }

    /// `s = Z·ŝ`.
    pub fn inverse_fourier(&self, sh: &[f64]) -> Result<Vec<f64>> {
        self.apply_int(&self.zeta(), sh)
    }

    /// Frequency response of `Σ_a h_a·T_a`: slot `c` gets `Σ_{a ≥ c} h_a`.
    pub fn frequency_response(&self, h: &[f64]) -> Result<Vec<f64>> {
        if h.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "lattice filter",
                expected: self.n,
                found: h.len(),
            });
        }
        Ok((0..self.n)
            .map(|c| (0..self.n).filter(|&a| self.leq(c, a)).map(|a| h[a]).sum())
            .collect())
    }

    fn apply_int(&self, m: &IMatrix, s: &[f64]) -> Result<Vec<f64>> {
        if s.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "lattice signal",
                expected: self.n,
                found: s.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| m.row(i).iter().zip(s).map(|(&a, &x)| a as f64 * x).sum())
            .collect())
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> BTreeSet<usize> {
        let Some(bot) = self.bottom() else {
            return BTreeSet::new();
        };
        (0..self.n)
            .filter(|&a| a != bot && (0..self.n).all(|c| c == a || c == bot || !self.leq(c, a)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationReport {
    pub pairs_checked: usize,
    /// Pairs `(a, a')` with `T_a·T_{a'} ≠ T_{a∧a'}`.
    pub violations: Vec<(usize, usize)>,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagonalization {
    pub zeta: IMatrix,
    pub moebius: IMatrix,
    pub responses: Vec<Vec<i64>>,
}

impl Diagonalization {
    /// For each `a`, whether `moebius·T_a·zeta = diag(d_a)` holds exactly.
    pub fn conjugation_identities(&self, lat: &MeetSemilattice) -> Vec<bool> {
        (0..lat.len())
            .map(|a| {
                let t = lat.shift_operator(a).expect("index in range");
                let conj = self
                    .moebius
                    .matmul(&t)
                    .and_then(|m| m.matmul(&self.zeta))
                    .expect("square");
                conj == IMatrix::from_diagonal(&self.responses[a])
            })
            .collect()
    }

    /// Whether `zeta·moebius = I` exactly.
    pub fn is_inverse_pair(&self) -> bool {
        self.zeta
            .matmul(&self.moebius)
            .is_ok_and(|p| p == IMatrix::identity(self.zeta.rows()))
    }
}

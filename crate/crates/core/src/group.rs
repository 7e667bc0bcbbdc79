//! Fourier analysis on finite abelian groups `Z/n₁ ⊕ … ⊕ Z/n_k`.
//!
//! The Haar measure on the group is the counting measure and the dual measure
//! is `1/|A|` times counting measure, so
//!
//! ```text
//! f̂(χ) = Σ_a f(a)·conj(χ(a))        f(a) = (1/|A|)·Σ_χ f̂(χ)·χ(a)
//! ```
//!
//! and Plancherel reads `Σ|f|² = (1/|A|)·Σ|f̂|²`. Elements and signals are laid
//! out in lexicographic coordinate order, last factor fastest.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<usize>,
}

/// Element of a [`FiniteAbelianGroup`], coordinates reduced modulo each order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<usize>,
}

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }
}

/// The character `a ↦ exp(2πi Σ_j a_j·freq_j/n_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    orders: Vec<usize>,
    freq: GroupElement,
}

impl Character {
    pub fn freq(&self) -> &GroupElement {
        &self.freq
    }

    pub fn eval(&self, a: &GroupElement) -> Complex64 {
        debug_assert_eq!(a.coords.len(), self.orders.len());
        Complex64::from_polar(1.0, TAU * phase(&self.orders, &self.freq.coords, &a.coords))
    }
}

/// Fractional part of `Σ_j a_j·f_j/n_j`, reduced factor by factor.
fn phase(orders: &[usize], freq: &[usize], a: &[usize]) -> f64 {
    let mut t: f64 = orders
        .iter()
        .zip(freq)
        .zip(a)
        .map(|((&n, &f), &x)| ((f * x) % n) as f64 / n as f64)
        .sum();
    while t >= 1.0 {
        t -= 1.0;
    }
    t
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if let Some(pos) = orders.iter().position(|&n| n == 0) {
            return Err(Error::ZeroOrder(pos));
        }
        Ok(Self { orders })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.orders.len()],
        }
    }

    pub fn element(&self, coords: &[usize]) -> Result<GroupElement> {
        self.check(coords)?;
        Ok(GroupElement {
            coords: coords.to_vec(),
        })
    }

    fn check(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.orders.len() {
            return Err(Error::ArityMismatch {
                expected: self.orders.len(),
                found: coords.len(),
            });
        }
        for (factor, (&coord, &order)) in coords.iter().zip(&self.orders).enumerate() {
            if coord >= order {
                return Err(Error::CoordinateOutOfRange {
                    factor,
                    coord,
                    order,
                });
            }
        }
        Ok(())
    }

    /// Position of `a` in lexicographic order.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        self.orders
            .iter()
            .zip(&a.coords)
            .fold(0, |acc, (&n, &c)| acc * n + c)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0; self.orders.len()];
        for (c, &n) in coords.iter_mut().zip(&self.orders).rev() {
            *c = index % n;
            index /= n;
        }
        GroupElement { coords }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(|i| self.element_at(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(&a.coords)?;
        self.check(&b.coords)?;
        Ok(self.add_unchecked(a, b))
    }

    fn add_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: self
                .orders
                .iter()
                .zip(a.coords.iter().zip(&b.coords))
                .map(|(&n, (&x, &y))| (x + y) % n)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: self
                .orders
                .iter()
                .zip(&a.coords)
                .map(|(&n, &x)| (n - x) % n)
                .collect(),
        }
    }

    /// All `|A|` characters, lexicographic in frequency.
    pub fn characters(&self) -> Vec<Character> {
        self.elements()
            .map(|freq| Character {
                orders: self.orders.clone(),
                freq,
            })
            .collect()
    }

    /// `index_of(a - b)` for every pair, as a flat `|A|×|A|` table.
    fn difference_table(&self) -> Vec<usize> {
        let size = self.size();
        let elems: Vec<_> = self.elements().collect();
        let mut table = Vec::with_capacity(size * size);
        for a in &elems {
            for b in &elems {
                table.push(self.index_of(&self.add_unchecked(a, &self.neg(b))));
            }
        }
        table
    }

    /// `χ_k(a)` for every frequency `k` (rows) and element `a` (columns).
    fn character_table(&self) -> Vec<Complex64> {
        let elems: Vec<_> = self.elements().collect();
        let mut table = Vec::with_capacity(elems.len() * elems.len());
        for k in &elems {
            for a in &elems {
                table.push(Complex64::from_polar(
                    1.0,
                    TAU * phase(&self.orders, &k.coords, &a.coords),
                ));
            }
        }
        table
    }
}

/// Complex signal on a finite abelian group, one value per element.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSignal {
    group: FiniteAbelianGroup,
    values: Vec<Complex64>,
}

impl GroupSignal {
    pub fn new(group: FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.size() {
            return Err(Error::DimensionMismatch {
                context: "group signal",
                expected: group.size(),
                found: values.len(),
            });
        }
        if let Some(pos) = values
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self { group, values })
    }

    pub fn from_real(group: FiniteAbelianGroup, values: &[f64]) -> Result<Self> {
        Self::new(group, crate::numeric::to_complex(values))
    }

    /// Indicator of the identity element.
    pub fn delta(group: FiniteAbelianGroup) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); group.size()];
        values[0] = Complex64::new(1.0, 0.0);
        Self { group, values }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value_at(&self, a: &GroupElement) -> Complex64 {
        self.values[self.group.index_of(a)]
    }
}

/// `f̂(χ) = Σ_a f(a)·conj(χ(a))`, indexed by the frequency of `χ`.
pub fn fourier(f: &GroupSignal) -> GroupSignal {
    let table = f.group.character_table();
    let n = f.values.len();
    let values = (0..n)
        .map(|k| {
            table[k * n..(k + 1) * n]
                .iter()
                .zip(&f.values)
                .map(|(chi, v)| v * chi.conj())
                .sum()
        })
        .collect();
    GroupSignal {
        group: f.group.clone(),
        values,
    }
}

/// `f(a) = (1/|A|)·Σ_χ f̂(χ)·χ(a)`.
pub fn inverse_fourier(fh: &GroupSignal) -> GroupSignal {
    let table = fh.group.character_table();
    let n = fh.values.len();
    let scale = 1.0 / n as f64;
    let values = (0..n)
        .map(|a| {
            (0..n)
                .map(|k| fh.values[k] * table[k * n + a])
                .sum::<Complex64>()
                * scale
        })
        .collect();
    GroupSignal {
        group: fh.group.clone(),
        values,
    }
}

/// `(f∗h)(a) = Σ_b h(a−b)·f(b)`.
pub fn convolve(f: &GroupSignal, h: &GroupSignal) -> Result<GroupSignal> {
    if f.group != h.group {
        return Err(Error::GroupMismatch);
    }
    let n = f.values.len();
    let diff = f.group.difference_table();
    let values = (0..n)
        .map(|a| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (b, fb) in f.values.iter().enumerate() {
                acc += h.values[diff[a * n + b]] * fb;
            }
            acc
        })
        .collect();
    Ok(GroupSignal {
        group: f.group.clone(),
        values,
    })
}

pub fn l1_norm(f: &GroupSignal) -> f64 {
    f.values.iter().map(|z| z.norm()).sum()
}

/// `Σ_a |f(a)|²`.
pub fn energy(f: &GroupSignal) -> f64 {
    f.values.iter().map(|z| z.norm_sqr()).sum()
}

/// Both sides of Plancherel and their relative gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plancherel {
    pub signal_energy: f64,
    pub spectral_energy: f64,
    pub relative_gap: f64,
}

pub fn plancherel(f: &GroupSignal) -> Plancherel {
    let signal_energy = energy(f);
    let spectral_energy = energy(&fourier(f)) / f.group.size() as f64;
    let denom = signal_energy.max(spectral_energy);
    let relative_gap = if denom == 0.0 {
        0.0
    } else {
        (signal_energy - spectral_energy).abs() / denom
    };
    Plancherel {
        signal_energy,
        spectral_energy,
        relative_gap,
    }
}

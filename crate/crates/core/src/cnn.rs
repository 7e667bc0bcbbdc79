//! Images as finitely supported functions on `Z ⊕ Z`.
//!
//! A `w×h` image sits at `offset` with `f(x, y)` read from row `y − y₀`,
//! column `x − x₀` of a row-major buffer, and is zero everywhere else.
//! Convolution is the group convolution `(f∗g)(a) = Σ_b g(a−b)·f(b)`, so a
//! stride-1 CNN layer corresponds to correlation with the *flipped* kernel.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeFunction {
    offset: (i64, i64),
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl LatticeFunction {
    pub fn new(offset: (i64, i64), width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != width * height {
            return Err(Error::DimensionMismatch {
                context: "lattice function",
                expected: width * height,
                found: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self {
            offset,
            width,
            height,
            values,
        })
    }

    /// The function that is zero everywhere.
    pub fn zero() -> Self {
        Self {
            offset: (0, 0),
            width: 0,
            height: 0,
            values: Vec::new(),
        }
    }

    pub fn delta(at: (i64, i64)) -> Self {
        Self {
            offset: at,
            width: 1,
            height: 1,
            values: vec![1.0],
        }
    }

    pub fn offset(&self) -> (i64, i64) {
        self.offset
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0 || self.height == 0
    }

    /// Value at a lattice point; zero outside the box.
    pub fn get(&self, x: i64, y: i64) -> f64 {
        let (dx, dy) = (x - self.offset.0, y - self.offset.1);
        if dx < 0 || dy < 0 || dx >= self.width as i64 || dy >= self.height as i64 {
            return 0.0;
        }
        self.values[dy as usize * self.width + dx as usize]
    }

    /// `f(· − t)`.
    pub fn translate(&self, t: (i64, i64)) -> Self {
        Self {
            offset: (self.offset.0 + t.0, self.offset.1 + t.1),
            ..self.clone()
        }
    }

    /// Lattice points with nonzero value.
    pub fn support(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for j in 0..self.height {
            for i in 0..self.width {
                if self.values[j * self.width + i] != 0.0 {
                    out.push((self.offset.0 + i as i64, self.offset.1 + j as i64));
                }
            }
        }
        out
    }

    /// Same function stored on the bounding box of its support.
    pub fn trimmed(&self) -> Self {
        let support = self.support();
        let Some(&(x, y)) = support.first() else {
            return Self::zero();
        };
        let (mut x0, mut y0, mut x1, mut y1) = (x, y, x, y);
        for &(x, y) in &support {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let width = (x1 - x0 + 1) as usize;
        let height = (y1 - y0 + 1) as usize;
        let mut values = Vec::with_capacity(width * height);
        for y in y0..=y1 {
            for x in x0..=x1 {
                values.push(self.get(x, y));
            }
        }
        Self {
            offset: (x0, y0),
            width,
            height,
            values,
        }
    }

    /// Largest absolute difference over the union of both boxes.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for f in [self, other] {
            for j in 0..f.height as i64 {
                for i in 0..f.width as i64 {
                    let (x, y) = (f.offset.0 + i, f.offset.1 + j);
                    worst = worst.max((self.get(x, y) - other.get(x, y)).abs());
                }
            }
        }
        worst
    }
}

/// Kernel on `{−1,0,1}²`, row-major with `y` outer and `x` inner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel3x3 {
    pub values: [f64; 9],
}

impl Kernel3x3 {
    pub fn new(values: [f64; 9]) -> Result<Self> {
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self { values })
    }

    pub fn identity() -> Self {
        let mut values = [0.0; 9];
        values[4] = 1.0;
        Self { values }
    }

    /// `k(dx, dy)` for `dx, dy ∈ {−1, 0, 1}`.
    pub fn at(&self, dx: i64, dy: i64) -> f64 {
        self.values[((dy + 1) * 3 + dx + 1) as usize]
    }

    /// `k(−d)`.
    pub fn flipped(&self) -> Self {
        let mut values = self.values;
        values.reverse();
        Self { values }
    }

    pub fn to_lattice_function(&self) -> LatticeFunction {
        LatticeFunction {
            offset: (-1, -1),
            width: 3,
            height: 3,
            values: self.values.to_vec(),
        }
    }
}

/// `(f∗g)(a) = Σ_b g(a−b)·f(b)` on the Minkowski sum of the two boxes.
pub fn group_convolve_2d(f: &LatticeFunction, g: &LatticeFunction) -> LatticeFunction {
    if f.is_empty() || g.is_empty() {
        return LatticeFunction::zero();
    }
    let width = f.width + g.width - 1;
    let height = f.height + g.height - 1;
    let mut values = vec![0.0; width * height];
    for fj in 0..f.height {
        for fi in 0..f.width {
            let fv = f.values[fj * f.width + fi];
            if fv == 0.0 {
                continue;
            }
            for gj in 0..g.height {
                for gi in 0..g.width {
                    values[(fj + gj) * width + fi + gi] += fv * g.values[gj * g.width + gi];
                }
            }
        }
    }
    LatticeFunction {
        offset: (f.offset.0 + g.offset.0, f.offset.1 + g.offset.1),
        width,
        height,
        values,
    }
}

/// Conventional stride-1 sliding-window correlation of an image at the origin
/// with zero padding `padding`.
///
/// Output position `(i, j)` has the window centred on image pixel
/// `(i + 1 − padding, j + 1 − padding)`, and the result is returned at that
/// lattice position.
pub fn sliding_window_correlate(
    image: &LatticeFunction,
    kernel: &Kernel3x3,
    padding: usize,
) -> LatticeFunction {
    let p = padding as i64;
    let out_w = (image.width as i64 + 2 * p - 2).max(0) as usize;
    let out_h = (image.height as i64 + 2 * p - 2).max(0) as usize;
    let mut values = vec![0.0; out_w * out_h];
    for j in 0..out_h {
        for i in 0..out_w {
            let (cx, cy) = (i as i64 + 1 - p, j as i64 + 1 - p);
            let mut acc = 0.0;
            for dy in -1..=1 {
                for dx in -1..=1 {
                    acc += kernel.at(dx, dy)
                        * image.get(image.offset.0 + cx + dx, image.offset.1 + cy + dy);
                }
            }
            values[j * out_w + i] = acc;
        }
    }
    LatticeFunction {
        offset: (image.offset.0 + 1 - p, image.offset.1 + 1 - p),
        width: out_w,
        height: out_h,
        values,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub group: LatticeFunction,
    pub sliding: LatticeFunction,
    /// Max absolute difference over the full support.
    pub discrepancy: f64,
}

/// Compares group convolution with `k` against sliding-window correlation with
/// the flipped kernel, padded so both cover the whole Minkowski-sum box.
pub fn cnn_equivalence_check(image: &LatticeFunction, k: &Kernel3x3) -> Result<EquivalenceReport> {
    if image.offset != (0, 0) {
        return Err(Error::InvalidInput(alloc::format!(
            "image must sit at the origin, found offset {:?}",
            image.offset
        )));
    }
    let group = group_convolve_2d(image, &k.to_lattice_function());
    let sliding = sliding_window_correlate(image, &k.flipped(), 2);
    let discrepancy = group.max_abs_diff(&sliding);
    Ok(EquivalenceReport {
        group,
        sliding,
        discrepancy,
    })
}

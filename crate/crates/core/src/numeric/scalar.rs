use core::fmt::Debug;
use core::ops::{AddAssign, Neg};

use num_complex::Complex64;
use num_traits::{Float, Num};

/// Entry type of a [`Matrix`](super::Matrix).
pub trait Scalar:
    Copy + Debug + PartialEq + Num + Neg<Output = Self> + AddAssign + Send + Sync + 'static
{
    fn modulus(self) -> f64;
    fn conj(self) -> Self;
    fn is_finite(self) -> bool;
}

/// Scalars with exact division, so elimination makes sense.
pub trait FieldScalar: Scalar {
    fn from_real(x: f64) -> Self;
}

impl Scalar for f64 {
    fn modulus(self) -> f64 {
        Float::abs(self)
    }
    fn conj(self) -> Self {
        self
    }
    fn is_finite(self) -> bool {
        Float::is_finite(self)
    }
}

impl FieldScalar for f64 {
    fn from_real(x: f64) -> Self {
        x
    }
}

impl Scalar for Complex64 {
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn is_finite(self) -> bool {
        Float::is_finite(self.re) && Float::is_finite(self.im)
    }
}

impl FieldScalar for Complex64 {
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
}

impl Scalar for i64 {
    fn modulus(self) -> f64 {
        self.unsigned_abs() as f64
    }
    fn conj(self) -> Self {
        self
    }
    fn is_finite(self) -> bool {
        true
    }
}

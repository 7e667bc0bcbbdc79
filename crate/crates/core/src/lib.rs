//! Convolution algebras on finite domains.
//!
//! Each module realizes one notion of convolution together with the Fourier
//! kernel that diagonalizes it:
//!
//! * [`group`]: finite abelian groups, their characters, and group convolution.
//! * [`graph`]: graph shift operators, the graph Fourier transform, spectral
//!   convolution, polynomial filters and the GCN layer.
//! * [`lattice`]: meet-semilattice shifts and their zeta/Möbius diagonalization.
//! * [`cnn`]: convolution of finitely supported functions on `Z ⊕ Z`.
//! * [`multi_shift`]: column-wise convolution over a finite family of shifts.
//! * [`recovery`]: recovering the Fourier kernel from a convolution product alone.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod cnn;
pub mod error;
pub mod graph;
pub mod group;
pub mod lattice;
pub mod multi_shift;
pub mod numeric;
pub mod recovery;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use numeric::{CMatrix, IMatrix, Matrix, RMatrix};

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Convolution algebras on finite domains.
///
/// Every command reads JSON inputs given with repeated `--in`, prints a short
/// summary, optionally writes its result with `--out` and a machine-readable
/// report with `--report`. Exit status: 0 success, 1 a check failed,
/// 2 bad input.
#[derive(Debug, Parser)]
#[command(name = "convkit", version, about, long_about)]
pub struct Cli {
    #[command(subcommand)]
    pub domain: Domain,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Input file; repeat for commands taking several operands.
    #[arg(long = "in", value_name = "FILE", global = true)]
    pub inputs: Vec<PathBuf>,
    /// Where to write the result.
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized steps.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Override the command's default tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Where to write the JSON run report.
    #[arg(long, value_name = "FILE", global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Domain {
    /// Fourier analysis on finite abelian groups.
    Group {
        #[command(subcommand)]
        verb: GroupVerb,
    },
    /// Graph signal processing.
    Graph {
        /// Shift operator: adjacency, laplacian, normalized_laplacian_selfloop or custom.
        #[arg(long, global = true)]
        shift: Option<String>,
        #[command(subcommand)]
        verb: GraphVerb,
    },
    /// Recover the Fourier kernel of a built-in convolution algebra.
    Recover {
        /// Add EPS·(x ⊙ y) to the product before recovering.
        #[arg(long, value_name = "EPS", global = true)]
        corrupt: Option<f64>,
        #[command(subcommand)]
        verb: RecoverVerb,
    },
    /// Shifts and Fourier transform on meet-semilattices.
    Lattice {
        #[command(subcommand)]
        verb: LatticeVerb,
    },
    /// Convolution of images on Z².
    Cnn {
        #[command(subcommand)]
        verb: CnnVerb,
    },
    /// Families of graph shifts over one node set.
    Multi {
        #[command(subcommand)]
        verb: MultiVerb,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum GroupVerb {
    /// Fourier transform of a signal.
    Dft,
    /// Inverse Fourier transform of a spectrum.
    Idft,
    /// Convolution of two signals.
    Conv,
    /// Both sides of the Plancherel identity.
    Plancherel,
}

#[derive(Debug, Clone, Subcommand)]
pub enum GraphVerb {
    /// Graph Fourier transform of a signal.
    Gft,
    /// Inverse graph Fourier transform.
    Igft,
    /// Spectral convolution of two signals.
    Conv,
    /// Polynomial in the shift equal to the filter of a signal.
    FitPoly,
    /// Test whether a matrix commutes with the shift.
    ShiftInvariant,
    /// One graph convolutional layer P(S)·X·W.
    Gcn {
        /// Polynomial coefficients, lowest degree first.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coeffs: Vec<f64>,
    },
    /// Parameter counts of a polynomial filter and a 3×3 stencil.
    Dof {
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum RecoverVerb {
    /// Group convolution on the group in `--in`.
    Group,
    /// Spectral convolution on the graph in `--in`.
    Graph,
    /// Componentwise product on Cⁿ.
    Hadamard {
        #[arg(long)]
        n: usize,
    },
    /// Vectorized columnwise convolution of the multi-shift system in `--in`.
    Multishift,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum LatticeVerb {
    /// Check that the order is a meet-semilattice.
    Validate,
    /// All shift operators and their commutation.
    Shifts,
    /// Zeta and Möbius matrices and every shift's response.
    Diagonalize,
    /// Convolution of a filter with a signal.
    Conv,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CnnVerb {
    /// Group convolution of an image with a kernel or another image.
    Conv,
    /// Compare group convolution with flipped-kernel sliding-window correlation.
    Equiv,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum MultiVerb {
    /// Columnwise convolution of two n×m signals.
    Conv,
    /// All characters of a multi-signal.
    Characters,
    /// Expectation of the columnwise transforms of a broadcast signal.
    Composite,
}

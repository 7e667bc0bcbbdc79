//! JSON interchange formats.
//!
//! Scalars are either bare numbers or `[re, im]` pairs. Outputs use bare
//! numbers whenever every imaginary part is exactly zero.

use std::path::{Path, PathBuf};

use convkit_core::cnn::{Kernel3x3, LatticeFunction};
use convkit_core::graph::{Graph, GraphShiftSystem, ShiftKind};
use convkit_core::group::{FiniteAbelianGroup, GroupSignal};
use convkit_core::lattice::MeetSemilattice;
use convkit_core::multi_shift::MultiShiftSystem;
use convkit_core::{CMatrix, Complex64, IMatrix, RMatrix};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Scalar> for Complex64 {
    fn from(s: Scalar) -> Self {
        match s {
            Scalar::Real(re) => Complex64::new(re, 0.0),
            Scalar::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub orders: Vec<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalFile {
    pub group: GroupSpec,
    pub values: Vec<Scalar>,
}

/// A plain vector: either a bare array or an object with a `values` field.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum VectorFile {
    Bare(Vec<Scalar>),
    Wrapped { values: Vec<Scalar> },
}

impl VectorFile {
    pub fn complex(&self) -> Vec<Complex64> {
        let v = match self {
            Self::Bare(v) | Self::Wrapped { values: v } => v,
        };
        v.iter().map(|&s| s.into()).collect()
    }

    pub fn real(&self, what: &str) -> CliResult<Vec<f64>> {
        self.complex()
            .into_iter()
            .map(|z| {
                if z.im == 0.0 {
                    Ok(z.re)
                } else {
                    Err(CliError::input(format!("{what} must be real")))
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    #[serde(default)]
    pub directed: bool,
    #[serde(default)]
    pub edges: Vec<(usize, usize, f64)>,
    #[serde(default)]
    pub shift: Option<String>,
    /// Explicit shift matrix, used with `"shift": "custom"` or when no kind is given.
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Scalar>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub n: usize,
    pub leq: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageFile {
    pub offset: (i64, i64),
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
}

/// Second operand of `cnn conv`: a 3×3 kernel or a general image.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum KernelOrImage {
    Kernel([f64; 9]),
    Image(ImageFile),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiFile {
    pub n: usize,
    pub weights: Vec<f64>,
    pub systems: Vec<GraphFile>,
}

/// Reads `--in` files in order and remembers their digests.
#[derive(Debug)]
pub struct Inputs {
    paths: Vec<PathBuf>,
    next: usize,
    digests: Vec<(String, String)>,
}

impl Inputs {
    pub fn new(paths: Vec<PathBuf>) -> Self {
        Self {
            paths,
            next: 0,
            digests: Vec::new(),
        }
    }

    /// Parses the next `--in` file as `T`.
    pub fn take<T: DeserializeOwned>(&mut self, what: &str) -> CliResult<T> {
        let path = self
            .paths
            .get(self.next)
            .cloned()
            .ok_or_else(|| CliError::input(format!("missing --in FILE for the {what}")))?;
        self.next += 1;
        let bytes = std::fs::read(&path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        self.digests.push((
            path.display().to_string(),
            hex::encode(Sha256::digest(&bytes)),
        ));
        serde_json::from_slice(&bytes).map_err(|source| CliError::Parse { path, source })
    }

    pub fn remaining(&self) -> usize {
        self.paths.len() - self.next
    }

    pub fn finish(self) -> CliResult<Vec<(String, String)>> {
        if self.next < self.paths.len() {
            return Err(CliError::input(format!(
                "unexpected extra input {}",
                self.paths[self.next].display()
            )));
        }
        Ok(self.digests)
    }
}

pub fn write_json(path: &Path, value: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn group_from(spec: &GroupSpec) -> CliResult<FiniteAbelianGroup> {
    Ok(FiniteAbelianGroup::new(spec.orders.clone())?)
}

pub fn signal_from(file: SignalFile) -> CliResult<GroupSignal> {
    let group = group_from(&file.group)?;
    let values = file.values.into_iter().map(Complex64::from).collect();
    Ok(GroupSignal::new(group, values)?)
}

fn complex_rows(rows: &[Vec<Scalar>], what: &str) -> CliResult<CMatrix> {
    let rows: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|&s| s.into()).collect())
        .collect();
    if rows.is_empty() {
        return Err(CliError::input(format!("{what} has no rows")));
    }
    Ok(CMatrix::from_rows(&rows)?)
}

pub fn matrix_from(rows: &[Vec<Scalar>], what: &str) -> CliResult<CMatrix> {
    complex_rows(rows, what)
}

pub fn real_matrix_from(rows: &[Vec<Scalar>], what: &str) -> CliResult<RMatrix> {
    let m = complex_rows(rows, what)?;
    if m.max_imag() != 0.0 {
        return Err(CliError::input(format!("{what} must be real")));
    }
    Ok(m.real_part())
}

/// Builds the shift system described by a graph file; `--shift` wins over
/// the file's own `shift` field.
pub fn system_from(file: &GraphFile, shift_override: Option<&str>) -> CliResult<GraphShiftSystem> {
    let graph = Graph::new(file.n, file.directed, file.edges.iter().copied())?;
    let kind = match shift_override.or(file.shift.as_deref()) {
        Some(name) => name
            .parse::<ShiftKind>()
            .map_err(|_| CliError::input(format!("unknown shift kind {name:?}")))?,
        None if file.matrix.is_some() => ShiftKind::Custom,
        None => ShiftKind::Adjacency,
    };
    if kind == ShiftKind::Custom {
        let rows = file
            .matrix
            .as_ref()
            .ok_or_else(|| CliError::input("custom shift needs a \"matrix\" field"))?;
        let s = matrix_from(rows, "shift matrix")?;
        return Ok(GraphShiftSystem::custom(graph, s, None)?);
    }
    if file.matrix.is_some() {
        return Err(CliError::input(format!(
            "\"matrix\" is only allowed with the custom shift, not {}",
            kind.as_str()
        )));
    }
    Ok(GraphShiftSystem::build(graph, kind)?)
}

pub fn lattice_from(file: &LatticeFile) -> convkit_core::Result<MeetSemilattice> {
    MeetSemilattice::from_pairs(file.n, &file.leq)
}

pub fn image_from(file: ImageFile) -> CliResult<LatticeFunction> {
    Ok(LatticeFunction::new(
        file.offset,
        file.width,
        file.height,
        file.values,
    )?)
}

pub fn kernel_from(values: [f64; 9]) -> CliResult<Kernel3x3> {
    Ok(Kernel3x3::new(values)?)
}

pub fn multi_from(file: &MultiFile) -> CliResult<MultiShiftSystem> {
    let systems = file
        .systems
        .iter()
        .map(|g| system_from(g, None))
        .collect::<CliResult<Vec<_>>>()?;
    if let Some(bad) = systems.iter().find(|s| s.n() != file.n) {
        return Err(CliError::input(format!(
            "system has {} nodes but the file declares n = {}",
            bad.n(),
            file.n
        )));
    }
    Ok(MultiShiftSystem::new(systems, file.weights.clone())?)
}

// ---- output encoders ----

fn scalar_json(z: Complex64, all_real: bool) -> Value {
    if all_real {
        json!(z.re)
    } else {
        json!([z.re, z.im])
    }
}

pub fn complex_json(values: &[Complex64]) -> Value {
    let all_real = values.iter().all(|z| z.im == 0.0);
    Value::Array(values.iter().map(|&z| scalar_json(z, all_real)).collect())
}

pub fn cmatrix_json(m: &CMatrix) -> Value {
    let all_real = m.max_imag() == 0.0;
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|&z| scalar_json(z, all_real)).collect()))
            .collect(),
    )
}

pub fn rmatrix_json(m: &RMatrix) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>())
}

pub fn imatrix_json(m: &IMatrix) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>())
}

pub fn signal_json(f: &GroupSignal) -> Value {
    json!({
        "group": GroupSpec { orders: f.group().orders().to_vec() },
        "values": complex_json(f.values()),
    })
}

pub fn image_json(f: &LatticeFunction) -> Value {
    json!(ImageFile {
        offset: f.offset(),
        width: f.width(),
        height: f.height(),
        values: f.values().to_vec(),
    })
}

//! JSON file formats for generators and decompositions, plus the
//! `PxQ,PxQ,…` structure argument parser.
//!
//! Matrices are stored dense and row-major, each entry an `[re, im]` pair,
//! so files are language-agnostic and floats survive a round trip
//! bit-for-bit (shortest-representation printing, exact parsing).

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::decompose::WedderburnDecomposition;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Tolerance};
use crate::verify::VerificationReport;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    /// Row-major `[re, im]` pairs, `rows * cols` of them.
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let mut entries = Vec::with_capacity(m.nrows() * m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let z = m[(i, j)];
                entries.push([z.re, z.im]);
            }
        }
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            entries,
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::Parse(format!(
                "matrix claims {}x{} = {} entries but stores {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.entries.len()
            )));
        }
        for (k, e) in self.entries.iter().enumerate() {
            if !e[0].is_finite() || !e[1].is_finite() {
                return Err(Error::Parse(format!(
                    "matrix entry {k} is not finite: [{}, {}]",
                    e[0], e[1]
                )));
            }
        }
        Ok(CMatrix::from_fn(self.rows, self.cols, |i, j| {
            let e = self.entries[i * self.cols + j];
            Complex64::new(e[0], e[1])
        }))
    }
}

/// Optional provenance carried by a generator file.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct GeneratorMetadata {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected_structure: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

/// Input format: the generating matrices of the algebra. A file may carry
/// zero generators; `dim` alone then fixes the space, and the algebra is
/// the scalars.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub dim: usize,
    pub generators: Vec<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub metadata: Option<GeneratorMetadata>,
}

impl GeneratorFile {
    pub fn new(
        dim: usize,
        generators: &[CMatrix],
        metadata: Option<GeneratorMetadata>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("dim must be at least 1".into()));
        }
        for (k, g) in generators.iter().enumerate() {
            if g.shape() != (dim, dim) {
                return Err(Error::Dimension(format!(
                    "generator {k} is {}x{}, expected {dim}x{dim}",
                    g.nrows(),
                    g.ncols()
                )));
            }
        }
        Ok(GeneratorFile {
            dim,
            generators: generators.iter().map(MatrixJson::from_matrix).collect(),
            metadata,
        })
    }

    /// Parse and validate the generator matrices.
    pub fn matrices(&self) -> Result<Vec<CMatrix>> {
        if self.dim == 0 {
            return Err(Error::Parse("dim must be at least 1".into()));
        }
        self.generators
            .iter()
            .enumerate()
            .map(|(k, m)| {
                if m.rows != self.dim || m.cols != self.dim {
                    return Err(Error::Parse(format!(
                        "generator {k} is {}x{}, expected {0}x{0} per the dim field",
                        self.dim, m.rows
                    )));
                }
                m.to_matrix()
            })
            .collect()
    }
}

/// Output format: the claimed decomposition, self-contained enough to be
/// verified without rerunning the pipeline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionFile {
    /// Canonical block structure [(p, q), …].
    pub structure: Vec<(usize, usize)>,
    /// The global block-diagonalizing unitary.
    pub u: MatrixJson,
    /// Starting row of each block in the rotated basis.
    pub block_offsets: Vec<usize>,
    /// Tolerances the decomposition was computed with.
    pub tolerances: Tolerance,
    /// Verification measured at decomposition time.
    pub report: VerificationReport,
    /// Minimal projectors per block, in multiplicity-slab order.
    pub projectors: Vec<Vec<MatrixJson>>,
}

impl DecompositionFile {
    pub fn from_decomposition(d: &WedderburnDecomposition, report: VerificationReport) -> Self {
        DecompositionFile {
            structure: d.structure(),
            u: MatrixJson::from_matrix(&d.global_u),
            block_offsets: d.block_offsets(),
            tolerances: d.tol,
            report,
            projectors: d
                .class_member_projectors()
                .iter()
                .map(|group| group.iter().map(MatrixJson::from_matrix).collect())
                .collect(),
        }
    }

    pub fn unitary(&self) -> Result<CMatrix> {
        self.u.to_matrix()
    }

    pub fn projector_matrices(&self) -> Result<Vec<Vec<CMatrix>>> {
        self.projectors
            .iter()
            .map(|group| group.iter().map(MatrixJson::to_matrix).collect())
            .collect()
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut out = serde_json::to_vec(value)?;
    out.push(b'\n');
    let mut f = fs::File::create(path)?;
    f.write_all(&out)?;
    Ok(())
}

pub fn read_generator_file(path: &Path) -> Result<GeneratorFile> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_generator_file(path: &Path, file: &GeneratorFile) -> Result<()> {
    write_json(path, file)
}

pub fn read_decomposition_file(path: &Path) -> Result<DecompositionFile> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_decomposition_file(path: &Path, file: &DecompositionFile) -> Result<()> {
    write_json(path, file)
}

/// Parse a structure argument like `"2x3,1x4,3x1"` into [(2,3),(1,4),(3,1)].
pub fn parse_structure_arg(arg: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for piece in arg.split(',') {
        let piece = piece.trim();
        let (p, q) = piece.split_once(['x', 'X']).ok_or_else(|| {
            Error::Parse(format!("block '{piece}' is not of the form PxQ"))
        })?;
        let parse = |s: &str, which: &str| -> Result<usize> {
            let v: usize = s.trim().parse().map_err(|_| {
                Error::Parse(format!("block '{piece}': {which} '{s}' is not a positive integer"))
            })?;
            if v == 0 {
                return Err(Error::Parse(format!(
                    "block '{piece}': {which} must be at least 1"
                )));
            }
            Ok(v)
        };
        out.push((parse(p, "p")?, parse(q, "q")?));
    }
    if out.is_empty() {
        return Err(Error::Parse("structure must contain at least one block".into()));
    }
    Ok(out)
}

//! Dense complex matrices and the numerical primitives the rest of the
//! crate is built on: Hilbert–Schmidt inner products, Hermitian spectral
//! decomposition with eigenvalue clustering, Gram–Schmidt orthonormalization
//! of operator families, and Haar-random unitaries.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense complex matrix; the universal carrier for operators.
pub type CMatrix = DMatrix<Complex64>;

/// Numerical thresholds shared by the whole pipeline.
///
/// `zero` is the absolute floor below which a quantity counts as zero,
/// `rel` the relative residual threshold for rank/proportionality/membership
/// decisions, and `eig_cluster` the relative gap under which two eigenvalues
/// are treated as one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    #[serde(rename = "tol_zero")]
    pub zero: f64,
    #[serde(rename = "tol_rel")]
    pub rel: f64,
    #[serde(rename = "tol_eig_cluster")]
    pub eig_cluster: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            zero: 1e-12,
            rel: 1e-9,
            eig_cluster: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn new(zero: f64, rel: f64, eig_cluster: f64) -> Result<Self> {
        let t = Tolerance {
            zero,
            rel,
            eig_cluster,
        };
        t.validate()?;
        Ok(t)
    }

    /// Derive a config from a single knob: `rel` is set to `target_rel` and
    /// `eig_cluster` is scaled by the same factor; the absolute floor stays.
    pub fn with_rel(target_rel: f64) -> Result<Self> {
        let d = Tolerance::default();
        Tolerance::new(d.zero, target_rel, d.eig_cluster * (target_rel / d.rel))
    }

    pub fn validate(&self) -> Result<()> {
        let finite_nonneg =
            |x: f64| x.is_finite() && x >= 0.0;
        if !finite_nonneg(self.zero) || !finite_nonneg(self.rel) || !finite_nonneg(self.eig_cluster)
        {
            return Err(Error::Domain(
                "tolerances must be finite and nonnegative".into(),
            ));
        }
        if self.zero > self.rel {
            return Err(Error::Domain(format!(
                "tol_zero ({:e}) must not exceed tol_rel ({:e})",
                self.zero, self.rel
            )));
        }
        Ok(())
    }

    /// Threshold for a residual measured against a quantity of size `scale`:
    /// relative `rel * scale` with absolute floor `zero`.
    pub fn floor(&self, scale: f64) -> f64 {
        self.zero.max(self.rel * scale)
    }
}

/// n-dimensional identity operator.
pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Matrix unit E_ij (1 in row `i`, column `j`, zero elsewhere).
pub fn matrix_unit(n: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(i, j)] = Complex64::new(1.0, 0.0);
    m
}

fn check_same_shape(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::Dimension(format!(
            "expected equal shapes, got {}x{} and {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    Ok(())
}

fn check_square(a: &CMatrix) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(())
}

/// Hilbert–Schmidt inner product `trace(a† b)`; conjugate-linear in `a`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Result<Complex64> {
    check_same_shape(a, b)?;
    Ok(a.dotc(b))
}

// v -= c * b, without allocating.
fn sub_scaled(v: &mut CMatrix, b: &CMatrix, c: Complex64) {
    for (x, y) in v.as_mut_slice().iter_mut().zip(b.as_slice()) {
        *x -= c * *y;
    }
}

/// Spectral decomposition h = Σ λ_k Q_k of a Hermitian matrix, with nearby
/// eigenvalues merged into a single cluster.
///
/// Raw eigenvalues are sorted and merged by single linkage whenever a
/// consecutive gap is at most `eig_cluster * max(1, ‖h‖_F)`; each returned
/// eigenvalue is the mean of its cluster and each projector the sum of the
/// cluster's eigenvector outer products. The projectors always resolve the
/// whole space (zero eigenvalues included), so Σ Q_k = 1.
pub fn hermitian_spectral(h: &CMatrix, tol: Tolerance) -> Result<Vec<(f64, CMatrix)>> {
    check_square(h)?;
    let n = h.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = h.norm();
    let herm_residual = (h - h.adjoint()).norm();
    if herm_residual > tol.floor(scale) {
        return Err(Error::Contract(format!(
            "matrix is not Hermitian: ‖h - h†‖ = {:.3e} exceeds {:.3e}",
            herm_residual,
            tol.floor(scale)
        )));
    }
    // Symmetrize before solving so the eigensolver sees an exactly
    // Hermitian matrix.
    let sym = (h + h.adjoint()).unscale(2.0);
    let eig = SymmetricEigen::new(sym);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let gap_threshold = tol.eig_cluster * scale.max(1.0);
    let mut clusters: Vec<Vec<usize>> = vec![vec![order[0]]];
    for w in order.windows(2) {
        let gap = eig.eigenvalues[w[1]] - eig.eigenvalues[w[0]];
        if gap <= gap_threshold {
            clusters.last_mut().unwrap().push(w[1]);
        } else {
            clusters.push(vec![w[1]]);
        }
    }

    let out = clusters
        .into_iter()
        .map(|members| {
            let lambda =
                members.iter().map(|&k| eig.eigenvalues[k]).sum::<f64>() / members.len() as f64;
            let mut q = CMatrix::zeros(n, n);
            for &k in &members {
                let v = eig.eigenvectors.column(k);
                q += v * v.adjoint();
            }
            (lambda, q)
        })
        .collect();
    Ok(out)
}

/// Gram–Schmidt under the Hilbert–Schmidt inner product.
///
/// Returns an orthonormal family spanning the same subspace as the input;
/// inputs whose residual after projection is at most
/// `max(tol_zero, tol_rel * input_norm)` are dropped as linearly dependent.
pub fn orthonormalize(mats: &[CMatrix], tol: Tolerance) -> Vec<CMatrix> {
    let mut basis = Vec::new();
    extend_orthonormal(&mut basis, mats.iter().cloned(), tol);
    basis
}

/// Append to an existing orthonormal family every candidate that adds a new
/// direction; returns how many were appended. Two orthogonalization passes
/// keep the family orthonormal to machine precision.
pub(crate) fn extend_orthonormal(
    basis: &mut Vec<CMatrix>,
    candidates: impl IntoIterator<Item = CMatrix>,
    tol: Tolerance,
) -> usize {
    let mut appended = 0;
    for cand in candidates {
        let input_norm = cand.norm();
        let mut v = cand;
        for _ in 0..2 {
            for b in basis.iter() {
                let c = b.dotc(&v);
                sub_scaled(&mut v, b, c);
            }
        }
        let residual = v.norm();
        if residual > tol.floor(input_norm) {
            basis.push(v.unscale(residual));
            appended += 1;
        }
    }
    appended
}

pub(crate) fn haar_from_rng(n: usize, rng: &mut impl Rng) -> CMatrix {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let gauss = CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(
            rng.sample::<f64, _>(StandardNormal) * inv_sqrt2,
            rng.sample::<f64, _>(StandardNormal) * inv_sqrt2,
        )
    });
    let qr = gauss.qr();
    let r = qr.r();
    let mut q = qr.q();
    // Multiply each column by the phase of R's diagonal so the distribution
    // is exactly Haar rather than biased by the QR sign convention.
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for x in q.column_mut(k).iter_mut() {
            *x *= phase;
        }
    }
    q
}

/// Haar-distributed n×n unitary, deterministic in `(n, seed)`.
pub fn random_haar_unitary(n: usize, seed: u64) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::Domain("unitary dimension must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(haar_from_rng(n, &mut rng))
}

/// Orthonormal column basis of the range of `p`, with the rank read off the
/// diagonal of a column-pivoted QR factorization.
///
/// Each column is rotated by a unit phase so its largest-modulus entry is
/// real and positive. The factorization is already deterministic; the phase
/// convention additionally makes axis-aligned projectors produce literal
/// standard basis vectors.
pub fn range_basis(p: &CMatrix, tol: Tolerance) -> Result<CMatrix> {
    check_square(p)?;
    let n = p.nrows();
    let qr = p.clone().col_piv_qr();
    let r = qr.r();
    let head = r[(0, 0)].norm();
    let mut rank = 0;
    for k in 0..n {
        if r[(k, k)].norm() > tol.floor(head) {
            rank += 1;
        } else {
            break;
        }
    }
    let q = qr.q();
    let mut b = q.columns(0, rank).into_owned();
    for k in 0..rank {
        let mut col = b.column_mut(k);
        let mut lead = Complex64::new(0.0, 0.0);
        for x in col.iter() {
            if x.norm() > lead.norm() {
                lead = *x;
            }
        }
        if lead.norm() > 0.0 {
            let phase = lead.conj() / lead.norm();
            for x in col.iter_mut() {
                *x *= phase;
            }
        }
    }
    Ok(b)
}

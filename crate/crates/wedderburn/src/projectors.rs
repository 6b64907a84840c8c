//! Maximal families of minimal orthogonal projectors.
//!
//! A projector P in the algebra 𝒜 is minimal when P𝒜P = ℂP. Starting from
//! the identity, any non-minimal projector is split by spectral
//! decomposition of a witness — a Hermitian compression pMp that is not a
//! multiple of p — until every piece is minimal. The resulting family is
//! pairwise orthogonal and sums to the identity.

use num_complex::Complex64;

use crate::algebra::AlgebraBasis;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_spectral, identity, range_basis, CMatrix, Tolerance};

fn compress(p: &CMatrix, m: &CMatrix) -> CMatrix {
    p * m * p
}

// Shared core of the proportionality test: compression C = pmp, the least
// squares coefficient λ = trace(C)/trace(p), and the deviation ‖C − λp‖.
fn proportionality_parts(m: &CMatrix, p: &CMatrix, tol: Tolerance) -> Result<(Complex64, f64, f64)> {
    if m.shape() != p.shape() {
        return Err(Error::Dimension(format!(
            "shape mismatch: {}x{} vs {}x{}",
            m.nrows(),
            m.ncols(),
            p.nrows(),
            p.ncols()
        )));
    }
    let tr = p.trace();
    if tr.norm() <= tol.zero {
        return Err(Error::Domain(
            "degenerate projector: trace is zero within tolerance".into(),
        ));
    }
    let c = compress(p, m);
    let lambda = c.trace() / tr;
    let mut r = c.clone();
    for (x, y) in r.as_mut_slice().iter_mut().zip(p.as_slice()) {
        *x -= lambda * *y;
    }
    Ok((lambda, r.norm(), c.norm()))
}

/// Test whether the compression p·m·p is a scalar multiple of `p`.
///
/// Returns `Some(λ)` with λ = trace(pmp)/trace(p) when
/// ‖pmp − λp‖ ≤ max(tol_zero, tol_rel·‖pmp‖), and `None` otherwise.
pub fn proportionality_coefficient(
    m: &CMatrix,
    p: &CMatrix,
    tol: Tolerance,
) -> Result<Option<Complex64>> {
    let (lambda, residual, c_norm) = proportionality_parts(m, p, tol)?;
    if residual <= tol.floor(c_norm) {
        Ok(Some(lambda))
    } else {
        Ok(None)
    }
}

/// Rank of a numerical projector, read from its trace.
pub fn projector_rank(p: &CMatrix, tol: Tolerance) -> Result<usize> {
    let t = p.trace();
    let rounded = t.re.round();
    let defect = (t - Complex64::new(rounded, 0.0)).norm();
    if rounded < 0.0 || defect > tol.floor(p.nrows() as f64) {
        return Err(Error::Structural {
            stage: "projector-rank",
            detail: format!("trace {t} is not close to a nonnegative integer"),
        });
    }
    Ok(rounded as usize)
}

/// Scan the basis for the compression pMp deviating most from a multiple of
/// p; returns `(index, residual, proportional_everywhere)`.
fn best_witness(p: &CMatrix, basis: &AlgebraBasis, tol: Tolerance) -> Result<(usize, f64, bool)> {
    let mut best = (0, f64::NEG_INFINITY);
    let mut all_proportional = true;
    for (k, a) in basis.elements().iter().enumerate() {
        let (_, residual, c_norm) = proportionality_parts(a, p, tol)?;
        if residual > tol.floor(c_norm) {
            all_proportional = false;
        }
        if residual > best.1 {
            best = (k, residual);
        }
    }
    Ok((best.0, best.1, all_proportional))
}

/// Split a non-minimal projector into orthogonal subprojectors, or return
/// `None` if `p` is already minimal (every pMp is a multiple of p).
///
/// The witness compression is separated into Hermitian parts
/// p(M+M†)p and i·p(M−M†)p; the one deviating more from a multiple of p
/// is spectrally decomposed on the range of p, and the eigenprojectors of
/// its distinct clusters are the refined pieces. Every piece must still lie
/// in the algebra; a membership defect beyond 10× the usual threshold is
/// escalated as an error.
pub fn refine_projector(
    p: &CMatrix,
    basis: &AlgebraBasis,
    tol: Tolerance,
) -> Result<Option<Vec<CMatrix>>> {
    let (k, residual, all_proportional) = best_witness(p, basis, tol)?;
    if all_proportional {
        return Ok(None);
    }

    let m = &basis.elements()[k];
    let n = compress(p, m);
    let n_adj = n.adjoint();
    let h1 = &n + &n_adj;
    let h2 = (&n - &n_adj) * Complex64::new(0.0, 1.0);
    let (_, r1, _) = proportionality_parts(&h1, p, tol)?;
    let (_, r2, _) = proportionality_parts(&h2, p, tol)?;
    let h = if r1 >= r2 { h1 } else { h2 };

    // Work on the range of p so the zero eigenvalues of the complement
    // never mix into the split.
    let s = range_basis(p, tol)?;
    let k_small = s.adjoint() * &h * &s;
    let clusters = hermitian_spectral(&k_small, tol)?;
    if clusters.len() < 2 {
        return Err(Error::Structural {
            stage: "refine",
            detail: format!(
                "witness residual {residual:.3e} indicates a split but all \
                 eigenvalues fell in one cluster; tolerance bands conflict"
            ),
        });
    }
    let children: Vec<CMatrix> = clusters
        .into_iter()
        .map(|(_, q)| &s * q * s.adjoint())
        .collect();
    for child in &children {
        let defect = basis.membership_residual(child)?;
        let allowed = 10.0 * tol.floor(child.norm().max(1.0));
        if defect > allowed {
            return Err(Error::Tolerance {
                context: "refine-membership",
                residual: defect,
                allowed,
            });
        }
    }
    Ok(Some(children))
}

/// A pairwise-orthogonal family of minimal projectors summing to the
/// identity.
#[derive(Debug, Clone)]
pub struct ProjectorFamily {
    dim_h: usize,
    projectors: Vec<CMatrix>,
    ranks: Vec<usize>,
}

/// Residuals certifying a projector family, each a Frobenius norm defect.
#[derive(Debug, Clone, Copy)]
pub struct FamilyCertificate {
    /// max ‖Pᵢ − Pᵢ†‖
    pub hermiticity: f64,
    /// max ‖Pᵢ² − Pᵢ‖
    pub idempotency: f64,
    /// max ‖PᵢPⱼ‖ over i ≠ j
    pub orthogonality: f64,
    /// ‖Σ Pᵢ − 1‖
    pub completeness: f64,
    /// max over j and basis elements A of ‖PⱼAPⱼ − λ·Pⱼ‖
    pub minimality: f64,
    /// max distance from each Pᵢ to the algebra's span
    pub membership: f64,
}

impl FamilyCertificate {
    pub fn max(&self) -> f64 {
        self.hermiticity
            .max(self.idempotency)
            .max(self.orthogonality)
            .max(self.completeness)
            .max(self.minimality)
            .max(self.membership)
    }
}

impl ProjectorFamily {
    pub(crate) fn new(dim_h: usize, projectors: Vec<CMatrix>, tol: Tolerance) -> Result<Self> {
        let ranks = projectors
            .iter()
            .map(|p| projector_rank(p, tol))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProjectorFamily {
            dim_h,
            projectors,
            ranks,
        })
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    /// Rank of each projector, in family order.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Measure every property the family is supposed to have.
    pub fn certificate(&self, basis: &AlgebraBasis, tol: Tolerance) -> Result<FamilyCertificate> {
        let mut cert = FamilyCertificate {
            hermiticity: 0.0,
            idempotency: 0.0,
            orthogonality: 0.0,
            completeness: 0.0,
            minimality: 0.0,
            membership: 0.0,
        };
        let mut sum = CMatrix::zeros(self.dim_h, self.dim_h);
        for (i, p) in self.projectors.iter().enumerate() {
            cert.hermiticity = cert.hermiticity.max((p - p.adjoint()).norm());
            cert.idempotency = cert.idempotency.max((p * p - p).norm());
            cert.membership = cert.membership.max(basis.membership_residual(p)?);
            sum += p;
            for q in &self.projectors[i + 1..] {
                cert.orthogonality = cert.orthogonality.max((p * q).norm());
            }
            for a in basis.elements() {
                let (_, residual, _) = proportionality_parts(a, p, tol)?;
                cert.minimality = cert.minimality.max(residual);
            }
        }
        cert.completeness = (sum - identity(self.dim_h)).norm();
        Ok(cert)
    }
}

/// Refine the identity down to a maximal family of minimal orthogonal
/// projectors for the algebra spanned by `basis`.
pub fn maximal_family(basis: &AlgebraBasis, tol: Tolerance) -> Result<ProjectorFamily> {
    let n = basis.dim_h();
    let mut work = std::collections::VecDeque::from([identity(n)]);
    let mut done = Vec::new();
    while let Some(p) = work.pop_front() {
        match refine_projector(&p, basis, tol)? {
            None => done.push(p),
            Some(children) => {
                for child in children.into_iter().rev() {
                    work.push_front(child);
                }
            }
        }
        if done.len() + work.len() > n {
            return Err(Error::Structural {
                stage: "maximal-family",
                detail: format!("family size exceeded the space dimension {n}"),
            });
        }
    }
    let family = ProjectorFamily::new(n, done, tol)?;
    let total_rank: usize = family.ranks().iter().sum();
    if total_rank != n {
        return Err(Error::Structural {
            stage: "maximal-family",
            detail: format!("family ranks sum to {total_rank}, expected {n}"),
        });
    }
    Ok(family)
}

//! Independent verification of a claimed decomposition.
//!
//! The checker recomputes the algebra closure from the generators and
//! measures, without reusing any pipeline internals, whether the claimed
//! unitary, structure, and projectors actually block-diagonalize it. A
//! claim passes only when every residual sits below the relative tolerance
//! and the dimension identity Σ p² = dim 𝒜 holds exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::close_unital_star_algebra;
use crate::decompose::{collapse_blocks, WedderburnDecomposition};
use crate::error::{Error, Result};
use crate::matrix::{identity, CMatrix, Tolerance};

/// The exact accounting check Σ p² = dim 𝒜.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DimensionIdentity {
    pub holds: bool,
    pub algebra_dim: usize,
    pub structure_dim: usize,
}

/// Everything a verification run measures. Residuals are Frobenius norms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    /// ‖U U† − 1‖
    pub unitarity_residual: f64,
    /// Worst distance of U a U† from the block structure over the basis,
    /// relative to ‖a‖.
    pub max_block_residual: f64,
    /// Worst defect of the claimed minimal projectors: Hermiticity,
    /// idempotency, algebra membership, and the distance of U Pᵢ U† from
    /// the multiplicity slab the structure assigns to Pᵢ.
    pub projector_image_residual: f64,
    pub dimension_identity: DimensionIdentity,
    pub structure: Vec<(usize, usize)>,
    pub passed: bool,
}

/// Check a claimed decomposition against the generators it came from.
///
/// `class_projectors[k]` holds the p_k minimal projectors of block k in
/// slab order. Shape mismatches are structural errors; numerical
/// violations are reported, not raised.
pub fn verify_claim(
    generators: &[CMatrix],
    structure: &[(usize, usize)],
    global_u: &CMatrix,
    class_projectors: &[Vec<CMatrix>],
    tol: Tolerance,
) -> Result<VerificationReport> {
    tol.validate()?;
    let n = global_u.nrows();
    if global_u.ncols() != n || n == 0 {
        return Err(Error::Dimension(format!(
            "claimed unitary is {}x{}, expected square and nonempty",
            global_u.nrows(),
            global_u.ncols()
        )));
    }
    let basis = close_unital_star_algebra(generators, n, tol)?;
    let covered: usize = structure.iter().map(|&(p, q)| p * q).sum();
    if covered != n {
        return Err(Error::Structural {
            stage: "verify",
            detail: format!("structure blocks cover {covered} of {n} dimensions"),
        });
    }
    if class_projectors.len() != structure.len() {
        return Err(Error::Structural {
            stage: "verify",
            detail: format!(
                "{} projector groups for {} structure blocks",
                class_projectors.len(),
                structure.len()
            ),
        });
    }
    for (k, (&(p, _), group)) in structure.iter().zip(class_projectors).enumerate() {
        if group.len() != p {
            return Err(Error::Structural {
                stage: "verify",
                detail: format!("block {k} claims p={p} but stores {} projectors", group.len()),
            });
        }
        for (i, proj) in group.iter().enumerate() {
            if proj.shape() != (n, n) {
                return Err(Error::Dimension(format!(
                    "projector {i} of block {k} is {}x{}, expected {n}x{n}",
                    proj.nrows(),
                    proj.ncols()
                )));
            }
        }
    }

    let unitarity_residual = (global_u * global_u.adjoint() - identity(n)).norm();

    // Relative residual; the basis elements are unit-norm, so the division
    // matters only if roundoff nudges a norm off 1.
    let mut max_block_residual: f64 = 0.0;
    for a in basis.elements() {
        let conj = global_u * a * global_u.adjoint();
        let (_, residual) = collapse_blocks(&conj, structure)?;
        max_block_residual = max_block_residual.max(residual / a.norm());
    }

    let mut projector_image_residual: f64 = 0.0;
    let mut offset = 0;
    for (&(p, q), group) in structure.iter().zip(class_projectors) {
        for (i, proj) in group.iter().enumerate() {
            let hermiticity = (proj - proj.adjoint()).norm();
            let idempotency = (proj * proj - proj).norm();
            let membership = basis.membership_residual(proj)?;
            let image = global_u * proj * global_u.adjoint();
            let mut slab = CMatrix::zeros(n, n);
            for r in 0..q {
                let d = offset + i * q + r;
                slab[(d, d)] = Complex64::new(1.0, 0.0);
            }
            let slab_distance = (image - slab).norm();
            projector_image_residual = projector_image_residual
                .max(hermiticity)
                .max(idempotency)
                .max(membership)
                .max(slab_distance);
        }
        offset += p * q;
    }

    let algebra_dim = basis.dim();
    let structure_dim = structure.iter().map(|&(p, _)| p * p).sum();
    let dimension_identity = DimensionIdentity {
        holds: algebra_dim == structure_dim,
        algebra_dim,
        structure_dim,
    };

    let gate = tol.floor(1.0);
    let passed = dimension_identity.holds
        && unitarity_residual <= gate
        && max_block_residual <= gate
        && projector_image_residual <= gate;

    Ok(VerificationReport {
        unitarity_residual,
        max_block_residual,
        projector_image_residual,
        dimension_identity,
        structure: structure.to_vec(),
        passed,
    })
}

/// Verify a decomposition object directly against its generators.
pub fn verify_decomposition(
    generators: &[CMatrix],
    d: &WedderburnDecomposition,
    tol: Tolerance,
) -> Result<VerificationReport> {
    verify_claim(
        generators,
        &d.structure(),
        &d.global_u,
        &d.class_member_projectors(),
        tol,
    )
}

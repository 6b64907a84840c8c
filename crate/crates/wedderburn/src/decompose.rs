//! Assembly of the block-diagonalizing unitary.
//!
//! For each equivalence class {P₀, …, P_{p−1}} of rank-q minimal
//! projectors, the class subspace gets an orthonormal basis S (the class
//! isometry); in those coordinates an isometry V with row blocks Rᵢ†S
//! carries each restricted Pᵢ to |i⟩⟨i| ⊗ 1_q. Witness compressions
//! R₀†ARᵢ are proportional to unitaries Bᵢ (intertwiners); the
//! block-diagonal W = Σ |i⟩⟨i| ⊗ Bᵢ aligns the multiplicity factors so
//! that every algebra element conjugates to λ_{ij} |i⟩⟨j| ⊗ 1_q on the
//! class block. Stacking each class's (W·V)·S† gives the global unitary.

use crate::algebra::{close_unital_star_algebra, AlgebraBasis};
use crate::classes::partition_classes;
use crate::error::{Error, Result};
use crate::matrix::{identity, range_basis, CMatrix, Tolerance};
use crate::projectors::{maximal_family, projector_rank, ProjectorFamily};

/// Common rank of the projectors in one equivalence class.
pub fn class_rank(
    class_indices: &[usize],
    family: &ProjectorFamily,
    tol: Tolerance,
) -> Result<usize> {
    let &first = class_indices
        .first()
        .ok_or_else(|| Error::Domain("a class must contain at least one projector".into()))?;
    for &i in class_indices {
        if i >= family.len() {
            return Err(Error::Domain(format!(
                "projector index {i} out of range: family has {} members",
                family.len()
            )));
        }
    }
    let q = projector_rank(&family.projectors()[first], tol)?;
    for &i in &class_indices[1..] {
        let r = projector_rank(&family.projectors()[i], tol)?;
        if r != q {
            return Err(Error::Structural {
                stage: "class-rank",
                detail: format!(
                    "equivalent projectors have different ranks: member {first} has {q}, member {i} has {r}"
                ),
            });
        }
    }
    if q == 0 {
        return Err(Error::Structural {
            stage: "class-rank",
            detail: "class contains a rank-zero projector".into(),
        });
    }
    Ok(q)
}

/// Isometry V (pq × pq, orthonormal rows) in class coordinates: row block i
/// is Rᵢ†S, where Rᵢ is an orthonormal basis of range(Pᵢ) and S the class
/// isometry. It carries the restricted projector S†PᵢS to |i⟩⟨i| ⊗ 1_q.
pub fn build_isometry_v(
    class_indices: &[usize],
    family: &ProjectorFamily,
    class_isometry: &CMatrix,
    q: usize,
    tol: Tolerance,
) -> Result<CMatrix> {
    let p = class_indices.len();
    let n = family.dim_h();
    if class_isometry.nrows() != n || class_isometry.ncols() != p * q {
        return Err(Error::Dimension(format!(
            "class isometry is {}x{}, expected {n}x{}",
            class_isometry.nrows(),
            class_isometry.ncols(),
            p * q
        )));
    }
    let mut v = CMatrix::zeros(p * q, p * q);
    for (i, &idx) in class_indices.iter().enumerate() {
        let r = range_basis(&family.projectors()[idx], tol)?;
        if r.ncols() != q {
            return Err(Error::Structural {
                stage: "isometry",
                detail: format!(
                    "range basis of member {idx} has {} columns, expected rank {q}",
                    r.ncols()
                ),
            });
        }
        let block = r.adjoint() * class_isometry;
        v.view_mut((i * q, 0), (q, p * q)).copy_from(&block);
    }
    Ok(v)
}

/// Unitary q×q intertwiner Bᵢ between the ranges of P₀ and Pᵢ, read off a
/// witness compression R₀†ARᵢ of maximal norm and rescaled by
/// √(trace(M†M)/q) to unit scale.
///
/// `v` is the class-coordinate isometry from [`build_isometry_v`] and
/// `class_isometry` the embedding of class coordinates into the ambient
/// space; B₀ is the identity by convention. Proportionality of M†M to the
/// identity is what makes the rescaled block unitary; a defect beyond the
/// allowance is reported as a tolerance failure rather than silently
/// accepted.
pub fn intertwiner_unitary(
    i: usize,
    v: &CMatrix,
    class_isometry: &CMatrix,
    q: usize,
    basis: &AlgebraBasis,
    tol: Tolerance,
) -> Result<CMatrix> {
    if q == 0 || !v.nrows().is_multiple_of(q) {
        return Err(Error::Dimension(format!(
            "isometry with {} rows is not divisible into rank-{q} blocks",
            v.nrows()
        )));
    }
    let p = v.nrows() / q;
    if i >= p {
        return Err(Error::Domain(format!(
            "class member index {i} out of range for {p} members"
        )));
    }
    if class_isometry.nrows() != basis.dim_h() || class_isometry.ncols() != v.ncols() {
        return Err(Error::Dimension(format!(
            "class isometry is {}x{}, expected {}x{}",
            class_isometry.nrows(),
            class_isometry.ncols(),
            basis.dim_h(),
            v.ncols()
        )));
    }
    if i == 0 {
        return Ok(identity(q));
    }
    // Embed the row blocks into the ambient space: row block i of v·S† is
    // Rᵢ†, so M below is exactly R₀†·A·Rᵢ.
    let ve = v * class_isometry.adjoint();
    let r0t = ve.rows(0, q).into_owned();
    let ri = ve.rows(i * q, q).adjoint();
    let mut best_norm = f64::NEG_INFINITY;
    let mut best = CMatrix::zeros(q, q);
    for a in basis.elements() {
        let m = &r0t * a * &ri;
        let s = m.norm();
        if s > best_norm {
            best_norm = s;
            best = m;
        }
    }
    if best_norm <= tol.floor(1.0) {
        return Err(Error::Structural {
            stage: "intertwiner",
            detail: format!(
                "no basis element couples class members 0 and {i} (best norm {best_norm:.3e})"
            ),
        });
    }
    let b = best.unscale(best_norm / (q as f64).sqrt());
    let defect = (b.adjoint() * &b - identity(q)).norm();
    let allowed = tol.floor(1.0);
    if defect > allowed {
        return Err(Error::Tolerance {
            context: "intertwiner-unitarity",
            residual: defect,
            allowed,
        });
    }
    Ok(b)
}

/// Block-diagonal pq × pq unitary W = Σ |i⟩⟨i| ⊗ Bᵢ.
pub fn build_w(intertwiners: &[CMatrix]) -> Result<CMatrix> {
    let first = intertwiners
        .first()
        .ok_or_else(|| Error::Domain("need at least one intertwiner".into()))?;
    let q = first.nrows();
    for (i, b) in intertwiners.iter().enumerate() {
        if b.shape() != (q, q) {
            return Err(Error::Dimension(format!(
                "intertwiner {i} is {}x{}, expected {q}x{q}",
                b.nrows(),
                b.ncols()
            )));
        }
    }
    let p = intertwiners.len();
    let mut w = CMatrix::zeros(p * q, p * q);
    for (i, b) in intertwiners.iter().enumerate() {
        w.view_mut((i * q, i * q), (q, q)).copy_from(b);
    }
    Ok(w)
}

/// One simple summand: p equivalent rank-q projectors, the class-coordinate
/// unitaries that straighten it, and the embedding back into the ambient
/// space.
#[derive(Debug, Clone)]
pub struct ClassDecomposition {
    pub p: usize,
    pub q: usize,
    /// Indices into the projector family, ascending.
    pub members: Vec<usize>,
    /// Orthonormal basis of the class subspace (dim_h × pq).
    pub isometry: CMatrix,
    /// Class-coordinate isometry with row blocks Rᵢ†S (pq × pq).
    pub v: CMatrix,
    /// Block-diagonal intertwiner unitary Σ |i⟩⟨i| ⊗ Bᵢ (pq × pq).
    pub w: CMatrix,
    /// Class unitary w·v (pq × pq).
    pub u: CMatrix,
    /// The q×q unitaries Bᵢ, one per member.
    pub intertwiners: Vec<CMatrix>,
    /// Σ of the member projectors; the unit of this summand.
    pub projector: CMatrix,
}

/// Result of the full decomposition: the closed algebra, the projector
/// family, the per-class data in canonical order, and the global unitary
/// that carries every algebra element to block form ⊕ₖ λₖ ⊗ 1_{qₖ}.
#[derive(Debug, Clone)]
pub struct WedderburnDecomposition {
    pub tol: Tolerance,
    pub basis: AlgebraBasis,
    pub family: ProjectorFamily,
    pub classes: Vec<ClassDecomposition>,
    pub global_u: CMatrix,
}

impl WedderburnDecomposition {
    pub fn dim_h(&self) -> usize {
        self.basis.dim_h()
    }

    /// Block structure [(p, q)] in canonical order: descending p, then
    /// descending q, ties broken by smallest member index.
    pub fn structure(&self) -> Vec<(usize, usize)> {
        self.classes.iter().map(|c| (c.p, c.q)).collect()
    }

    /// Starting row of each class block in the rotated basis.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.classes.len());
        let mut offset = 0;
        for c in &self.classes {
            out.push(offset);
            offset += c.p * c.q;
        }
        out
    }

    /// Collapse an algebra element to its block coefficients: conjugate by
    /// the global unitary and read the p×p matrix λ of each class block.
    ///
    /// `a` must lie in the algebra span, and the structured reconstruction
    /// ⊕ₖ λₖ ⊗ 1_{qₖ} must reproduce U a U† up to a relative tolerance;
    /// violating either is an error.
    pub fn collapse_element(&self, a: &CMatrix, tol: Tolerance) -> Result<Vec<CMatrix>> {
        let n = self.dim_h();
        if a.shape() != (n, n) {
            return Err(Error::Dimension(format!(
                "expected a {n}x{n} element, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        let scale = a.norm();
        let membership = self.basis.membership_residual(a)?;
        if membership > tol.floor(scale) {
            return Err(Error::Domain(format!(
                "element is not in the algebra: membership residual {membership:.3e} \
                 exceeds {:.3e}",
                tol.floor(scale)
            )));
        }
        let conj = &self.global_u * a * self.global_u.adjoint();
        let (lambdas, residual) = collapse_blocks(&conj, &self.structure())?;
        let allowed = tol.floor(scale);
        if residual > allowed {
            return Err(Error::Tolerance {
                context: "collapse-reconstruction",
                residual,
                allowed,
            });
        }
        Ok(lambdas)
    }

    /// Minimal projectors of each class in the order used to build the
    /// class isometry (ascending family index); member i of class k maps
    /// to the i-th multiplicity slab of block k under the global unitary.
    pub fn class_member_projectors(&self) -> Vec<Vec<CMatrix>> {
        self.classes
            .iter()
            .map(|c| {
                c.members
                    .iter()
                    .map(|&i| self.family.projectors()[i].clone())
                    .collect()
            })
            .collect()
    }

    /// Worst-case collapse residual over the whole algebra basis; the main
    /// quality figure of a decomposition.
    pub fn structure_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        let structure = self.structure();
        for a in self.basis.elements() {
            let conj = &self.global_u * a * self.global_u.adjoint();
            let (_, residual) = collapse_blocks(&conj, &structure)?;
            worst = worst.max(residual);
        }
        Ok(worst)
    }
}

/// Fit a block-diagonalized matrix to the structure ⊕ₖ λₖ ⊗ 1_{qₖ}:
/// returns the best-fit p×p coefficient matrices (entry λ_{ij} is the mean
/// diagonal of the (i,j) q×q subblock) and the Frobenius norm of what the
/// structure cannot absorb — off-block mass plus within-block deviation.
pub fn collapse_blocks(
    conj: &CMatrix,
    structure: &[(usize, usize)],
) -> Result<(Vec<CMatrix>, f64)> {
    let n = conj.nrows();
    if conj.ncols() != n {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            conj.nrows(),
            conj.ncols()
        )));
    }
    let total: usize = structure.iter().map(|&(p, q)| p * q).sum();
    if total != n {
        return Err(Error::Structural {
            stage: "collapse",
            detail: format!("structure blocks cover {total} dimensions, matrix has {n}"),
        });
    }
    let mut rebuilt = CMatrix::zeros(n, n);
    let mut lambdas = Vec::with_capacity(structure.len());
    let mut offset = 0;
    for &(p, q) in structure {
        let block = conj.view((offset, offset), (p * q, p * q)).into_owned();
        let mut lam = CMatrix::zeros(p, p);
        for i in 0..p {
            for j in 0..p {
                let sub = block.view((i * q, j * q), (q, q));
                lam[(i, j)] = sub.into_owned().trace() / q as f64;
            }
        }
        rebuilt
            .view_mut((offset, offset), (p * q, p * q))
            .copy_from(&lam.kronecker(&identity(q)));
        lambdas.push(lam);
        offset += p * q;
    }
    Ok((lambdas, (conj - rebuilt).norm()))
}

/// Full pipeline: close the generators into a *-algebra on ℂ^{dim_h},
/// refine the identity into minimal projectors, partition them into
/// equivalence classes, and assemble the global block-diagonalizing
/// unitary. An empty generator list yields the scalars and structure
/// [(1, dim_h)] with the identity as global unitary.
pub fn decompose(
    generators: &[CMatrix],
    dim_h: usize,
    tol: Tolerance,
) -> Result<WedderburnDecomposition> {
    tol.validate()?;
    let basis = close_unital_star_algebra(generators, dim_h, tol)?;
    let family = maximal_family(&basis, tol)?;
    let partition = partition_classes(&family, &basis, tol)?;
    let n = basis.dim_h();

    let mut raws = Vec::with_capacity(partition.len());
    for (k, class) in partition.classes().iter().enumerate() {
        let s = &partition.class_isometries()[k];
        let q = class_rank(class, &family, tol)?;
        let p = class.len();
        if partition.class_dims()[k] != p * q {
            return Err(Error::Structural {
                stage: "class-subspace",
                detail: format!(
                    "class {k} spans {} dimensions but holds {p} projectors of rank {q}",
                    partition.class_dims()[k]
                ),
            });
        }
        let v = build_isometry_v(class, &family, s, q, tol)?;
        let mut intertwiners = Vec::with_capacity(p);
        for i in 0..p {
            intertwiners.push(intertwiner_unitary(i, &v, s, q, &basis, tol)?);
        }
        let w = build_w(&intertwiners)?;
        let u = &w * &v;
        let mut projector = CMatrix::zeros(n, n);
        for &i in class {
            projector += &family.projectors()[i];
        }
        raws.push(ClassDecomposition {
            p,
            q,
            members: class.clone(),
            isometry: s.clone(),
            v,
            w,
            u,
            intertwiners,
            projector,
        });
    }

    raws.sort_by(|a, b| {
        (b.p, b.q)
            .cmp(&(a.p, a.q))
            .then(a.members[0].cmp(&b.members[0]))
    });

    let mut global_u = CMatrix::zeros(n, n);
    let mut offset = 0;
    for raw in &raws {
        let rows = raw.p * raw.q;
        if offset + rows > n {
            return Err(Error::Structural {
                stage: "assembly",
                detail: format!("class blocks overfill the space: {} > {n}", offset + rows),
            });
        }
        let embedded = &raw.u * raw.isometry.adjoint();
        global_u
            .view_mut((offset, 0), (rows, n))
            .copy_from(&embedded);
        offset += rows;
    }
    if offset != n {
        return Err(Error::Structural {
            stage: "assembly",
            detail: format!("class blocks cover {offset} of {n} dimensions"),
        });
    }

    let structure_dim: usize = raws.iter().map(|c| c.p * c.p).sum();
    if structure_dim != basis.dim() {
        return Err(Error::Structural {
            stage: "dimension-identity",
            detail: format!(
                "Σ p² = {structure_dim} does not match the algebra dimension {}",
                basis.dim()
            ),
        });
    }

    let unitarity = (&global_u * global_u.adjoint() - identity(n)).norm();
    let allowed = tol.floor(n as f64);
    if unitarity > allowed {
        return Err(Error::Tolerance {
            context: "global-unitarity",
            residual: unitarity,
            allowed,
        });
    }

    Ok(WedderburnDecomposition {
        tol,
        basis,
        family,
        classes: raws,
        global_u,
    })
}

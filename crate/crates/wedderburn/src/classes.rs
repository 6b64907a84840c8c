//! Equivalence classes of minimal projectors.
//!
//! Two minimal projectors are equivalent when Pᵢ𝒜Pⱼ ≠ 0; the algebra then
//! contains a partial isometry between their ranges. Scanning the basis for
//! the strongest compression ‖PᵢAPⱼ‖ decides each pair, and a union-find
//! merges the pairs into classes — one class per simple summand. Each class
//! also carries an orthonormal column basis of its total subspace
//! Σ_{i∈class} range(Pᵢ), used later to work in class coordinates.

use crate::algebra::AlgebraBasis;
use crate::error::{Error, Result};
use crate::matrix::{range_basis, CMatrix, Tolerance};
use crate::projectors::ProjectorFamily;

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Strongest coupling max_A ‖PᵢAPⱼ‖ over the algebra basis, for every
/// ordered pair. Both triangles are computed independently; the *-closure
/// of the algebra makes the result symmetric, which callers may check.
pub fn link_matrix(family: &ProjectorFamily, basis: &AlgebraBasis) -> Result<Vec<Vec<f64>>> {
    if family.dim_h() != basis.dim_h() {
        return Err(Error::Dimension(format!(
            "family acts on dimension {} but algebra on {}",
            family.dim_h(),
            basis.dim_h()
        )));
    }
    let ps = family.projectors();
    let f = ps.len();
    let mut strength = vec![vec![0.0f64; f]; f];
    for a in basis.elements() {
        for i in 0..f {
            let pa = &ps[i] * a;
            for (j, pj) in ps.iter().enumerate() {
                let s = (&pa * pj).norm();
                if s > strength[i][j] {
                    strength[i][j] = s;
                }
            }
        }
    }
    Ok(strength)
}

/// Whether Pᵢ𝒜Pⱼ ≠ 0 for the two given projectors.
pub fn are_linked(
    i: usize,
    j: usize,
    family: &ProjectorFamily,
    basis: &AlgebraBasis,
    tol: Tolerance,
) -> Result<bool> {
    let f = family.len();
    if i >= f || j >= f {
        return Err(Error::Domain(format!(
            "projector index out of range: family has {f} members"
        )));
    }
    let ps = family.projectors();
    let threshold = tol.floor(1.0);
    for a in basis.elements() {
        if (&ps[i] * a * &ps[j]).norm() > threshold {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Partition of a projector family into equivalence classes.
///
/// Classes hold ascending projector indices and are ordered by their
/// smallest member, so the output is deterministic for a fixed family.
/// Each class carries an isometry: the range bases of its projectors,
/// concatenated in index order, forming an orthonormal column basis of the
/// class subspace.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
    class_isometries: Vec<CMatrix>,
    class_dims: Vec<usize>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Orthonormal column bases of the class subspaces, in class order.
    pub fn class_isometries(&self) -> &[CMatrix] {
        &self.class_isometries
    }

    /// Dimension of each class subspace Σ_{i∈class} range(Pᵢ).
    pub fn class_dims(&self) -> &[usize] {
        &self.class_dims
    }

    /// Index of the class containing projector `i`.
    pub fn class_of(&self, i: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&i))
    }
}

/// Group the family by the linkage relation Pᵢ𝒜Pⱼ ≠ 0.
#[allow(clippy::needless_range_loop)]
pub fn partition_classes(
    family: &ProjectorFamily,
    basis: &AlgebraBasis,
    tol: Tolerance,
) -> Result<ClassPartition> {
    let strength = link_matrix(family, basis)?;
    let f = family.len();
    // ‖PᵢAPⱼ‖ and ‖PⱼAPᵢ‖ range over a basis that is not element-wise
    // *-closed, so the raw strengths differ; what must agree is the
    // linked/unlinked verdict of the two triangles.
    let threshold = tol.floor(1.0);
    let mut uf = UnionFind::new(f);
    for i in 0..f {
        for j in i + 1..f {
            let forward = strength[i][j] > threshold;
            let backward = strength[j][i] > threshold;
            if forward != backward {
                return Err(Error::Structural {
                    stage: "class-link",
                    detail: format!(
                        "link matrix is asymmetric at ({i},{j}): \
                         strengths {:.3e} vs {:.3e} straddle the threshold {threshold:.3e}",
                        strength[i][j], strength[j][i]
                    ),
                });
            }
            if forward {
                uf.union(i, j);
            }
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); f];
    for i in 0..f {
        let r = uf.find(i);
        by_root[r].push(i);
    }
    let mut classes: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
    classes.sort_by_key(|c| c[0]);

    let n = family.dim_h();
    let mut class_isometries = Vec::with_capacity(classes.len());
    let mut class_dims = Vec::with_capacity(classes.len());
    for class in &classes {
        let expected: usize = class.iter().map(|&i| family.ranks()[i]).sum();
        let mut s = CMatrix::zeros(n, expected);
        let mut col = 0;
        for &i in class {
            let b = range_basis(&family.projectors()[i], tol)?;
            if col + b.ncols() > expected {
                return Err(Error::Structural {
                    stage: "class-subspace",
                    detail: format!(
                        "range bases of class members exceed the expected \
                         dimension {expected}"
                    ),
                });
            }
            s.view_mut((0, col), (n, b.ncols())).copy_from(&b);
            col += b.ncols();
        }
        if col != expected {
            return Err(Error::Structural {
                stage: "class-subspace",
                detail: format!("class subspace has dimension {col}, expected {expected}"),
            });
        }
        class_isometries.push(s);
        class_dims.push(expected);
    }

    Ok(ClassPartition {
        classes,
        class_isometries,
        class_dims,
    })
}

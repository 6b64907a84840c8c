//! Closure of a generating set into a unital *-algebra, represented by an
//! orthonormal basis under the Hilbert–Schmidt inner product.

use crate::error::{Error, Result};
use crate::matrix::{extend_orthonormal, identity, CMatrix, Tolerance};

/// A unital *-algebra of operators on ℂ^{dim_h}, stored as an orthonormal
/// basis of its underlying vector space.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    dim_h: usize,
    elements: Vec<CMatrix>,
    contains_identity: bool,
}

impl AlgebraBasis {
    /// Dimension of the Hilbert space the algebra acts on.
    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    /// Linear dimension of the algebra.
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// The orthonormal basis elements.
    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    /// Whether the identity operator was certified to lie in the span.
    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    /// Distance from `m` to the span of the basis: ‖m − Σ ⟨bᵢ, m⟩ bᵢ‖.
    /// Zero (up to roundoff) exactly when `m` belongs to the algebra.
    pub fn membership_residual(&self, m: &CMatrix) -> Result<f64> {
        if m.shape() != (self.dim_h, self.dim_h) {
            return Err(Error::Dimension(format!(
                "algebra acts on {0}x{0} matrices, got {1}x{2}",
                self.dim_h,
                m.nrows(),
                m.ncols()
            )));
        }
        let mut v = m.clone();
        for _ in 0..2 {
            for b in &self.elements {
                let c = b.dotc(&v);
                for (x, y) in v.as_mut_slice().iter_mut().zip(b.as_slice()) {
                    *x -= c * *y;
                }
            }
        }
        Ok(v.norm())
    }
}

fn validate_generators(generators: &[CMatrix], dim_h: usize) -> Result<()> {
    if dim_h == 0 {
        return Err(Error::Domain(
            "the underlying space must have dimension at least 1".into(),
        ));
    }
    for (k, g) in generators.iter().enumerate() {
        if g.nrows() != g.ncols() {
            return Err(Error::Dimension(format!(
                "generator {k} is {}x{}, expected square",
                g.nrows(),
                g.ncols()
            )));
        }
        if g.nrows() != dim_h {
            return Err(Error::Dimension(format!(
                "generator {k} is {0}x{0} but the space has dimension {dim_h}",
                g.nrows()
            )));
        }
        if !g.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!(
                "generator {k} contains a non-finite entry"
            )));
        }
    }
    Ok(())
}

/// Close `generators` under identity, adjoints, products, and linear
/// combinations, returning an orthonormal basis of the resulting algebra
/// on ℂ^{dim_h}.
///
/// An empty generator list is legal and yields the scalars ℂ·1. The closure
/// iterates product rounds until the basis count is stable twice in a row:
/// each round multiplies pairs where at least one factor is new, and once a
/// round adds nothing a full all-pairs sweep re-confirms the fixpoint. The
/// basis dimension is capped by dim_h², so termination is guaranteed.
pub fn close_unital_star_algebra(
    generators: &[CMatrix],
    dim_h: usize,
    tol: Tolerance,
) -> Result<AlgebraBasis> {
    validate_generators(generators, dim_h)?;
    let n = dim_h;

    let mut seeds = Vec::with_capacity(2 * generators.len() + 1);
    seeds.push(identity(n));
    for g in generators {
        seeds.push(g.clone());
        seeds.push(g.adjoint());
    }
    let mut basis: Vec<CMatrix> = Vec::new();
    extend_orthonormal(&mut basis, seeds, tol);

    let cap_check = |len: usize| -> Result<()> {
        if len > n * n {
            return Err(Error::Structural {
                stage: "closure",
                detail: format!("basis dimension {len} exceeds the ambient bound {}", n * n),
            });
        }
        Ok(())
    };

    loop {
        // Product rounds over pairs involving at least one element added
        // since the last stable point.
        let mut new_start = 0;
        loop {
            let len = basis.len();
            cap_check(len)?;
            let mut products = Vec::new();
            for i in 0..len {
                for j in 0..len {
                    if i >= new_start || j >= new_start {
                        products.push(&basis[i] * &basis[j]);
                    }
                }
            }
            if extend_orthonormal(&mut basis, products, tol) == 0 {
                break;
            }
            new_start = len;
        }

        // Full all-pairs sweep; only a second consecutive round without
        // growth counts as the closure fixpoint.
        let len = basis.len();
        cap_check(len)?;
        let mut all = Vec::with_capacity(len * len);
        for i in 0..len {
            for j in 0..len {
                all.push(&basis[i] * &basis[j]);
            }
        }
        if extend_orthonormal(&mut basis, all, tol) == 0 {
            break;
        }
    }

    let mut out = AlgebraBasis {
        dim_h: n,
        elements: basis,
        contains_identity: false,
    };
    let id = identity(n);
    out.contains_identity = out.membership_residual(&id)? <= tol.floor(id.norm());
    Ok(out)
}

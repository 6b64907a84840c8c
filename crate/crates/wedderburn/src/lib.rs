//! Numerical Artin–Wedderburn decomposition of finite-dimensional
//! von Neumann algebras.
//!
//! Given a set of complex matrices, this crate closes them into a unital
//! *-algebra, finds a maximal family of minimal projectors, groups the
//! projectors into equivalence classes, and assembles a single unitary that
//! simultaneously block-diagonalizes every element of the algebra into the
//! canonical form ⊕ₖ L(ℂ^{pₖ}) ⊗ 1_{qₖ}.

pub mod algebra;
pub mod classes;
pub mod decompose;
pub mod error;
pub mod instances;
pub mod io;
pub mod matrix;
pub mod projectors;
pub mod verify;

pub use algebra::{close_unital_star_algebra, AlgebraBasis};
pub use classes::{are_linked, link_matrix, partition_classes, ClassPartition};
pub use decompose::{
    build_isometry_v, build_w, class_rank, collapse_blocks, decompose, intertwiner_unitary,
    ClassDecomposition, WedderburnDecomposition,
};
pub use error::{Error, Result};
pub use instances::{
    canonical_structure, generate_planted, named_instance, NamedInstance, PlantedInstance,
};
pub use matrix::{
    hermitian_spectral, hs_inner, identity, matrix_unit, orthonormalize, random_haar_unitary,
    range_basis, CMatrix, Tolerance,
};
pub use projectors::{
    maximal_family, projector_rank, proportionality_coefficient, refine_projector,
    FamilyCertificate, ProjectorFamily,
};
pub use verify::{verify_claim, verify_decomposition, VerificationReport};

//! A single Hermitian generator with distinct eigenvalues spans a maximal
//! commutative algebra: every block is 1×1 and the decomposition is a
//! simultaneous diagonalization.

use num_complex::Complex64;
use wedderburn::{decompose, CMatrix, Tolerance};

fn main() -> wedderburn::Result<()> {
    let n = 5;
    let g = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(1.0 + i as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });

    let d = decompose(std::slice::from_ref(&g), n, Tolerance::default())?;
    println!("structure {:?}", d.structure());
    println!(
        "{} singleton classes, family ranks {:?}",
        d.classes.len(),
        d.family.ranks()
    );

    let rotated = &d.global_u * &g * d.global_u.adjoint();
    let mut off_diag = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off_diag = off_diag.max(rotated[(i, j)].norm());
            }
        }
    }
    println!("largest off-diagonal entry of U g U†: {off_diag:.3e}");
    Ok(())
}

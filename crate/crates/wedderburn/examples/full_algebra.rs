//! The full matrix algebra L(ℂ³) generated from its matrix units: one
//! simple block (3, 1), algebra dimension 9, and a global unitary that is
//! unitary to machine precision.

use wedderburn::{decompose, identity, matrix_unit, Tolerance};

fn main() -> wedderburn::Result<()> {
    let n = 3;
    let mut generators = Vec::new();
    for i in 0..n {
        for j in 0..n {
            generators.push(matrix_unit(n, i, j));
        }
    }

    let d = decompose(&generators, n, Tolerance::default())?;
    println!("structure {:?}", d.structure());
    println!("algebra dimension {}", d.basis.dim());
    println!("projector family ranks {:?}", d.family.ranks());

    let u = &d.global_u;
    let defect = (u * u.adjoint() - identity(n)).norm();
    println!("‖U U† − 1‖ = {defect:.3e}");
    Ok(())
}

//! Collapse algebra elements onto their block coefficients: U a U† is a
//! direct sum ⊕ₖ λₖ ⊗ 1_{qₖ} and `collapse_element` reads off the λₖ.
//! Elements outside the algebra are rejected.

use wedderburn::{decompose, generate_planted, identity, matrix_unit, Tolerance};

fn main() -> wedderburn::Result<()> {
    let tol = Tolerance::default();
    let inst = generate_planted(&[(2, 2), (1, 3)], 2, 7)?;
    let n = inst.dim_h();
    let d = decompose(&inst.generators, n, tol)?;
    println!("structure {:?} on ℂ^{n}", d.structure());

    // The identity collapses to identity factors in every block.
    let blocks = d.collapse_element(&identity(n), tol)?;
    for (k, b) in blocks.iter().enumerate() {
        println!(
            "identity, block {k}: {}×{} with ‖λ − 1‖ = {:.3e}",
            b.nrows(),
            b.ncols(),
            (b - identity(b.nrows())).norm()
        );
    }

    // A product of generators stays in the algebra and collapses too.
    let word = &inst.generators[0] * &inst.generators[1];
    let blocks = d.collapse_element(&word, tol)?;
    println!(
        "generator product collapses to blocks of sizes {:?}",
        blocks.iter().map(|b| b.nrows()).collect::<Vec<_>>()
    );

    // A matrix unit of the ambient space is generically not in the algebra.
    match d.collapse_element(&matrix_unit(n, 0, 1), tol) {
        Err(e) => println!("ambient matrix unit rejected: {e}"),
        Ok(_) => println!("unexpected: ambient matrix unit was accepted"),
    }
    Ok(())
}

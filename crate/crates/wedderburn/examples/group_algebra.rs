//! Isotypic decomposition of the regular representation of S₃.
//!
//! The permutation matrices of a transposition and a 3-cycle generate the
//! full group algebra ℂ[S₃] on ℂ⁶; its blocks are the trivial and sign
//! characters plus the 2-dimensional standard representation appearing
//! with multiplicity 2.

use wedderburn::{decompose, named_instance, Tolerance};

fn main() -> wedderburn::Result<()> {
    let tol = Tolerance::default();
    let inst = named_instance("s3_regular")?;
    let d = decompose(&inst.generators, inst.dim_h, tol)?;

    println!("blocks of ℂ[S₃] acting on itself:");
    for c in &d.classes {
        println!("  L(ℂ^{}) ⊗ 1_{}  (projector members {:?})", c.p, c.q, c.members);
    }
    println!("dimension identity: {} = 4 + 1 + 1", d.basis.dim());

    // Collapsing a group element shows its action on each irreducible:
    // blocks of size pₖ × pₖ, the multiplicity already stripped off.
    let transposition = &inst.generators[0];
    let blocks = d.collapse_element(transposition, tol)?;
    for (k, b) in blocks.iter().enumerate() {
        println!("block {k} of the transposition:");
        for i in 0..b.nrows() {
            let row: Vec<String> = (0..b.ncols())
                .map(|j| format!("{:+.3}{:+.3}i", b[(i, j)].re, b[(i, j)].im))
                .collect();
            println!("    [{}]", row.join(", "));
        }
    }
    Ok(())
}

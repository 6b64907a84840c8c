//! The refinement loop that discovers minimal projectors, run by hand:
//! start from {1}, split any projector whose compressed algebra is larger
//! than its scalar multiples, and stop when every piece is minimal.

use wedderburn::{
    close_unital_star_algebra, identity, maximal_family, refine_projector, Tolerance,
};

fn main() -> wedderburn::Result<()> {
    let tol = Tolerance::default();
    let inst = wedderburn::named_instance("s3_regular")?;
    let basis = close_unital_star_algebra(&inst.generators, inst.dim_h, tol)?;
    println!("closed algebra has dimension {}", basis.dim());

    // One manual refinement step on the identity.
    let one = identity(inst.dim_h);
    match refine_projector(&one, &basis, tol)? {
        Some(children) => {
            println!("1 splits into {} orthogonal pieces:", children.len());
            for c in &children {
                println!("  rank {}", c.trace().re.round() as usize);
            }
        }
        None => println!("1 is already minimal (the algebra is the scalars)"),
    }

    // The driver iterates this to a fixpoint.
    let family = maximal_family(&basis, tol)?;
    println!(
        "maximal family: {} projectors with ranks {:?}",
        family.len(),
        family.ranks()
    );

    let cert = family.certificate(&basis, tol)?;
    println!("certificate (all Frobenius defects):");
    println!("  hermiticity   {:.3e}", cert.hermiticity);
    println!("  idempotency   {:.3e}", cert.idempotency);
    println!("  orthogonality {:.3e}", cert.orthogonality);
    println!("  completeness  {:.3e}", cert.completeness);
    println!("  minimality    {:.3e}", cert.minimality);
    println!("  membership    {:.3e}", cert.membership);
    Ok(())
}

//! Pure Coulomb branch of a torus: the Laurent/polynomial ring with no relations.

use coulomb_algebra::{Coulomb, CoulombProblem};

fn main() -> coulomb_algebra::Result<()> {
    for rank in 1..=2 {
        let c = Coulomb::new(&CoulombProblem::torus(rank, vec![])?)?;
        let p = c.pure_branch()?;
        println!("T^{rank}: {p}");
        println!("  variables: {}", c.table().names().collect::<Vec<_>>().join(", "));
    }
    Ok(())
}

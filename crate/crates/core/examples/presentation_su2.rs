//! Weyl-invariant presentation for SU(2) with its standard representation.

use coulomb_algebra::{Coulomb, CoulombProblem};

fn main() -> coulomb_algebra::Result<()> {
    let c = Coulomb::new(&CoulombProblem::new(0, 1, vec![vec![1], vec![-1]])?)?;
    let gens = c.default_generators(1)?;
    for (n, g) in &gens {
        println!("{n} = {g}");
    }
    let p = c.matter_presentation(&gens)?;
    println!("{p}");
    for (n, g) in &p.generators {
        println!("  {n} = {g}");
    }
    for r in p.relation_strings() {
        println!("  0 = {r}");
    }
    Ok(())
}

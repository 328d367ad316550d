//! Relation ideal of U(1) with weights 1, -1: xy = mu^2 - tau^2.

use coulomb_algebra::{Coulomb, CoulombProblem, Frac};

fn main() -> coulomb_algebra::Result<()> {
    let c = Coulomb::new(&CoulombProblem::torus(1, vec![vec![1], vec![-1]])?)?;
    let gens: Vec<(String, Frac)> = [("x", "z*(mu - tau)"), ("y", "z^-1*(mu + tau)"), ("mu", "mu"), ("tau", "tau")]
        .iter()
        .map(|(n, e)| Ok((n.to_string(), c.parse(e)?)))
        .collect::<coulomb_algebra::Result<_>>()?;
    let p = c.matter_presentation(&gens)?;
    println!("{p}");
    for r in p.relation_strings() {
        println!("  {r}");
    }

    // the wider window gives a bigger but equivalent presentation
    let p2 = c.matter_presentation(&c.abelian_matter_generators(2)?)?;
    println!("degree 2: {} generators, {} relations", p2.generators.len(), p2.relation_strings().len());
    Ok(())
}

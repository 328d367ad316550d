//! Fiber over mu = 0 and its compatibility with elimination.

use coulomb_algebra::coulomb::{at_mu_zero, mu_zero_fiber};
use coulomb_algebra::groebner::{buchberger, ring_map_kernel, same_ideal, MonomialOrder};
use coulomb_algebra::{Coulomb, CoulombProblem, Frac};

fn main() -> coulomb_algebra::Result<()> {
    let c = Coulomb::new(&CoulombProblem::torus(1, vec![vec![1], vec![-1]])?)?;
    let pres = c.matter_presentation(&c.abelian_matter_generators(1)?)?;
    let fiber = mu_zero_fiber(&pres)?;
    println!("{pres}");
    println!("mu = 0: {fiber}");

    let images: Vec<(String, Frac)> = pres
        .generators
        .iter()
        .filter(|(n, _)| n != "mu")
        .map(|(n, g)| Ok((n.clone(), at_mu_zero(g)?)))
        .collect::<coulomb_algebra::Result<_>>()?;
    let direct = ring_map_kernel(&images, &[])?;
    let a = buchberger(&direct, MonomialOrder::GrevLex);
    let b = buchberger(&fiber.relations, MonomialOrder::GrevLex);
    println!("substitute then eliminate agrees: {}", same_ideal(&a, &b));
    Ok(())
}

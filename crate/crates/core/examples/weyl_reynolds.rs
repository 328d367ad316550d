//! Weyl group action and the Reynolds operator on the blowup ring.

use coulomb_algebra::{Coulomb, CoulombProblem};

fn main() -> coulomb_algebra::Result<()> {
    let c = Coulomb::new(&CoulombProblem::new(0, 1, vec![vec![1], vec![-1]])?)?;
    let w = &c.weyl_generators()[0];
    for x in ["z", "tau", "u", "mu"] {
        println!("w({x}) = {}", c.apply(w, &c.parse(x)?)?);
    }
    for x in ["z", "tau", "u", "tau^2", "tau*(z - z^-1)"] {
        let f = c.parse(x)?;
        let r = c.reynolds(&f)?;
        println!("R({x}) = {r}   invariant: {}", c.is_weyl_invariant(&f)?);
    }
    println!("tau^2 in the Toda base: {}", c.toda_base_membership(&c.parse("tau^2")?)?);

    let big = Coulomb::new(&CoulombProblem::new(1, 2, vec![])?)?;
    println!("|W| for U(1) x SU(2)^2: {}", big.weyl_group().len());
    Ok(())
}

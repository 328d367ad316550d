//! Generators of an abelian matter branch in a degree window.

use coulomb_algebra::{Coulomb, CoulombProblem};

fn main() -> coulomb_algebra::Result<()> {
    let cases = [
        ("U(1), weights 1, -1", CoulombProblem::torus(1, vec![vec![1], vec![-1]])?),
        ("U(1), weight 2", CoulombProblem::torus(1, vec![vec![2]])?),
        ("T^2, weights (1,0), (1,1)", CoulombProblem::torus(2, vec![vec![1, 0], vec![1, 1]])?),
    ];
    for (label, p) in cases {
        let c = Coulomb::new(&p)?;
        println!("{label}");
        for (name, g) in c.abelian_matter_generators(2)? {
            println!("  {name} = {g}");
        }
    }
    Ok(())
}

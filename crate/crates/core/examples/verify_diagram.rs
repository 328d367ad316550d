//! Commutative diagram check on the default generators.

use coulomb_algebra::{Coulomb, CoulombProblem, ShModel};

fn main() -> coulomb_algebra::Result<()> {
    let problems = [
        CoulombProblem::torus(1, vec![vec![1], vec![-1]])?,
        CoulombProblem::new(0, 1, vec![vec![1], vec![-1]])?,
        CoulombProblem::torus(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]])?,
    ];
    for p in problems {
        let c = Coulomb::new(&p)?;
        let sh = ShModel::new(&p)?;
        let report = sh.verify_diagram(&c, &c.default_generators(1)?)?;
        println!("weights {:?}\n{report}\n", p.weights);
    }
    Ok(())
}

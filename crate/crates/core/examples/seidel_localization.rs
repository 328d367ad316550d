//! Seidel operators psi_nu = mu + <nu, eta> and the localization at s_Delta.

use coulomb_algebra::{CoulombProblem, ShModel};

fn main() -> coulomb_algebra::Result<()> {
    let sh = ShModel::new(&CoulombProblem::torus(1, vec![vec![1], vec![-1]])?)?;
    for nu in [[1], [0], [-1]] {
        println!("psi{nu:?} = {}", sh.seidel_operator(&nu)?);
    }
    println!("s_Delta = {}", sh.diagonal_seidel());
    for (p, cof) in sh.localization_witnesses()? {
        println!("({p}) * ({cof}) = s_Delta");
    }

    let t2 = ShModel::new(&CoulombProblem::torus(2, vec![vec![1, 1], vec![2, -1], vec![1, 1]])?)?;
    println!("T^2: s_Delta = {}", t2.diagonal_seidel());
    println!("inverted: {:?}", t2.inverted().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    Ok(())
}

//! Euler sections z_i -> prod psi_nu^{nu_i} for a few representations.

use coulomb_algebra::print::print_canonical;
use coulomb_algebra::{Coulomb, CoulombProblem};

fn show(label: &str, p: CoulombProblem) -> coulomb_algebra::Result<()> {
    let c = Coulomb::new(&p)?;
    let s = c.euler_section()?;
    println!("{label}");
    for (i, e) in s.entries.iter().enumerate() {
        println!("  {} -> {}", c.problem().z_name(i), print_canonical(e));
    }
    Ok(())
}

fn main() -> coulomb_algebra::Result<()> {
    show("U(1), weights 1, -1", CoulombProblem::torus(1, vec![vec![1], vec![-1]])?)?;
    show("U(1), weight 1", CoulombProblem::torus(1, vec![vec![1]])?)?;
    show("T^2, weights (1,-2), (0,1)", CoulombProblem::torus(2, vec![vec![1, -2], vec![0, 1]])?)?;
    show("SU(2), standard", CoulombProblem::new(0, 1, vec![vec![1], vec![-1]])?)?;
    Ok(())
}

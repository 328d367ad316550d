//! Affine blowup for SU(2): u = (z - 1)/tau, with the derived v = u/z.

use coulomb_algebra::{Coulomb, CoulombProblem};

fn main() -> coulomb_algebra::Result<()> {
    let c = Coulomb::new(&CoulombProblem::new(0, 1, vec![vec![1], vec![-1]])?)?;
    let b = c.blowup_presentation()?;
    println!("{b}");
    for r in b.relation_strings() {
        println!("relation: {r} = 0");
    }
    for (name, f) in &b.derived {
        println!("{name} = {f}");
    }

    // tau*u normalizes back to z - 1
    let f = c.parse("tau*u")?;
    println!("tau*u -> {}", c.normal_form(&f)?);
    let g = c.parse("(z - 1)/tau")?;
    println!("(z - 1)/tau -> {}", c.normal_form(&g)?);

    let two = Coulomb::new(&CoulombProblem::new(0, 2, vec![])?)?;
    println!("SU(2)^2: {}", two.blowup_presentation()?);
    Ok(())
}

//! Translation automorphism eps+ and its inverse.

use coulomb_algebra::{Coulomb, CoulombProblem};

fn main() -> coulomb_algebra::Result<()> {
    let c = Coulomb::new(&CoulombProblem::torus(1, vec![vec![1], vec![-1]])?)?;
    for x in ["z", "z^-1", "z*(mu - tau)", "z^2*(mu - tau)^2"] {
        let f = c.parse(x)?;
        let t = c.translate(&f)?;
        let back = c.apply(c.epsilon_plus_inverse(), &t)?;
        println!("eps+({x}) = {t}   back: {back}");
    }

    let s = Coulomb::new(&CoulombProblem::new(0, 1, vec![vec![1], vec![-1]])?)?;
    for x in ["u", "mu*u - z", "mu*u*v - u - v"] {
        println!("SU(2): eps+({x}) = {}", s.translate(&s.parse(x)?)?);
    }
    Ok(())
}

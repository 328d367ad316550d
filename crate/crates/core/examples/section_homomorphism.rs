//! Section homomorphism into localized cohomology and the acceleration test.

use coulomb_algebra::{Coulomb, CoulombProblem, ShModel};

fn run(c: &Coulomb, items: &[&str]) -> coulomb_algebra::Result<()> {
    let sh = ShModel::new(c.problem())?;
    for x in items {
        let f = c.parse(x)?;
        let img = sh.section_homomorphism(c, &f)?;
        let member = c.matter_membership(&f)?.is_member();
        println!("S({x}) = {img}   accelerated: {}  member: {member}", ShModel::acceleration_membership(&img));
    }
    Ok(())
}

fn main() -> coulomb_algebra::Result<()> {
    let u1 = Coulomb::new(&CoulombProblem::torus(1, vec![vec![1], vec![-1]])?)?;
    run(&u1, &["z*(mu - tau)", "z^-1*(mu + tau)", "z", "tau"])?;
    // components in different z-degrees can cancel after the section
    run(&u1, &["(mu - tau)*z^2 - 2*tau*z"])?;

    let su2 = Coulomb::new(&CoulombProblem::new(0, 1, vec![vec![1], vec![-1]])?)?;
    run(&su2, &["mu*u - z", "mu*v - z^-1", "mu*u*v - u - v", "u"])?;
    Ok(())
}

//! Matter Coulomb branch membership: translate and check for poles.

use coulomb_algebra::{Coulomb, CoulombProblem, Membership};

fn report(c: &Coulomb, x: &str) -> coulomb_algebra::Result<()> {
    match c.matter_membership(&c.parse(x)?)? {
        Membership::Member { translated } => println!("{x}: member, eps+ = {translated}"),
        Membership::NotMember { factor, required, .. } => {
            println!("{x}: not a member, needs ({factor})^{required}")
        }
    }
    Ok(())
}

fn main() -> coulomb_algebra::Result<()> {
    let c = Coulomb::new(&CoulombProblem::torus(1, vec![vec![1], vec![-1]])?)?;
    for x in ["z*(mu - tau)", "z^-1*(mu + tau)", "z", "z^2*(mu - tau)", "1/(mu - tau)"] {
        report(&c, x)?;
    }

    // divisibility and Groebner regularity give the same verdict
    let f = c.parse("z^2*(mu - tau)^2 + tau*z^-1*(mu + tau)")?;
    println!(
        "divisibility {}, groebner {}",
        c.membership_by_divisibility(&f)?.is_member(),
        c.membership_by_groebner(&f)?.is_member()
    );

    let s = Coulomb::new(&CoulombProblem::new(0, 1, vec![vec![1], vec![-1]])?)?;
    for x in ["mu*u - z", "mu*v - z^-1", "mu*u*v - u - v", "u", "z"] {
        report(&s, x)?;
    }
    Ok(())
}

//! Expression grammar and the canonical printer.

use coulomb_algebra::parse::parse_ast;
use coulomb_algebra::print::print_canonical;
use coulomb_algebra::{Coulomb, CoulombProblem};

fn main() -> coulomb_algebra::Result<()> {
    let c = Coulomb::new(&CoulombProblem::torus(1, vec![vec![1], vec![-1]])?)?;
    for s in ["z*(mu - tau)", "(z^2 - 3/4*tau)/(mu - tau)^2", "-(mu + tau)^3 / (mu + tau)", "0", "2^-1*z^-2"] {
        let f = c.parse(s)?;
        let text = print_canonical(&f);
        println!("{s:>32}  ->  {text}");
        assert_eq!(c.parse(&text)?, f);
    }
    println!("{:?}", parse_ast("x^2 - 2*y/3")?);

    for bad in ["1/(z + tau)", "z^(1/2)", "q + 1", "(mu"] {
        println!("{bad}: {}", c.parse(bad).unwrap_err());
    }
    Ok(())
}

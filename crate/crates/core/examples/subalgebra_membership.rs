//! Subalgebra membership with an explicit witness polynomial.

use coulomb_algebra::groebner::{SubalgebraMembership, SubalgebraTester};
use coulomb_algebra::parse::parse_expression;
use coulomb_algebra::{FactorSet, Frac, Poly, VarTable};

fn main() -> coulomb_algebra::Result<()> {
    let t = VarTable::new([("z", true), ("mu", false), ("tau", false)])?;
    let fs = FactorSet::new(&t, [Poly::named(&t, "mu") - Poly::named(&t, "tau")])?;
    let e = |s: &str| parse_expression(s, &fs);
    let gens: Vec<(String, Frac)> = vec![
        ("x".into(), e("z*(mu - tau)")?),
        ("y".into(), e("z^-1*(mu + tau)")?),
        ("mu".into(), e("mu")?),
        ("tau".into(), e("tau")?),
    ];
    let tester = SubalgebraTester::new(&gens, &[])?;
    for q in ["z^2*(mu - tau)^2", "mu^2 - tau^2 + z*(mu - tau)*tau", "z", "z*(mu + tau)"] {
        let f = e(q)?;
        match tester.test(&f)? {
            SubalgebraMembership::Expressible(w) => {
                println!("{q} = {w}   (checked: {})", tester.verify(&f, &w)?)
            }
            SubalgebraMembership::NotMember(nf) => println!("{q}: not in the subalgebra, remainder {nf}"),
        }
    }
    Ok(())
}

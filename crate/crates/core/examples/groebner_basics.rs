//! Reduced Gröbner bases, normal forms and elimination.

use coulomb_algebra::groebner::{buchberger, eliminate, normal_form, Ideal, MonomialOrder};
use coulomb_algebra::parse::parse_expression;
use coulomb_algebra::{FactorSet, Poly, VarTable};

fn main() -> coulomb_algebra::Result<()> {
    let t = VarTable::polynomial(["x", "y", "z"])?;
    let fs = FactorSet::empty(&t);
    let p = |s: &str| -> coulomb_algebra::Result<Poly> { Ok(parse_expression(s, &fs)?.numerator().clone()) };

    let ideal = Ideal::new(&t, [p("x^2 - y")?, p("x*y - z")?])?;
    for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
        let gb = buchberger(&ideal, order);
        let basis: Vec<String> = gb.basis().iter().map(|g| g.to_string()).collect();
        println!("{order:?}: {}", basis.join(", "));
        println!("  x^3 - z reduces to {}", normal_form(&p("x^3 - z")?, &gb));
        println!("  y^3 - z^2 in ideal: {}", gb.contains(&p("y^3 - z^2")?));
    }
    let elim: Vec<String> = eliminate(&ideal, 1).iter().map(|g| g.to_string()).collect();
    println!("eliminating x: {}", elim.join(", "));
    Ok(())
}

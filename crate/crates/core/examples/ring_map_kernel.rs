//! Kernel of a ring map given by the images of tag variables.

use coulomb_algebra::groebner::ring_map_kernel;
use coulomb_algebra::parse::parse_expression;
use coulomb_algebra::{FactorSet, Frac, VarTable};

fn main() -> coulomb_algebra::Result<()> {
    let t = VarTable::new([("s", false), ("t", false)])?;
    let fs = FactorSet::empty(&t);
    let e = |s: &str| parse_expression(s, &fs);

    // twisted cubic
    let images: Vec<(String, Frac)> =
        vec![("a".into(), e("s")?), ("b".into(), e("s^2")?), ("c".into(), e("s^3")?)];
    let k = ring_map_kernel(&images, &[])?;
    println!("kernel of (s, s^2, s^3):");
    for g in k.generators() {
        println!("  {g}");
    }

    let images: Vec<(String, Frac)> =
        vec![("x".into(), e("s^2")?), ("y".into(), e("s*t")?), ("w".into(), e("t^2")?)];
    let k = ring_map_kernel(&images, &[])?;
    println!("kernel of (s^2, st, t^2):");
    for g in k.generators() {
        println!("  {g}");
    }
    Ok(())
}

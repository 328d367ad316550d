//! Problem files and the JSON element format.

use coulomb_algebra::io::{element_from_json_str, element_to_json_string, ProblemFile};
use coulomb_algebra::Coulomb;

const PROBLEM: &str = r#"
torus_rank = 1
weights = [[1], [-1]]
degree = 1

[[generator]]
name = "x"
expr = "z*(mu - tau)"

[[generator]]
name = "y"
expr = "z^-1*(mu + tau)"
"#;

fn main() -> coulomb_algebra::Result<()> {
    let file = ProblemFile::from_toml(PROBLEM)?;
    let c = Coulomb::new(&file.problem()?)?;
    for (n, g) in file.parse_generators(&c)?.unwrap_or_default() {
        println!("{n} = {g}");
    }
    print!("{}", file.to_toml());

    let f = c.parse("(z^2 - 3/4*tau)/(mu - tau)")?;
    let json = element_to_json_string(&f);
    println!("{json}");
    assert_eq!(element_from_json_str(&json)?, f);
    Ok(())
}

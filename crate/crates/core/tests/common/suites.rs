//! Randomized property suites shared by the integration tests and the
//! acceptance runner. Each returns the number of cases checked or the first
//! failure.

use coulomb_algebra::coulomb::Coulomb;
use coulomb_algebra::{CoulombProblem, Frac};
use rand::Rng;

use super::*;

pub type Outcome = Result<usize, String>;

fn fail<T: std::fmt::Display>(what: &str, f: T) -> String {
    format!("{what}: {f}")
}

pub fn su2_problems() -> Vec<CoulombProblem> {
    vec![
        su2_standard(),
        CoulombProblem::new(0, 1, vec![vec![2], vec![-2]]).unwrap(),
        CoulombProblem::new(0, 1, vec![]).unwrap(),
        CoulombProblem::new(1, 1, vec![vec![1, 1], vec![1, -1]]).unwrap(),
    ]
}

fn random_element(rng: &mut TestRng, c: &Coulomb) -> Frac {
    if c.problem().is_abelian() {
        random_abelian_element(rng, c, 0.5)
    } else {
        random_blowup_element(rng, c, true)
    }
}

fn pick(rng: &mut TestRng) -> Coulomb {
    if rng.gen_bool(0.6) {
        Coulomb::new(&random_abelian_problem(rng)).unwrap()
    } else {
        let ps = su2_problems();
        Coulomb::new(&ps[rng.gen_range(0..ps.len())]).unwrap()
    }
}

/// `eps(fg) = eps(f) eps(g)`, `eps(f + g) = eps(f) + eps(g)` and
/// `eps^-1(eps(f)) = f`.
pub fn eplus_automorphism(seed: u64, cases: usize) -> Outcome {
    let mut rng = rng(seed);
    for _ in 0..cases {
        let c = pick(&mut rng);
        let f = random_element(&mut rng, &c);
        let g = random_element(&mut rng, &c);
        let e = c.epsilon_plus();
        let ef = c.apply(e, &f).map_err(|x| fail("eps(f)", x))?;
        let eg = c.apply(e, &g).map_err(|x| fail("eps(g)", x))?;
        let efg = c.apply(e, &c.mul(&f, &g).unwrap()).unwrap();
        if !c.equal(&efg, &c.mul(&ef, &eg).unwrap()).unwrap() {
            return Err(format!("not multiplicative on {f} and {g}"));
        }
        let sum = c.apply(e, &f.try_add(&g).unwrap()).unwrap();
        if !c.equal(&sum, &ef.try_add(&eg).unwrap()).unwrap() {
            return Err(format!("not additive on {f} and {g}"));
        }
        let back = c.apply(c.epsilon_plus_inverse(), &ef).unwrap();
        if !c.equal(&back, &f).unwrap() {
            return Err(format!("inverse fails on {f}"));
        }
        let forth = c.apply(e, &c.apply(c.epsilon_plus_inverse(), &f).unwrap()).unwrap();
        if !c.equal(&forth, &f).unwrap() {
            return Err(format!("inverse fails on the other side for {f}"));
        }
    }
    Ok(cases)
}

/// `w . eps . w = eps` on the ambient variables and on random elements.
pub fn weyl_equivariance(seed: u64, cases: usize) -> Outcome {
    let mut rng = rng(seed);
    let problems = su2_problems();
    for _ in 0..cases {
        let c = Coulomb::new(&problems[rng.gen_range(0..problems.len())]).unwrap();
        let f = random_blowup_element(&mut rng, &c, true);
        let mut probes: Vec<Frac> = (0..c.table().len()).map(|i| c.ambient().var(i)).collect();
        probes.push(f);
        for w in c.weyl_generators() {
            for x in &probes {
                let lhs = c.apply(w, &c.apply(c.epsilon_plus(), &c.apply(w, x).unwrap()).unwrap()).unwrap();
                let rhs = c.apply(c.epsilon_plus(), x).unwrap();
                if !c.equal(&lhs, &rhs).unwrap() {
                    return Err(format!("w eps w differs from eps on {x}"));
                }
            }
        }
    }
    Ok(cases)
}

/// Reynolds is idempotent, lands in the invariants and fixes invariants.
pub fn reynolds(seed: u64, cases: usize) -> Outcome {
    let mut rng = rng(seed);
    let problems = su2_problems();
    for _ in 0..cases {
        let c = Coulomb::new(&problems[rng.gen_range(0..problems.len())]).unwrap();
        let f = random_blowup_element(&mut rng, &c, true);
        let r = c.reynolds(&f).unwrap();
        if !c.equal(&c.reynolds(&r).unwrap(), &r).unwrap() {
            return Err(format!("not idempotent on {f}"));
        }
        for w in c.weyl_group() {
            if !c.equal(&c.apply(w, &r).unwrap(), &r).unwrap() {
                return Err(format!("R({f}) is not invariant"));
            }
        }
        // f + w(f) is invariant by construction
        let mut inv = f.clone();
        for w in c.weyl_group().iter().skip(1) {
            inv = inv.try_add(&c.apply(w, &f).unwrap()).unwrap();
        }
        let inv = c.normal_form(&inv).unwrap();
        if !c.equal(&c.reynolds(&inv).unwrap(), &inv).unwrap() {
            return Err(format!("R moves the invariant {inv}"));
        }
    }
    Ok(cases)
}

/// Sums and products of members are members.
pub fn member_closure(seed: u64, cases: usize) -> Outcome {
    let mut rng = rng(seed);
    let problems = su2_problems();
    for i in 0..cases {
        let (c, f, g) = if i % 2 == 0 {
            let c = Coulomb::new(&random_abelian_problem(&mut rng)).unwrap();
            let f = random_abelian_element_within(&mut rng, &c, 1.0, 2);
            let g = random_abelian_element_within(&mut rng, &c, 1.0, 2);
            (c, f, g)
        } else {
            let c = Coulomb::new(&problems[rng.gen_range(0..problems.len())]).unwrap();
            let gens = c.default_generators(1).unwrap();
            let f = random_member(&mut rng, &c, &gens);
            let g = random_member(&mut rng, &c, &gens);
            (c, f, g)
        };
        for (what, x) in [("f", &f), ("g", &g)] {
            if !c.matter_membership(x).unwrap().is_member() {
                return Err(format!("generated {what} = {x} is not a member"));
            }
        }
        let s = c.normal_form(&f.try_add(&g).unwrap()).unwrap();
        let p = c.mul(&f, &g).unwrap();
        if !c.matter_membership(&s).unwrap().is_member() {
            return Err(format!("sum of members {f} and {g} is not a member"));
        }
        if !c.matter_membership(&p).unwrap().is_member() {
            return Err(format!("product of members {f} and {g} is not a member"));
        }
    }
    Ok(cases)
}

/// Translate computed component by component on the test side:
/// `z^m c_m -> z^m c_m prod psi_nu^{<nu, m>}`, regular iff every piece is.
pub fn regular_after_translation(c: &Coulomb, f: &Frac) -> bool {
    if !f.is_polynomial() {
        return false;
    }
    let a = c.ambient();
    for (m, cm) in f.numerator().split_by(&a.z) {
        let mut piece = Frac::from_poly(c.factors(), cm);
        for nu in &c.problem().weights {
            let pairing: i32 = nu.iter().zip(&m).map(|(x, y)| x * y).sum();
            let psi = Frac::from_poly(c.factors(), a.psi_poly(nu));
            piece = piece.try_mul(&psi.pow(pairing).unwrap()).unwrap();
        }
        if !piece.is_polynomial() {
            return false;
        }
    }
    true
}

/// Divisibility criterion, Gröbner regularity test and the test-side
/// translation agree.
pub fn oracle_equivalence(seed: u64, cases: usize) -> Outcome {
    let mut rng = rng(seed);
    let mut members = 0;
    for _ in 0..cases {
        let c = Coulomb::new(&random_abelian_problem(&mut rng)).unwrap();
        let f = random_abelian_element(&mut rng, &c, 0.5);
        let d = c.membership_by_divisibility(&f).unwrap();
        let g = c.membership_by_groebner(&f).unwrap();
        let o = regular_after_translation(&c, &f);
        if d.is_member() != g.is_member() || d.is_member() != o {
            return Err(format!(
                "disagreement on {f} for weights {:?}: divisibility {}, groebner {}, oracle {o}",
                c.problem().weights,
                d.is_member(),
                g.is_member()
            ));
        }
        members += d.is_member() as usize;
    }
    if members == 0 || members == cases {
        return Err(format!("degenerate sample: {members} members of {cases}"));
    }
    Ok(cases)
}

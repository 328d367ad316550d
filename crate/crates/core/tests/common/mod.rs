#![allow(dead_code)]

pub mod suites;

use std::sync::Arc;

use coulomb_algebra::coulomb::Coulomb;
use coulomb_algebra::poly::{Monomial, Poly, Rational, VarTable};
use coulomb_algebra::{CoulombProblem, Frac};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn coef(rng: &mut TestRng, height: i64) -> Rational {
    loop {
        let c = rng.gen_range(-height..=height);
        if c != 0 {
            return q(c);
        }
    }
}

/// Evaluates a polynomial at a point, term by term.
pub fn eval_poly(p: &Poly, point: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (x, &e) in point.iter().zip(&m.0) {
            if e >= 0 {
                t *= num_traits::pow(x.clone(), e as usize);
            } else {
                t /= num_traits::pow(x.clone(), (-e) as usize);
            }
        }
        acc += t;
    }
    acc
}

/// Value of a fraction at a point, `None` on a pole.
pub fn eval_frac(f: &Frac, point: &[Rational]) -> Option<Rational> {
    let fs = f.factor_set();
    let mut den = Rational::one();
    for &(i, k) in f.denominator() {
        den *= num_traits::pow(eval_poly(fs.factor(i), point), k as usize);
    }
    if den.is_zero() {
        return None;
    }
    Some(eval_poly(f.numerator(), point) / den)
}

/// Random point with small nonzero rational coordinates.
pub fn random_point(rng: &mut TestRng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let num = coef(rng, 23);
            let den = rng.gen_range(1..=7);
            num / q(den)
        })
        .collect()
}

/// Random polynomial over `vars` with exponents in the given ranges.
pub fn random_poly(
    rng: &mut TestRng,
    table: &Arc<VarTable>,
    vars: &[(usize, i32, i32)],
    max_terms: usize,
    height: i64,
) -> Poly {
    let n = rng.gen_range(1..=max_terms);
    let terms = (0..n).map(|_| {
        let mut e = vec![0; table.len()];
        for &(v, lo, hi) in vars {
            e[v] = rng.gen_range(lo..=hi);
        }
        (Monomial(e), coef(rng, height))
    });
    Poly::from_terms(table, terms.collect::<Vec<_>>()).unwrap()
}

/// Random abelian problem: rank at most 2, up to 4 weights in [-2, 2].
pub fn random_abelian_problem(rng: &mut TestRng) -> CoulombProblem {
    let r = rng.gen_range(1..=2);
    let n = rng.gen_range(1..=4);
    let weights = (0..n).map(|_| (0..r).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    CoulombProblem::torus(r, weights).unwrap()
}

/// Product `prod_{<nu,m> < 0} psi_nu^{-<nu,m>}`, built from the weights
/// directly rather than through the library's generator code.
pub fn clearing_product(c: &Coulomb, m: &[i32]) -> Poly {
    let a = c.ambient();
    let t = c.table();
    let mut p = Poly::one(t);
    for nu in &c.problem().weights {
        let pairing: i32 = nu.iter().zip(m).map(|(x, y)| x * y).sum();
        if pairing < 0 {
            let mut psi = Poly::var(t, a.mu);
            for (k, &w) in nu.iter().enumerate() {
                psi = &psi + &Poly::var(t, a.tau[k]).scale(&q(w as i64));
            }
            p = &p * &psi.pow((-pairing) as u32);
        }
    }
    p
}

/// `sum_m z^m c_m` with `|m|_inf <= 3` and `c_m` of degree at most 2 in
/// `mu, tau`. Each component is cleared (so a member) with probability
/// `p_member`.
pub fn random_abelian_element(rng: &mut TestRng, c: &Coulomb, p_member: f64) -> Frac {
    random_abelian_element_within(rng, c, p_member, 3)
}

/// Same, with every cocharacter bounded by `bound` in each coordinate.
pub fn random_abelian_element_within(rng: &mut TestRng, c: &Coulomb, p_member: f64, bound: i32) -> Frac {
    let a = c.ambient();
    let t = c.table();
    let r = c.problem().rank();
    let mut coeff_vars = vec![(a.mu, 0, 2)];
    coeff_vars.extend(a.tau.iter().map(|&v| (v, 0, 1)));
    let ncomp = rng.gen_range(1..=3);
    let mut f = Poly::zero(t);
    for _ in 0..ncomp {
        let m: Vec<i32> = (0..r).map(|_| rng.gen_range(-bound..=bound)).collect();
        let mut cm = random_poly(rng, t, &coeff_vars, 3, 10);
        if rng.gen_bool(p_member) {
            cm = &cm * &clearing_product(c, &m);
        }
        let mut e = vec![0; t.len()];
        for k in 0..r {
            e[a.z[k]] = m[k];
        }
        f = &f + &cm.mul_monomial(&Monomial(e));
    }
    Frac::from_poly(c.factors(), f)
}

/// Random element of the SU(2)-type blowup ring, optionally over a psi power.
pub fn random_blowup_element(rng: &mut TestRng, c: &Coulomb, allow_den: bool) -> Frac {
    let a = c.ambient();
    let t = c.table();
    let mut vars = vec![(a.mu, 0, 1)];
    for k in 0..c.problem().rank() {
        vars.push((a.z[k], -2, 2));
        vars.push((a.tau[k], 0, 1));
        if let Some(u) = a.u[k] {
            vars.push((u, 0, 2));
        }
    }
    let p = random_poly(rng, t, &vars, 4, 6);
    let mut f = Frac::from_poly(c.factors(), p);
    if allow_den && rng.gen_bool(0.3) && !a.psi.is_empty() {
        let (_, idx) = a.psi.choose(rng).unwrap();
        let d = Frac::from_poly(c.factors(), c.factors().factor(*idx).clone());
        f = f.try_div(&d).unwrap();
    }
    c.normal_form(&f).unwrap()
}

/// Random element of the subalgebra generated by `gens`: a sum of a few
/// products of at most three generators with small integer coefficients.
pub fn random_member(rng: &mut TestRng, c: &Coulomb, gens: &[(String, Frac)]) -> Frac {
    let mut acc = Frac::zero(c.factors());
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = Frac::constant(c.factors(), coef(rng, 5));
        for _ in 0..rng.gen_range(1..=3) {
            let (_, g) = gens.choose(rng).unwrap();
            term = c.mul(&term, g).unwrap();
        }
        acc = acc.try_add(&term).unwrap();
    }
    c.normal_form(&acc).unwrap()
}

/// Checks `a == b` at several random points where both are defined.
pub fn agree_numerically(rng: &mut TestRng, a: &Frac, b: &Frac, points: usize) -> bool {
    let n = a.table().len();
    let mut checked = 0;
    let mut tries = 0;
    while checked < points && tries < points * 10 {
        tries += 1;
        let p = random_point(rng, n);
        if let (Some(x), Some(y)) = (eval_frac(a, &p), eval_frac(b, &p)) {
            if x != y {
                return false;
            }
            checked += 1;
        }
    }
    checked > 0
}

pub fn u1_pm1() -> CoulombProblem {
    CoulombProblem::torus(1, vec![vec![1], vec![-1]]).unwrap()
}

pub fn su2_standard() -> CoulombProblem {
    CoulombProblem::new(0, 1, vec![vec![1], vec![-1]]).unwrap()
}

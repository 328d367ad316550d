mod common;

use std::sync::Arc;

use common::*;
use coulomb_algebra::morphism::{substitute, MorphismKind, RingMorphism};
use coulomb_algebra::parse::parse_expression;
use coulomb_algebra::poly::{Monomial, Poly, VarTable};
use coulomb_algebra::print::print_canonical;
use coulomb_algebra::{Error, FactorSet, Frac};
use proptest::prelude::*;

fn table() -> Arc<VarTable> {
    VarTable::new([("z", true), ("mu", false), ("tau", false), ("eta", false)]).unwrap()
}

fn factors() -> Arc<FactorSet> {
    let t = table();
    let p = |n| Poly::named(&t, n);
    FactorSet::new(
        &t,
        [
            p("tau"),
            &p("mu") + &p("tau"),
            &p("mu") - &p("tau"),
            &p("mu") + &p("eta"),
            &p("mu") - &p("eta"),
        ],
    )
    .unwrap()
}

fn e(s: &str) -> Frac {
    parse_expression(s, &factors()).unwrap()
}

#[test]
fn poly_arith_examples() {
    let t = table();
    let p = |n| Poly::named(&t, n);
    let one = Poly::one(&t);
    assert_eq!(&(&p("z") - &one) * &(&p("z") + &one), &p("z").pow(2) - &one);
    assert_eq!(&(&p("mu") + &p("tau")) + &(&p("mu") - &p("tau")), p("mu").scale(&q(2)));
    let other = VarTable::polynomial(["z"]).unwrap();
    assert!(matches!(p("z").try_add(&Poly::named(&other, "z")), Err(Error::TableMismatch)));
}

#[test]
fn exact_divide_examples() {
    let t = table();
    let p = |n| Poly::named(&t, n);
    let one = Poly::one(&t);
    let zm1 = &p("z") - &one;
    assert_eq!((&p("z").pow(2) - &one).exact_div(&zm1).unwrap(), Some(&p("z") + &one));
    let m2t2 = &p("mu").pow(2) - &p("tau").pow(2);
    assert_eq!(m2t2.exact_div(&(&p("mu") - &p("tau"))).unwrap(), Some(&p("mu") + &p("tau")));
    assert_eq!((&zm1 * &(&p("z") + &one)).exact_div(&p("tau")).unwrap(), None);
    assert!(matches!(one.exact_div(&Poly::zero(&t)), Err(Error::DivisionByZero)));
}

#[test]
fn frac_reduce_examples() {
    let fs = factors();
    let t = fs.table().clone();
    let p = |n| Poly::named(&t, n);
    let one = Poly::one(&t);
    let mmt = fs.index_of(&(&p("mu") - &p("tau"))).unwrap();
    let f = Frac::new(&fs, &p("mu").pow(2) - &p("tau").pow(2), vec![(mmt, 1)]).unwrap();
    assert_eq!(f.as_poly(), Some(&(&p("mu") + &p("tau"))));
    let zm = Poly::term(&t, vec![2, 0, 0, 0], q(3)).unwrap();
    let g0 = Frac::new(&fs, &zm * &p("tau"), vec![(0, 2)]).unwrap();
    assert_eq!(g0.numerator(), &zm);
    assert_eq!(g0.denominator(), &[(0, 1)]);
    let mme = fs.index_of(&(&p("mu") - &p("eta"))).unwrap();
    let g = Frac::new(&fs, &(&p("mu") + &p("eta")) * &(&p("mu") - &p("eta")), vec![(mme, 1)]).unwrap();
    assert_eq!(g.as_poly(), Some(&(&p("mu") + &p("eta"))));
    let u = Frac::new(&fs, &p("z") - &one, vec![(0, 1)]).unwrap();
    assert_eq!(u.numerator(), &(&p("z") - &one));
    assert_eq!(u.denominator(), &[(0, 1)]);
}

#[test]
fn frac_arith_examples() {
    let fs = factors();
    let t = fs.table().clone();
    let p = |n| Poly::named(&t, n);
    let one = Poly::one(&t);
    // u * v with v = (1 - 1/z)/tau: expanded by hand as (z - 1)^2 z^-1 / tau^2
    let u = e("(z - 1)/tau");
    let v = e("(1 - z^-1)/tau");
    let zm1 = &p("z") - &one;
    let zinv = Poly::term(&t, vec![-1, 0, 0, 0], q(1)).unwrap();
    let by_hand = &(&zm1 * &zm1) * &zinv;
    let uv = u.try_mul(&v).unwrap();
    assert_eq!(uv.numerator(), &by_hand);
    assert_eq!(uv.denominator(), &[(0, 2)]);
    assert!(u.try_sub(&u).unwrap().is_zero());
    let s = e("1/(mu - tau) + 1/(mu + tau)");
    assert_eq!(s.numerator(), &p("mu").scale(&q(2)));
    assert_eq!(s.denominator(), &[(1, 1), (2, 1)]);
}

#[test]
fn substitute_examples() {
    let fs = factors();
    let t = fs.table().clone();
    let z = Poly::named(&t, "z");
    let m = RingMorphism::with_images(&fs, vec![(0, e("z*(mu+tau)/(mu-tau)"))], MorphismKind::Translation);
    assert_eq!(substitute(&z, &m).unwrap(), e("z*(mu+tau)/(mu-tau)"));
    let zz = &z * &Poly::term(&t, vec![-1, 0, 0, 0], q(1)).unwrap();
    assert!(substitute(&zz, &m).unwrap().is_one());
    let m2 = RingMorphism::with_images(
        &fs,
        vec![(0, e("(mu+eta)/(mu-eta)")), (2, e("eta"))],
        MorphismKind::Custom,
    );
    // (mu+eta)/(mu-eta) * (mu-eta) cancels by hand to mu+eta
    let img = substitute(e("z*(mu - tau)").numerator(), &m2).unwrap();
    assert_eq!(img.as_poly(), Some(&(&Poly::named(&t, "mu") + &Poly::named(&t, "eta"))));
}

#[test]
fn exact_divide_round_trip_200() {
    let mut rng = rng(11);
    let t = table();
    let vars = [(0usize, -2, 2), (1, 0, 2), (2, 0, 2), (3, 0, 1)];
    for _ in 0..200 {
        let qq = random_poly(&mut rng, &t, &vars, 4, 9);
        let d = random_poly(&mut rng, &t, &vars, 3, 9);
        let prod = &qq * &d;
        assert_eq!(prod.exact_div(&d).unwrap(), Some(qq));
    }
}

fn arb_frac() -> impl Strategy<Value = Frac> {
    let term = (-2i32..=2, 0i32..=2, 0i32..=2, 0i32..=1, -9i64..=9);
    (prop::collection::vec(term, 1..4), prop::collection::vec((0usize..5, 0u32..3), 0..3)).prop_map(
        |(terms, den)| {
            let fs = factors();
            let t = fs.table().clone();
            let p = Poly::from_terms(&t, terms.into_iter().map(|(a, b, c, d, k)| (Monomial(vec![a, b, c, d]), q(k))))
                .unwrap();
            Frac::new(&fs, p, den).unwrap()
        },
    )
}

fn cleared_equal(a: &Frac, b: &Frac) -> bool {
    let (l, r) = a.cross_multiplied(b).unwrap();
    l == r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn frac_ring_laws(a in arb_frac(), b in arb_frac(), c in arb_frac()) {
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let assoc_l = a.try_add(&b).unwrap().try_add(&c).unwrap();
        let assoc_r = a.try_add(&b.try_add(&c).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
    }

    #[test]
    fn reduce_is_idempotent_and_preserves_value(a in arb_frac()) {
        let again = Frac::new(a.factor_set(), a.numerator().clone(), a.denominator().to_vec()).unwrap();
        prop_assert_eq!(&again, &a);
        // unreduced form: multiply numerator and denominator by the same factor
        let mut den = a.denominator().to_vec();
        den.push((1, 1));
        let padded = Frac::new(a.factor_set(), a.numerator() * a.factor_set().factor(1), den).unwrap();
        prop_assert!(cleared_equal(&padded, &a));
        prop_assert_eq!(padded, a);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in arb_frac(), b in arb_frac()) {
        let fs = factors();
        let m = RingMorphism::with_images(
            &fs,
            vec![(0, e("z*(mu+tau)/(mu-tau)")), (2, e("eta")), (1, e("mu + tau"))],
            MorphismKind::Custom,
        );
        let pa = a.numerator();
        let pb = b.numerator();
        let lhs = substitute(&(pa * pb), &m).unwrap();
        let rhs = substitute(pa, &m).unwrap().try_mul(&substitute(pb, &m).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_round_trip(a in arb_frac()) {
        let text = print_canonical(&a);
        prop_assert_eq!(parse_expression(&text, &factors()).unwrap(), a);
    }
}

#[test]
fn fractions_agree_with_point_evaluation() {
    let mut rng = rng(5);
    let fs = factors();
    for text in ["(z - 1)/tau * (1 - z^-1)/tau", "1/(mu - tau) + 1/(mu + tau)", "(mu^2 - tau^2)/(mu - tau) * z^-2", "z/(mu + eta)^2 - 3/4*tau^-1"] {
        let f = e(text);
        let ast = coulomb_algebra::parse::parse_ast(text).unwrap();
        for _ in 0..5 {
            let pt = random_point(&mut rng, fs.table().len());
            if let Some(v) = eval_ast(&ast, &fs, &pt) {
                assert_eq!(eval_frac(&f, &pt), Some(v));
            }
        }
    }
}

fn eval_ast(e: &coulomb_algebra::parse::Expr, fs: &FactorSet, pt: &[coulomb_algebra::Rational]) -> Option<coulomb_algebra::Rational> {
    use coulomb_algebra::parse::Expr::*;
    Some(match e {
        Int(n) => coulomb_algebra::Rational::from_integer(n.clone()),
        Var(v) => pt[fs.table().index_of(v)?].clone(),
        Add(a, b) => eval_ast(a, fs, pt)? + eval_ast(b, fs, pt)?,
        Sub(a, b) => eval_ast(a, fs, pt)? - eval_ast(b, fs, pt)?,
        Mul(a, b) => eval_ast(a, fs, pt)? * eval_ast(b, fs, pt)?,
        Div(a, b) => {
            let d = eval_ast(b, fs, pt)?;
            if d == coulomb_algebra::Rational::from_integer(0.into()) {
                return None;
            }
            eval_ast(a, fs, pt)? / d
        }
        Neg(a) => -eval_ast(a, fs, pt)?,
        Pow(a, k) => {
            let x = eval_ast(a, fs, pt)?;
            if *k >= 0 {
                num_traits::pow(x, *k as usize)
            } else if x == coulomb_algebra::Rational::from_integer(0.into()) {
                return None;
            } else {
                num_traits::pow(x.recip(), (-*k) as usize)
            }
        }
    })
}

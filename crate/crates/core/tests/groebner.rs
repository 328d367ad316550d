mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use common::*;
use coulomb_algebra::groebner::{
    buchberger, buchberger_tracked, eliminate, normal_form, ring_map_kernel, same_ideal, subalgebra_membership,
    GroebnerBasis, Ideal, MonomialOrder, SubalgebraMembership, SubalgebraTester,
};
use coulomb_algebra::morphism::{MorphismKind, RingMorphism};
use coulomb_algebra::parse::parse_expression;
use coulomb_algebra::poly::{Monomial, Poly, Rational, VarTable};
use coulomb_algebra::{FactorSet, Frac};
use num_traits::One;
use rand::Rng;

fn t(names: &[&str]) -> Arc<VarTable> {
    VarTable::polynomial(names.iter().copied()).unwrap()
}

// Plain division algorithm, kept independent of the library's reducer.
fn lead(p: &Poly, ord: MonomialOrder) -> (Monomial, Rational) {
    let mut best: Option<(&Monomial, &Rational)> = None;
    for (m, c) in p.terms() {
        if best.is_none_or(|(b, _)| ord.cmp(&m.0, &b.0) == Ordering::Greater) {
            best = Some((m, c));
        }
    }
    let (m, c) = best.unwrap();
    (m.clone(), c.clone())
}

fn divides(a: &Monomial, b: &Monomial) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
}

fn remainder(p: &Poly, g: &[Poly], ord: MonomialOrder) -> Poly {
    let table = p.table().clone();
    let mut p = p.clone();
    let mut r = Poly::zero(&table);
    while !p.is_zero() {
        let (m, c) = lead(&p, ord);
        let hit = g.iter().find(|gi| divides(&lead(gi, ord).0, &m));
        match hit {
            Some(gi) => {
                let (gm, gc) = lead(gi, ord);
                let q: Vec<i32> = m.0.iter().zip(&gm.0).map(|(a, b)| a - b).collect();
                let step = gi.mul_monomial(&Monomial(q)).scale(&(c / gc));
                p = &p - &step;
            }
            None => {
                let lt = Poly::term(&table, m.0.clone(), c.clone()).unwrap();
                r = &r + &lt;
                p = &p - &lt;
            }
        }
    }
    r
}

fn s_poly(f: &Poly, g: &Poly, ord: MonomialOrder) -> Poly {
    let (fm, fc) = lead(f, ord);
    let (gm, gc) = lead(g, ord);
    let l: Vec<i32> = fm.0.iter().zip(&gm.0).map(|(a, b)| *a.max(b)).collect();
    let mf: Vec<i32> = l.iter().zip(&fm.0).map(|(a, b)| a - b).collect();
    let mg: Vec<i32> = l.iter().zip(&gm.0).map(|(a, b)| a - b).collect();
    &f.mul_monomial(&Monomial(mf)).scale(&fc.recip()) - &g.mul_monomial(&Monomial(mg)).scale(&gc.recip())
}

/// Buchberger's criterion, reducedness and ideal equality with the inputs.
fn check_basis(gb: &GroebnerBasis, inputs: &[Poly]) {
    let ord = gb.order();
    let basis = gb.basis();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            assert!(remainder(&s_poly(&basis[i], &basis[j], ord), &basis, ord).is_zero());
        }
    }
    for (i, b) in basis.iter().enumerate() {
        let (lm, lc) = lead(b, ord);
        assert!(lc.is_one());
        for (j, other) in basis.iter().enumerate() {
            if i != j {
                assert!(other.terms().all(|(m, _)| !divides(&lm, m)));
            }
        }
    }
    for f in inputs {
        assert!(remainder(f, &basis, ord).is_zero());
    }
}

fn random_ideal(rng: &mut TestRng, tb: &Arc<VarTable>) -> Vec<Poly> {
    let vars: Vec<(usize, i32, i32)> = (0..tb.len()).map(|v| (v, 0, 2)).collect();
    let n = rng.gen_range(2..=3);
    (0..n).map(|_| random_poly(rng, tb, &vars, 3, 5)).filter(|p| p.as_constant().is_none()).collect()
}

#[test]
fn conic_from_elimination() {
    let tb = t(&["z", "z_inv", "x", "y", "mu", "tau"]);
    let p = |n| Poly::named(&tb, n);
    let one = Poly::one(&tb);
    let gens = vec![
        &p("x") - &(&p("z") * &(&p("mu") - &p("tau"))),
        &p("y") - &(&p("z_inv") * &(&p("mu") + &p("tau"))),
        &(&p("z") * &p("z_inv")) - &one,
    ];
    let ideal = Ideal::new(&tb, gens.clone()).unwrap();
    let gb = buchberger(&ideal, MonomialOrder::BlockElimination(2));
    check_basis(&gb, &gens);
    let conic = &(&(&p("x") * &p("y")) - &p("mu").pow(2)) + &p("tau").pow(2);
    assert!(gb.contains(&conic));
    assert_eq!(eliminate(&ideal, 2), vec![conic]);
}

#[test]
fn blowup_basis_and_normal_forms() {
    let tb = t(&["z", "z_inv", "tau", "u"]);
    let p = |n| Poly::named(&tb, n);
    let one = Poly::one(&tb);
    let zm1 = &p("z") - &one;
    let g = vec![&(&p("tau") * &p("u")) - &zm1, &(&p("z") * &p("z_inv")) - &one];
    let gb = buchberger(&Ideal::new(&tb, g.clone()).unwrap(), MonomialOrder::GrevLex);
    check_basis(&gb, &g);
    assert!((2..=3).contains(&gb.len()));
    assert!(gb.contains(&(&zm1 - &(&p("tau") * &p("u")))));

    let mut g2 = g.clone();
    g2.push(p("tau").pow(2));
    for ord in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
        let gb = buchberger(&Ideal::new(&tb, g2.clone()).unwrap(), ord);
        check_basis(&gb, &g2);
        // (z-1)^2 - tau^2 u^2 = -(tau u - (z-1))(tau u + z - 1)
        let lhs = &zm1.pow(2) - &(&p("tau").pow(2) * &p("u").pow(2));
        let rhs = (&g[0] * &(&(&p("tau") * &p("u")) + &zm1)).scale(&q(-1));
        assert_eq!(lhs, rhs);
        assert!(normal_form(&zm1.pow(2), &gb).is_zero());
        assert!(!normal_form(&zm1, &gb).is_zero());
        assert!(!remainder(&zm1, &gb.basis(), ord).is_zero());
    }
}

#[test]
fn random_bases_satisfy_buchberger_criterion() {
    let mut rng = rng(21);
    let tb = t(&["x", "y", "w"]);
    for _ in 0..40 {
        let gens = random_ideal(&mut rng, &tb);
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::new(&tb, gens.clone()).unwrap();
        for ord in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::BlockElimination(1)] {
            check_basis(&buchberger(&ideal, ord), &gens);
        }
    }
}

#[test]
fn bases_in_two_orders_define_the_same_ideal() {
    let mut rng = rng(22);
    let tb = t(&["x", "y", "w"]);
    for _ in 0..40 {
        let gens = random_ideal(&mut rng, &tb);
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::new(&tb, gens).unwrap();
        let a = buchberger(&ideal, MonomialOrder::GrevLex);
        let b = buchberger(&ideal, MonomialOrder::Lex);
        assert!(a.contains_all(&b.basis()));
        assert!(b.contains_all(&a.basis()));
        assert!(same_ideal(&a, &b));
    }
}

#[test]
fn deterministic_bases() {
    let mut rng = rng(23);
    let tb = t(&["x", "y", "w"]);
    for _ in 0..10 {
        let gens = random_ideal(&mut rng, &tb);
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::new(&tb, gens).unwrap();
        assert_eq!(buchberger(&ideal, MonomialOrder::GrevLex).basis(), buchberger(&ideal, MonomialOrder::GrevLex).basis());
    }
}

#[test]
fn tracked_cofactors_on_100_members() {
    let mut rng = rng(24);
    let tb = t(&["x", "y", "w"]);
    let vars: Vec<(usize, i32, i32)> = (0..3).map(|v| (v, 0, 2)).collect();
    let mut done = 0;
    while done < 100 {
        let gens = random_ideal(&mut rng, &tb);
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::new(&tb, gens.clone()).unwrap();
        let gb = buchberger_tracked(&ideal, MonomialOrder::GrevLex);
        for _ in 0..5 {
            let mut member = Poly::zero(&tb);
            for g in &gens {
                member = &member + &(g * &random_poly(&mut rng, &tb, &vars, 3, 5));
            }
            assert!(normal_form(&member, &gb).is_zero());
            let cof = gb.express(&member).expect("member has cofactors");
            let rebuilt = cof.iter().zip(gb.inputs()).fold(Poly::zero(&tb), |acc, (c, g)| &acc + &(c * g));
            assert_eq!(rebuilt, member);
            done += 1;

            let other = random_poly(&mut rng, &tb, &vars, 3, 5);
            assert_eq!(normal_form(&other, &gb).is_zero(), gb.express(&other).is_some());
        }
    }
}

fn laurent_fs(names: &[(&str, bool)], factors: &[&str]) -> Arc<FactorSet> {
    let tb = VarTable::new(names.iter().map(|&(n, l)| (n, l))).unwrap();
    let empty = FactorSet::empty(&tb);
    let polys = factors.iter().map(|s| parse_expression(s, &empty).unwrap().numerator().clone());
    FactorSet::new(&tb, polys).unwrap()
}

fn tags_vanish(kernel: &Ideal, images: &[(String, Frac)], relations: &[Poly]) {
    let fs = images[0].1.factor_set();
    let m = RingMorphism::new(
        kernel.table(),
        fs,
        images.iter().map(|(_, f)| f.clone()).collect(),
        MorphismKind::Custom,
    )
    .unwrap();
    for g in kernel.generators() {
        let v = m.apply(g).unwrap();
        if relations.is_empty() {
            assert!(v.is_zero(), "{g} does not vanish");
        } else {
            assert!(coulomb_algebra::groebner::vanishes_modulo(&v, relations).unwrap());
        }
    }
}

#[test]
fn kernel_examples() {
    let fs = laurent_fs(&[("z", true), ("mu", false), ("tau", false)], &["mu - tau", "mu + tau"]);
    let e = |s: &str| parse_expression(s, &fs).unwrap();

    let images = vec![
        ("x".into(), e("z*(mu - tau)")),
        ("y".into(), e("z^-1*(mu + tau)")),
        ("m".into(), e("mu")),
        ("t".into(), e("tau")),
    ];
    let k = ring_map_kernel(&images, &[]).unwrap();
    let kt = k.table().clone();
    let kp = |n| Poly::named(&kt, n);
    assert_eq!(k.generators(), &[&(&(&kp("x") * &kp("y")) - &kp("m").pow(2)) + &kp("t").pow(2)]);
    tags_vanish(&k, &images, &[]);

    let images = vec![("a".into(), e("z")), ("b".into(), e("z^-1"))];
    let k = ring_map_kernel(&images, &[]).unwrap();
    let kt = k.table().clone();
    assert_eq!(k.generators(), &[&(&Poly::named(&kt, "a") * &Poly::named(&kt, "b")) - &Poly::one(&kt)]);
    tags_vanish(&k, &images, &[]);

    let images = vec![("a".into(), e("z + z^-1")), ("b".into(), e("tau*(z - z^-1)")), ("c".into(), e("tau^2"))];
    // b^2 = tau^2 (z^2 - 2 + z^-2) = c (a^2 - 4)
    let k = ring_map_kernel(&images, &[]).unwrap();
    let kt = k.table().clone();
    let kp = |n| Poly::named(&kt, n);
    let expect = &(&kp("b").pow(2) - &(&kp("c") * &kp("a").pow(2))) + &kp("c").scale(&q(4));
    let got = buchberger(&k, MonomialOrder::GrevLex);
    let want = buchberger(&Ideal::new(&kt, [expect]).unwrap(), MonomialOrder::GrevLex);
    assert!(same_ideal(&got, &want));
    tags_vanish(&k, &images, &[]);
}

#[test]
fn kernel_with_denominators() {
    let fs = laurent_fs(&[("z", true), ("mu", false), ("tau", false)], &["mu - tau", "mu + tau"]);
    let e = |s: &str| parse_expression(s, &fs).unwrap();
    let images = vec![("p".into(), e("1/(mu - tau)")), ("m".into(), e("mu")), ("t".into(), e("tau"))];
    let k = ring_map_kernel(&images, &[]).unwrap();
    let kt = k.table().clone();
    let kp = |n| Poly::named(&kt, n);
    let expect = &(&kp("p") * &(&kp("m") - &kp("t"))) - &Poly::one(&kt);
    assert_eq!(k.generators(), &[expect]);
    tags_vanish(&k, &images, &[]);
}

#[test]
fn subalgebra_examples() {
    let fs = laurent_fs(&[("z", true), ("mu", false), ("tau", false)], &["mu - tau", "mu + tau"]);
    let e = |s: &str| parse_expression(s, &fs).unwrap();
    let gens = vec![
        ("x".into(), e("z*(mu - tau)")),
        ("y".into(), e("z^-1*(mu + tau)")),
        ("mu".into(), e("mu")),
        ("tau".into(), e("tau")),
    ];
    let tester = SubalgebraTester::new(&gens, &[]).unwrap();
    match tester.test(&e("z^2*(mu - tau)^2")).unwrap() {
        SubalgebraMembership::Expressible(w) => {
            assert_eq!(w, Poly::named(tester.tags(), "x").pow(2));
            assert!(tester.verify(&e("z^2*(mu - tau)^2"), &w).unwrap());
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(tester.test(&e("z")).unwrap(), SubalgebraMembership::NotMember(_)));
    // translation oracle: z -> z (mu + tau)/(mu - tau) has a pole, so z cannot be a member
    assert!(!e("z*(mu + tau)/(mu - tau)").is_polynomial());
}

#[test]
fn blowup_subalgebra_expresses_w() {
    let tb = VarTable::new([("z", true), ("mu", false), ("u", false), ("tau", false)]).unwrap();
    let fs = FactorSet::empty(&tb);
    let e = |s: &str| parse_expression(s, &fs).unwrap();
    let rel = e("tau*u - z + 1").numerator().clone();
    let gens: Vec<(String, Frac)> =
        ["z", "z^-1", "tau", "u", "mu"].iter().enumerate().map(|(i, s)| (format!("g{i}"), e(s))).collect();
    // v = u z^-1, w = mu u v - u - v
    let w = e("mu*u^2*z^-1 - u - u*z^-1");
    let witness = match subalgebra_membership(&w, &gens, &[rel.clone()]).unwrap() {
        SubalgebraMembership::Expressible(p) => p,
        other => panic!("{other:?}"),
    };
    // re-evaluate the witness numerically on the relation locus u = (z - 1)/tau
    let mut rng = rng(31);
    for _ in 0..10 {
        let pt = random_point(&mut rng, 4);
        let (z, mu, tau) = (pt[0].clone(), pt[1].clone(), pt[3].clone());
        let u = (z.clone() - Rational::one()) / tau.clone();
        let point = vec![z.clone(), mu.clone(), u.clone(), tau.clone()];
        let gvals = vec![z.clone(), z.recip(), tau, u, mu];
        assert_eq!(eval_poly(&witness, &gvals), eval_frac(&w, &point).unwrap());
    }
    let tester = SubalgebraTester::new(&gens, &[rel]).unwrap();
    assert!(tester.verify(&w, &witness).unwrap());
}

#[test]
fn witnesses_re_evaluate_on_random_members() {
    let fs = laurent_fs(&[("z", true), ("mu", false), ("tau", false)], &["mu - tau", "mu + tau"]);
    let e = |s: &str| parse_expression(s, &fs).unwrap();
    let gens = vec![
        ("x".into(), e("z*(mu - tau)")),
        ("y".into(), e("z^-1*(mu + tau)")),
        ("mu".into(), e("mu")),
        ("tau".into(), e("tau")),
    ];
    let tester = SubalgebraTester::new(&gens, &[]).unwrap();
    let tt = tester.tags().clone();
    let vars: Vec<(usize, i32, i32)> = (0..4).map(|v| (v, 0, 2)).collect();
    let mut rng = rng(32);
    for _ in 0..30 {
        let w0 = random_poly(&mut rng, &tt, &vars, 3, 6);
        let f = tester.evaluate(&w0).unwrap();
        let w = match tester.test(&f).unwrap() {
            SubalgebraMembership::Expressible(w) => w,
            other => panic!("{other:?}"),
        };
        assert_eq!(tester.evaluate(&w).unwrap(), f);
        let pt = random_point(&mut rng, 3);
        let gvals: Vec<Rational> = gens.iter().map(|(_, g)| eval_frac(g, &pt).unwrap()).collect();
        if let Some(v) = eval_frac(&f, &pt) {
            assert_eq!(eval_poly(&w, &gvals), v);
        }
    }
}

//! Buchberger's algorithm over the rationals and the ideal computations built
//! on it: normal forms, membership, elimination, kernels of ring maps and
//! subalgebra membership through tag variables.
//!
//! Ideals live in ordinary polynomial rings. Laurent variables are encoded by
//! a partner `<name>_inv` variable together with the relation `z*z_inv - 1`;
//! [`LaurentEncoding`] does the bookkeeping.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frac::{FactorKind, Frac};
use crate::poly::{grevlex, Monomial, Poly, Rational, VarTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    /// Eliminates the first `k` variables.
    BlockElimination(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[i32], b: &[i32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::BlockElimination(k) => {
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

type Term = (Vec<i32>, Rational);

/// Terms sorted in descending order under some monomial order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Sp(Vec<Term>);

impl Sp {
    fn from_poly(p: &Poly, ord: MonomialOrder) -> Sp {
        let mut v: Vec<Term> = p.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect();
        v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Sp(v)
    }

    fn to_poly(&self, table: &Arc<VarTable>) -> Poly {
        Poly::from_terms(table, self.0.iter().map(|(m, c)| (Monomial(m.clone()), c.clone())))
            .expect("polynomial terms")
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lm(&self) -> &[i32] {
        &self.0[0].0
    }

    fn lc(&self) -> &Rational {
        &self.0[0].1
    }

    fn scale(&self, c: &Rational) -> Sp {
        Sp(self.0.iter().map(|(m, a)| (m.clone(), a * c)).collect())
    }

    /// `self - c * x^m * g`
    fn sub_mul(&self, c: &Rational, m: &[i32], g: &Sp, ord: MonomialOrder) -> Sp {
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let mut i = 0;
        let shifted = g.0.iter().map(|(gm, gc)| (gm.iter().zip(m).map(|(a, b)| a + b).collect::<Vec<i32>>(), gc * c));
        let mut shifted = shifted.peekable();
        while i < self.0.len() || shifted.peek().is_some() {
            match (self.0.get(i), shifted.peek()) {
                (Some(a), Some(b)) => match ord.cmp(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        let (bm, bc) = shifted.next().unwrap();
                        out.push((bm, -bc));
                    }
                    Ordering::Equal => {
                        let (_, bc) = shifted.next().unwrap();
                        let v = &a.1 - bc;
                        if !v.is_zero() {
                            out.push((a.0.clone(), v));
                        }
                        i += 1;
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    let (bm, bc) = shifted.next().unwrap();
                    out.push((bm, -bc));
                }
                (None, None) => unreachable!(),
            }
        }
        Sp(out)
    }

    fn add(&self, other: &Sp, ord: MonomialOrder) -> Sp {
        let zero = vec![0; self.0.first().or(other.0.first()).map_or(0, |t| t.0.len())];
        self.sub_mul(&-Rational::one(), &zero, other, ord)
    }

    fn monomial(m: Vec<i32>, c: Rational) -> Sp {
        if c.is_zero() {
            Sp(vec![])
        } else {
            Sp(vec![(m, c)])
        }
    }
}

fn divides(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn quotient(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Basis element under construction, with optional cofactors expressing it
/// in terms of the input generators.
#[derive(Clone, Debug)]
struct Elem {
    p: Sp,
    cof: Option<Vec<Sp>>,
}

/// Polynomial ideal given by generators. Laurent exponents are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    table: Arc<VarTable>,
    generators: Vec<Poly>,
}

impl Ideal {
    pub fn new(table: &Arc<VarTable>, generators: impl IntoIterator<Item = Poly>) -> Result<Ideal> {
        let mut gens = Vec::new();
        for g in generators {
            if !g.same_table(&Poly::zero(table)) {
                return Err(Error::TableMismatch);
            }
            if !g.is_polynomial() {
                return Err(Error::Unsupported(format!(
                    "ideal generator `{g}` has negative exponents; encode Laurent variables first"
                )));
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal { table: table.clone(), generators: gens })
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Reduced Gröbner basis: leading coefficients 1, leading monomials pairwise
/// non-divisible, every element fully reduced against the others.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    table: Arc<VarTable>,
    order: MonomialOrder,
    basis: Vec<Sp>,
    /// `cofactors[j][i]`: coefficient of input generator `i` in basis element `j`.
    cofactors: Option<Vec<Vec<Sp>>>,
    inputs: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> Vec<Poly> {
        self.basis.iter().map(|b| b.to_poly(&self.table)).collect()
    }

    /// Leading monomial of each element under the basis order.
    pub fn leading_monomials(&self) -> Vec<Vec<i32>> {
        self.basis.iter().map(|b| b.lm().to_vec()).collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].lm().iter().all(|&e| e == 0)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        normal_form(p, self).is_zero()
    }

    pub fn contains_all(&self, ps: &[Poly]) -> bool {
        ps.iter().all(|p| self.contains(p))
    }

    /// Cofactors `c_i` with `p = sum c_i * inputs[i]`, when `p` is in the ideal
    /// and the basis was computed with cofactor tracking.
    pub fn express(&self, p: &Poly) -> Option<Vec<Poly>> {
        let cofs = self.cofactors.as_ref()?;
        let (r, quots) = reduce_with_quotients(&Sp::from_poly(p, self.order), &self.basis, self.order);
        if !r.is_zero() {
            return None;
        }
        let n = self.inputs.len();
        let mut out = vec![Sp::default(); n];
        for (q, cof) in quots.iter().zip(cofs) {
            if q.is_zero() {
                continue;
            }
            for i in 0..n {
                out[i] = out[i].add(&mul(q, &cof[i], self.order), self.order);
            }
        }
        Some(out.iter().map(|s| s.to_poly(&self.table)).collect())
    }

    pub fn inputs(&self) -> &[Poly] {
        &self.inputs
    }
}

fn mul(a: &Sp, b: &Sp, ord: MonomialOrder) -> Sp {
    let mut acc = Sp::default();
    for (m, c) in &a.0 {
        acc = acc.sub_mul(&-c.clone(), m, b, ord);
    }
    acc
}

/// Full reduction of `p` by `reducers`; returns the remainder and the quotient
/// attached to each reducer.
fn reduce_with_quotients(p: &Sp, reducers: &[Sp], ord: MonomialOrder) -> (Sp, Vec<Sp>) {
    let mut quots = vec![Sp::default(); reducers.len()];
    let mut rem: Vec<Term> = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        let lm = cur.lm().to_vec();
        match reducers.iter().position(|g| divides(g.lm(), &lm)) {
            Some(j) => {
                let g = &reducers[j];
                let c = cur.lc() / g.lc();
                let m = quotient(&lm, g.lm());
                quots[j] = quots[j].add(&Sp::monomial(m.clone(), c.clone()), ord);
                cur = cur.sub_mul(&c, &m, g, ord);
            }
            None => {
                rem.push(cur.0.remove(0));
            }
        }
    }
    (Sp(rem), quots)
}

/// Full reduction carrying cofactors along.
fn reduce_elem(e: &Elem, reducers: &[Elem], ord: MonomialOrder) -> Elem {
    let mut rem: Vec<Term> = Vec::new();
    let mut cur = e.p.clone();
    let mut cof = e.cof.clone();
    while !cur.is_zero() {
        let lm = cur.lm().to_vec();
        match reducers.iter().position(|g| divides(g.p.lm(), &lm)) {
            Some(j) => {
                let g = &reducers[j];
                let c = cur.lc() / g.p.lc();
                let m = quotient(&lm, g.p.lm());
                cur = cur.sub_mul(&c, &m, &g.p, ord);
                if let (Some(cf), Some(gc)) = (cof.as_mut(), g.cof.as_ref()) {
                    for (a, b) in cf.iter_mut().zip(gc) {
                        *a = a.sub_mul(&c, &m, b, ord);
                    }
                }
            }
            None => rem.push(cur.0.remove(0)),
        }
    }
    Elem { p: Sp(rem), cof }
}

fn make_monic(e: &mut Elem) {
    if e.p.is_zero() {
        return;
    }
    let inv = e.p.lc().recip();
    e.p = e.p.scale(&inv);
    if let Some(cf) = e.cof.as_mut() {
        for c in cf.iter_mut() {
            *c = c.scale(&inv);
        }
    }
}

fn s_poly(a: &Elem, b: &Elem, ord: MonomialOrder) -> Elem {
    let l = lcm(a.p.lm(), b.p.lm());
    let ma = quotient(&l, a.p.lm());
    let mb = quotient(&l, b.p.lm());
    let ca = a.p.lc().recip();
    let cb = b.p.lc().recip();
    let pa = Sp::default().sub_mul(&-ca.clone(), &ma, &a.p, ord);
    let p = pa.sub_mul(&cb, &mb, &b.p, ord);
    let cof = match (&a.cof, &b.cof) {
        (Some(x), Some(y)) => Some(
            x.iter()
                .zip(y)
                .map(|(u, v)| {
                    Sp::default().sub_mul(&-ca.clone(), &ma, u, ord).sub_mul(&cb, &mb, v, ord)
                })
                .collect(),
        ),
        _ => None,
    };
    Elem { p, cof }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<i32>,
}

/// Gebauer–Möller update: adds element `h` and prunes pairs with the product
/// and chain criteria.
fn update(elems: &[Elem], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = elems[h].p.lm().to_vec();
    let mut c: Vec<Pair> = active
        .iter()
        .map(|&g| Pair { i: g, j: h, lcm: lcm(elems[g].p.lm(), &lh) })
        .collect();
    let mut d: Vec<Pair> = Vec::new();
    while !c.is_empty() {
        let p = c.remove(0);
        let g_lm = elems[p.i].p.lm();
        let keep = coprime(g_lm, &lh)
            || (!c.iter().any(|q| divides(&q.lcm, &p.lcm)) && !d.iter().any(|q| divides(&q.lcm, &p.lcm)));
        if keep {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d.into_iter().filter(|p| !coprime(elems[p.i].p.lm(), &lh)).collect();
    pairs.retain(|p| {
        !(divides(&lh, &p.lcm)
            && lcm(elems[p.i].p.lm(), &lh) != p.lcm
            && lcm(elems[p.j].p.lm(), &lh) != p.lcm)
    });
    pairs.extend(e);
    active.retain(|&g| !divides(&lh, elems[g].p.lm()));
    active.push(h);
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    run_buchberger(ideal, order, false)
}

/// As [`buchberger`], additionally tracking how each basis element is built
/// from the input generators (see [`GroebnerBasis::express`]).
pub fn buchberger_tracked(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    run_buchberger(ideal, order, true)
}

fn run_buchberger(ideal: &Ideal, ord: MonomialOrder, track: bool) -> GroebnerBasis {
    let n = ideal.generators.len();
    let mut elems: Vec<Elem> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for (i, g) in ideal.generators.iter().enumerate() {
        let cof = track.then(|| {
            (0..n)
                .map(|k| if k == i { Sp::monomial(vec![0; g.nvars()], Rational::one()) } else { Sp::default() })
                .collect()
        });
        let e = Elem { p: Sp::from_poly(g, ord), cof };
        let mut e = reduce_elem(&e, &elems, ord);
        if e.p.is_zero() {
            continue;
        }
        make_monic(&mut e);
        elems.push(e);
        let h = elems.len() - 1;
        update(&elems, &mut active, &mut pairs, h);
    }
    while !pairs.is_empty() {
        // Normal strategy: smallest lcm first, ties by generator index.
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| ord.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))))
            .unwrap();
        let pair = pairs.remove(k);
        let s = s_poly(&elems[pair.i], &elems[pair.j], ord);
        let mut h = reduce_elem(&s, &elems, ord);
        if h.p.is_zero() {
            continue;
        }
        make_monic(&mut h);
        elems.push(h);
        let idx = elems.len() - 1;
        update(&elems, &mut active, &mut pairs, idx);
    }
    // Minimal basis, then interreduce.
    let mut keep: Vec<usize> = Vec::new();
    for &a in &active {
        let la = elems[a].p.lm();
        let redundant = active.iter().any(|&b| {
            b != a && divides(elems[b].p.lm(), la) && (elems[b].p.lm() != la || b < a)
        });
        if !redundant {
            keep.push(a);
        }
    }
    let mut minimal: Vec<Elem> = keep.iter().map(|&i| elems[i].clone()).collect();
    for i in 0..minimal.len() {
        let others: Vec<Elem> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, e)| e.clone()).collect();
        let head = Elem {
            p: Sp(vec![minimal[i].p.0[0].clone()]),
            cof: None,
        };
        let tail = Elem {
            p: Sp(minimal[i].p.0[1..].to_vec()),
            cof: minimal[i].cof.clone(),
        };
        let reduced_tail = reduce_elem(&tail, &others, ord);
        let mut p = head.p.clone();
        p.0.extend(reduced_tail.p.0);
        p.0.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        minimal[i] = Elem { p, cof: reduced_tail.cof };
        make_monic(&mut minimal[i]);
    }
    minimal.sort_by(|a, b| ord.cmp(a.p.lm(), b.p.lm()));
    GroebnerBasis {
        table: ideal.table.clone(),
        order: ord,
        cofactors: track.then(|| minimal.iter().map(|e| e.cof.clone().unwrap()).collect()),
        basis: minimal.into_iter().map(|e| e.p).collect(),
        inputs: ideal.generators.clone(),
    }
}

/// Remainder of full reduction of `p` by `g`; zero exactly when `p` lies in the ideal.
pub fn normal_form(p: &Poly, g: &GroebnerBasis) -> Poly {
    assert!(p.same_table(&Poly::zero(&g.table)), "table mismatch");
    let (r, _) = reduce_with_quotients(&Sp::from_poly(p, g.order), &g.basis, g.order);
    r.to_poly(&g.table)
}

/// Generators of the elimination ideal `I ∩ Q[x_k, ..., x_n]`, still over the full table.
pub fn eliminate(ideal: &Ideal, k: usize) -> Vec<Poly> {
    let gb = buchberger(ideal, MonomialOrder::BlockElimination(k));
    gb.basis
        .iter()
        .filter(|b| b.0.iter().all(|(m, _)| m[..k].iter().all(|&e| e == 0)))
        .map(|b| b.to_poly(&gb.table))
        .collect()
}

/// Same ideal test via mutual containment of reduced bases.
pub fn same_ideal(a: &GroebnerBasis, b: &GroebnerBasis) -> bool {
    a.basis().iter().all(|p| b.contains(p)) && b.basis().iter().all(|p| a.contains(p))
}

fn fresh_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.iter().any(|t| *t == name) {
        name.push('_');
    }
    name
}

/// Polynomial ring encoding of a Laurent table: every Laurent variable `z`
/// gains a partner `z_inv`, placed according to the caller's layout.
#[derive(Clone, Debug)]
pub struct LaurentEncoding {
    pub source: Arc<VarTable>,
    pub table: Arc<VarTable>,
    /// Target index of each source variable.
    pub var: Vec<usize>,
    /// Target index of the inverse partner of each Laurent source variable.
    pub inv: Vec<Option<usize>>,
}

impl LaurentEncoding {
    /// Layout: source variables, then the inverse partners, then `extra` names.
    pub fn new(source: &Arc<VarTable>, extra: &[String]) -> Result<Self> {
        let mut names: Vec<String> = source.names().map(str::to_string).collect();
        let n = names.len();
        let mut inv = vec![None; n];
        for i in 0..n {
            if source.is_laurent(i) {
                let mut taken = names.clone();
                taken.extend(extra.iter().cloned());
                let name = fresh_name(&format!("{}_inv", source.name(i)), &taken);
                inv[i] = Some(names.len());
                names.push(name);
            }
        }
        names.extend(extra.iter().cloned());
        let table = VarTable::polynomial(names)?;
        Ok(LaurentEncoding { source: source.clone(), table, var: (0..n).collect(), inv })
    }

    /// Number of target variables coming from the source (variables and inverses).
    pub fn ambient_len(&self) -> usize {
        self.source.len() + self.inv.iter().flatten().count()
    }

    pub fn encode(&self, p: &Poly) -> Result<Poly> {
        if !p.same_table(&Poly::zero(&self.source)) {
            return Err(Error::TableMismatch);
        }
        let n = self.table.len();
        let terms = p.terms().map(|(m, c)| {
            let mut v = vec![0; n];
            for (i, &e) in m.0.iter().enumerate() {
                if e >= 0 {
                    v[self.var[i]] += e;
                } else {
                    v[self.inv[i].expect("negative exponent on Laurent variable")] += -e;
                }
            }
            (Monomial(v), c.clone())
        });
        Poly::from_terms(&self.table, terms)
    }

    /// Inverse of [`encode`](Self::encode) on polynomials in the ambient block.
    pub fn decode(&self, p: &Poly) -> Option<Poly> {
        let n = self.source.len();
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let mut v = vec![0; n];
            for (t, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let Some(i) = self.var.iter().position(|&x| x == t) {
                    v[i] += e;
                } else if let Some(i) = self.inv.iter().position(|&x| x == Some(t)) {
                    v[i] -= e;
                } else {
                    return None;
                }
            }
            terms.push((Monomial(v), c.clone()));
        }
        Poly::from_terms(&self.source, terms).ok()
    }

    /// The relations `z*z_inv - 1`.
    pub fn unit_relations(&self) -> Vec<Poly> {
        let n = self.table.len();
        self.inv
            .iter()
            .enumerate()
            .filter_map(|(i, inv)| {
                inv.map(|j| {
                    let mut v = vec![0; n];
                    v[self.var[i]] = 1;
                    v[j] = 1;
                    let mut p = Poly::term(&self.table, v, Rational::one()).unwrap();
                    p = &p - &Poly::one(&self.table);
                    p
                })
            })
            .collect()
    }
}

/// Numerator of `f` lies in the ideal generated by `relations` in the
/// Laurent ring (so `f = 0` in the quotient, denominators being regular).
pub fn vanishes_modulo(f: &Frac, relations: &[Poly]) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let enc = LaurentEncoding::new(f.table(), &[])?;
    let mut gens = enc.unit_relations();
    for r in relations {
        gens.push(enc.encode(r)?);
    }
    let ideal = Ideal::new(&enc.table, gens)?;
    let gb = buchberger(&ideal, MonomialOrder::GrevLex);
    Ok(gb.contains(&enc.encode(f.numerator())?))
}

/// Ambient ring for tag-variable computations: ambient variables, Laurent
/// inverses and one inverse per denominator factor form the eliminated block,
/// followed by the tags.
struct TagRing {
    enc: LaurentEncoding,
    /// (factor index, target variable) for each inverted denominator factor.
    inverted: Vec<(usize, usize)>,
    tags: Arc<VarTable>,
    tag_offset: usize,
}

impl TagRing {
    fn new(ambient: &Frac, factor_ids: &[usize], tag_names: &[String]) -> Result<TagRing> {
        let fs = ambient.factor_set();
        let src = fs.table();
        let mut extra: Vec<String> = Vec::new();
        let mut taken: Vec<String> = src.names().map(str::to_string).chain(tag_names.iter().cloned()).collect();
        for &i in factor_ids {
            let name = fresh_name(&format!("inv_{i}"), &taken);
            taken.push(name.clone());
            extra.push(name);
        }
        // tag names must not collide with ambient names in the combined table
        let mut tag_internal = Vec::new();
        for t in tag_names {
            let name = fresh_name(&format!("tag_{t}"), &taken);
            taken.push(name.clone());
            tag_internal.push(name);
        }
        let mut all = extra.clone();
        all.extend(tag_internal);
        let enc = LaurentEncoding::new(src, &all)?;
        let base = enc.ambient_len();
        let inverted = factor_ids.iter().enumerate().map(|(k, &i)| (i, base + k)).collect();
        let tags = VarTable::polynomial(tag_names.iter().cloned())?;
        Ok(TagRing { tag_offset: base + factor_ids.len(), enc, inverted, tags })
    }

    fn block(&self) -> usize {
        self.tag_offset
    }

    fn var(&self, j: usize) -> Poly {
        Poly::var(&self.enc.table, j)
    }

    /// `num * prod inv_f^k`, the image of `f` in the encoded ring.
    fn encode_frac(&self, f: &Frac) -> Result<Poly> {
        let mut p = self.enc.encode(f.numerator())?;
        for &(i, k) in f.denominator() {
            let (_, j) = self
                .inverted
                .iter()
                .find(|(fi, _)| *fi == i)
                .ok_or_else(|| Error::DenominatorOutsideFactorSet(f.factor_set().factor(i).to_string()))?;
            p = &p * &self.var(*j).pow(k);
        }
        Ok(p)
    }

    fn base_relations(&self, fs: &crate::frac::FactorSet, relations: &[Poly]) -> Result<Vec<Poly>> {
        let mut gens = self.enc.unit_relations();
        for &(i, j) in &self.inverted {
            let f = self.enc.encode(fs.factor(i))?;
            gens.push(&(&f * &self.var(j)) - &Poly::one(&self.enc.table));
        }
        for r in relations {
            gens.push(self.enc.encode(r)?);
        }
        Ok(gens)
    }

    fn to_tags(&self, p: &Poly) -> Option<Poly> {
        let off = self.tag_offset;
        let terms: Option<Vec<_>> = p
            .terms()
            .map(|(m, c)| {
                if m.0[..off].iter().any(|&e| e != 0) {
                    None
                } else {
                    Some((Monomial(m.0[off..].to_vec()), c.clone()))
                }
            })
            .collect();
        Poly::from_terms(&self.tags, terms?).ok()
    }
}

fn used_factors(items: &[&Frac]) -> Vec<usize> {
    let mut ids: Vec<usize> = items
        .iter()
        .flat_map(|f| f.denominator().iter().map(|&(i, _)| i))
        .filter(|&i| items[0].factor_set().kind(i) == &FactorKind::Linear)
        .collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}

fn check_common(images: &[&Frac]) -> Result<()> {
    if let Some(first) = images.first() {
        for f in images {
            if f.factor_set().as_ref() != first.factor_set().as_ref() {
                return Err(Error::FactorSetMismatch);
            }
        }
    }
    Ok(())
}

/// Ideal of all polynomial relations among the tags `t_i -> images[i]`,
/// with `relations` holding in the ambient ring. Denominators are cleared
/// with one inverse variable per distinct factor.
pub fn ring_map_kernel(images: &[(String, Frac)], relations: &[Poly]) -> Result<Ideal> {
    let refs: Vec<&Frac> = images.iter().map(|(_, f)| f).collect();
    if refs.is_empty() {
        return Err(Error::Unsupported("kernel of an empty map".into()));
    }
    check_common(&refs)?;
    let names: Vec<String> = images.iter().map(|(n, _)| n.clone()).collect();
    let factor_ids = used_factors(&refs);
    let ring = TagRing::new(refs[0], &factor_ids, &names)?;
    let fs = refs[0].factor_set();
    let mut gens = ring.base_relations(fs, relations)?;
    for (k, f) in refs.iter().enumerate() {
        let tag = ring.var(ring.tag_offset + k);
        let den = ring.enc.encode(&f.denominator_poly())?;
        let num = ring.enc.encode(f.numerator())?;
        gens.push(&(&tag * &den) - &num);
    }
    let ideal = Ideal::new(&ring.enc.table, gens)?;
    let elim = eliminate(&ideal, ring.block());
    let kernel: Vec<Poly> = elim.iter().map(|p| ring.to_tags(p).expect("eliminated")).collect();
    Ideal::new(&ring.tags, kernel)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubalgebraMembership {
    /// Polynomial in the tags whose image is the queried element.
    Expressible(Poly),
    /// Normal form of the element, which involves ambient variables.
    NotMember(Poly),
}

/// Tag-variable membership tester for the subalgebra generated by a fixed
/// list of elements. The Gröbner basis is computed once.
pub struct SubalgebraTester {
    ring: TagRing,
    gb: GroebnerBasis,
    images: Vec<(String, Frac)>,
    relations: Vec<Poly>,
}

impl SubalgebraTester {
    pub fn new(gens: &[(String, Frac)], relations: &[Poly]) -> Result<Self> {
        let refs: Vec<&Frac> = gens.iter().map(|(_, f)| f).collect();
        if refs.is_empty() {
            return Err(Error::Unsupported("empty generator list".into()));
        }
        check_common(&refs)?;
        let fs = refs[0].factor_set();
        let factor_ids: Vec<usize> =
            (0..fs.len()).filter(|&i| fs.kind(i) == &FactorKind::Linear).collect();
        let names: Vec<String> = gens.iter().map(|(n, _)| n.clone()).collect();
        let ring = TagRing::new(refs[0], &factor_ids, &names)?;
        let mut ideal_gens = ring.base_relations(fs, relations)?;
        for (k, f) in refs.iter().enumerate() {
            let tag = ring.var(ring.tag_offset + k);
            ideal_gens.push(&tag - &ring.encode_frac(f)?);
        }
        let ideal = Ideal::new(&ring.enc.table, ideal_gens)?;
        let gb = buchberger(&ideal, MonomialOrder::BlockElimination(ring.block()));
        Ok(SubalgebraTester { ring, gb, images: gens.to_vec(), relations: relations.to_vec() })
    }

    pub fn tags(&self) -> &Arc<VarTable> {
        &self.ring.tags
    }

    pub fn test(&self, f: &Frac) -> Result<SubalgebraMembership> {
        let p = self.ring.encode_frac(f)?;
        let nf = normal_form(&p, &self.gb);
        Ok(match self.ring.to_tags(&nf) {
            Some(w) => SubalgebraMembership::Expressible(w),
            None => SubalgebraMembership::NotMember(nf),
        })
    }

    /// Evaluates a tag polynomial at the generators.
    pub fn evaluate(&self, w: &Poly) -> Result<Frac> {
        let fs = self.images[0].1.factor_set();
        let m = crate::morphism::RingMorphism::new(
            &self.ring.tags,
            fs,
            self.images.iter().map(|(_, f)| f.clone()).collect(),
            crate::morphism::MorphismKind::Custom,
        )?;
        m.apply(w)
    }

    /// Checks a witness: its evaluation equals `f` modulo the ambient relations.
    pub fn verify(&self, f: &Frac, w: &Poly) -> Result<bool> {
        let val = self.evaluate(w)?;
        vanishes_modulo(&val.try_sub(f)?, &self.relations)
    }
}

/// One-shot tag-variable membership of `f` in the subalgebra generated by `gens`.
pub fn subalgebra_membership(
    f: &Frac,
    gens: &[(String, Frac)],
    relations: &[Poly],
) -> Result<SubalgebraMembership> {
    SubalgebraTester::new(gens, relations)?.test(f)
}

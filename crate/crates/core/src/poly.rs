//! Multivariate Laurent polynomials with exact rational coefficients.
//!
//! Every polynomial carries the [`VarTable`] it lives over. Terms are stored
//! in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded reverse
//! lexicographic order on exponent vectors; iteration in descending order is
//! the canonical printing order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub laurent: bool,
}

/// Ordered list of variables. The order fixes monomial comparison and printing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    vars: Vec<Variable>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarTable {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, bool)>) -> Result<Arc<Self>> {
        let mut out: Vec<Variable> = Vec::new();
        for (name, laurent) in vars {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(Error::InvalidName(name));
            }
            if out.iter().any(|v| v.name == name) {
                return Err(Error::DuplicateVariable(name));
            }
            out.push(Variable { name, laurent });
        }
        Ok(Arc::new(VarTable { vars: out }))
    }

    /// Table with only ordinary (non-Laurent) variables.
    pub fn polynomial<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        Self::new(names.into_iter().map(|n| (n, false)))
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.vars[i].laurent
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.iter().map(|v| v.name.as_str())
    }
}

/// Exponent vector indexed by a [`VarTable`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: i32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if every exponent stays non-negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let v: Vec<i32> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        v.iter().all(|&e| e >= 0).then_some(Monomial(v))
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }
}

/// Graded reverse lexicographic order on `Z^n`.
pub fn grevlex(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite sum of rational multiples of monomials over a fixed table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", crate::print::print_poly(self))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::print_poly(self))
    }
}

impl Poly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Poly { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: Rational) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(table.len()), c);
        }
        p
    }

    pub fn var(table: &Arc<VarTable>, i: usize) -> Self {
        let mut p = Self::zero(table);
        p.terms.insert(Monomial::var(table.len(), i, 1), Rational::one());
        p
    }

    /// Variable by name; panics if absent (for tests and fixed tables).
    pub fn named(table: &Arc<VarTable>, name: &str) -> Self {
        let i = table.index_of(name).unwrap_or_else(|| panic!("no variable `{name}`"));
        Self::var(table, i)
    }

    pub fn term(table: &Arc<VarTable>, exps: Vec<i32>, c: Rational) -> Result<Self> {
        assert_eq!(exps.len(), table.len());
        for (i, &e) in exps.iter().enumerate() {
            if e < 0 && !table.is_laurent(i) {
                return Err(Error::NegativeExponent(table.name(i).to_string()));
            }
        }
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        Ok(p)
    }

    /// Builds from raw terms, summing duplicates. Exponent validity is checked.
    pub fn from_terms(
        table: &Arc<VarTable>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(table);
        for (m, c) in terms {
            assert_eq!(m.0.len(), table.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e < 0 && !table.is_laurent(i) {
                    return Err(Error::NegativeExponent(table.name(i).to_string()));
                }
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn nvars(&self) -> usize {
        self.table.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn same_table(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || *self.table == *other.table
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.same_table(other) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = Poly::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.table);
        }
        Poly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by a monomial; the caller guarantees the result is valid for the table.
    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.table);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Componentwise minimum of the exponents over all terms.
    pub fn min_exponents(&self) -> Vec<i32> {
        let n = self.nvars();
        let mut out: Option<Vec<i32>> = None;
        for m in self.terms.keys() {
            match &mut out {
                None => out = Some(m.0.clone()),
                Some(v) => {
                    for i in 0..n {
                        v[i] = v[i].min(m.0[i]);
                    }
                }
            }
        }
        out.unwrap_or_else(|| vec![0; n])
    }

    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] != 0)
    }

    /// True when every exponent is non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Monomial content is split off first, so Laurent variables behave as units.
    pub fn exact_div(&self, d: &Poly) -> Result<Option<Poly>> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Poly::zero(&self.table)));
        }
        let n = self.nvars();
        let sp = self.min_exponents();
        let sd = d.min_exponents();
        let neg = |v: &[i32]| Monomial(v.iter().map(|e| -e).collect());
        let mut rem = self.mul_monomial(&neg(&sp)).terms;
        let dd = d.mul_monomial(&neg(&sd));
        let (dlm, dlc) = dd.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut quot = BTreeMap::new();
        while let Some((lm, lc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(delta) = lm.div(&dlm) else {
                return Ok(None);
            };
            let c = &lc / &dlc;
            for (m, a) in &dd.terms {
                let key = m.mul(&delta);
                let v = rem.entry(key.clone()).or_insert_with(Rational::zero);
                *v -= a * &c;
                if v.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(delta, c);
        }
        let shift = Monomial((0..n).map(|i| sp[i] - sd[i]).collect());
        let q = Poly { table: self.table.clone(), terms: quot }.mul_monomial(&shift);
        for m in q.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e < 0 && !self.table.is_laurent(i) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(q))
    }

    /// Substitutes a constant for one variable.
    pub fn eval_var(&self, var: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut k = m.clone();
            k.0[var] = 0;
            let factor = if e >= 0 {
                num_traits::pow(value.clone(), e as usize)
            } else {
                if value.is_zero() {
                    panic!("evaluating a negative power at zero");
                }
                num_traits::pow(value.recip(), (-e) as usize)
            };
            out.add_term(k, c * factor);
        }
        out
    }

    /// Moves the polynomial to a different table through an index map
    /// (`map[i]` is the target index of source variable `i`).
    pub fn reindex(&self, target: &Arc<VarTable>, map: &[usize]) -> Result<Poly> {
        let n = target.len();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut v = vec![0; n];
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    v[map[i]] += e;
                }
            }
            (Monomial(v), c.clone())
        });
        Poly::from_terms(target, terms)
    }

    /// Coefficient polynomials of the powers of `var`: `self = sum_k var^k * coeff[k]`.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut k = m.clone();
            let e = k.0[var];
            k.0[var] = 0;
            out.entry(e).or_insert_with(|| Poly::zero(&self.table)).add_term(k, c.clone());
        }
        out
    }

    /// Groups terms by their exponents on the given variables.
    pub fn split_by(&self, vars: &[usize]) -> BTreeMap<Vec<i32>, Poly> {
        let mut out: BTreeMap<Vec<i32>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<i32> = vars.iter().map(|&v| m.0[v]).collect();
            let mut k = m.clone();
            for &v in vars {
                k.0[v] = 0;
            }
            out.entry(key).or_insert_with(|| Poly::zero(&self.table)).add_term(k, c.clone());
        }
        out
    }

    /// Largest coefficient numerator or denominator, in absolute value.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.numer().abs().max(c.denom().abs()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Sign-normalized primitive form: integer coefficients with gcd 1 and a
    /// positive leading coefficient. Returns the scalar `s` with `self = s * result`.
    pub fn primitive(&self) -> (Rational, Poly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        use num_integer::Integer;
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        let mut s = Rational::new(g, l);
        if self.leading_term().unwrap().1.is_negative() {
            s = -s;
        }
        (s.clone(), self.scale(&s.recip()))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("variable table mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("variable table mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("variable table mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

//! Rational functions whose denominators are products of declared factors.
//!
//! A [`FactorSet`] lists irreducible denominators (linear forms in ordinary
//! variables, or Laurent monomials). A [`Frac`] is a numerator over a
//! multiset of those factors, kept fully reduced: no denominator factor
//! divides the numerator. Since the factors are pairwise non-associate
//! primes of a Laurent polynomial ring, the reduced form is unique and
//! structural equality is equality of rational functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational, VarTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// Units of the Laurent ring; never kept in a reduced denominator.
    LaurentMonomial,
    Linear,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    table: Arc<VarTable>,
    factors: Vec<Poly>,
    kinds: Vec<FactorKind>,
}

impl FactorSet {
    pub fn new(table: &Arc<VarTable>, factors: impl IntoIterator<Item = Poly>) -> Result<Arc<Self>> {
        let mut out = FactorSet { table: table.clone(), factors: vec![], kinds: vec![] };
        for f in factors {
            out.push(f)?;
        }
        Ok(Arc::new(out))
    }

    pub fn empty(table: &Arc<VarTable>) -> Arc<Self> {
        Arc::new(FactorSet { table: table.clone(), factors: vec![], kinds: vec![] })
    }

    fn push(&mut self, f: Poly) -> Result<()> {
        if !f.same_table(&Poly::zero(&self.table)) {
            return Err(Error::TableMismatch);
        }
        let text = f.to_string();
        if f.is_zero() || f.as_constant().is_some() {
            return Err(Error::InvalidFactor(text, "constant"));
        }
        let (_, f) = f.primitive();
        let kind = if f.len() == 1 {
            let (m, _) = f.leading_term().unwrap();
            let laurent_only = m.0.iter().enumerate().all(|(i, &e)| e == 0 || self.table.is_laurent(i));
            let single_var = m.0.iter().filter(|&&e| e != 0).count() == 1 && m.degree() == 1;
            if laurent_only {
                FactorKind::LaurentMonomial
            } else if single_var {
                FactorKind::Linear
            } else {
                return Err(Error::InvalidFactor(text, "monomial factors must be a single variable"));
            }
        } else {
            let linear = f.terms().all(|(m, _)| {
                m.degree() == 1
                    && m.0.iter().enumerate().all(|(i, &e)| e >= 0 && (e == 0 || !self.table.is_laurent(i)))
            });
            if !linear {
                return Err(Error::InvalidFactor(text, "expected a linear form in non-Laurent variables"));
            }
            FactorKind::Linear
        };
        if self.factors.contains(&f) {
            return Err(Error::InvalidFactor(text, "proportional to an existing factor"));
        }
        self.factors.push(f);
        self.kinds.push(kind);
        Ok(())
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor(&self, i: usize) -> &Poly {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn kind(&self, i: usize) -> &FactorKind {
        &self.kinds[i]
    }

    /// Index of the factor equal to `p` up to a nonzero scalar.
    pub fn index_of(&self, p: &Poly) -> Option<usize> {
        if p.is_zero() {
            return None;
        }
        let (_, q) = p.primitive();
        self.factors.iter().position(|f| *f == q)
    }

    /// Writes `p = c * z^m * prod f_i^{k_i}` over the linear factors, if possible.
    pub fn decompose(&self, p: &Poly) -> Option<(Rational, Monomial, Vec<(usize, u32)>)> {
        if p.is_zero() {
            return None;
        }
        let mut rest = p.clone();
        let mut exps = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            if self.kinds[i] != FactorKind::Linear {
                continue;
            }
            let mut k = 0u32;
            loop {
                match rest.exact_div(f).ok().flatten() {
                    Some(q) => {
                        rest = q;
                        k += 1;
                    }
                    None => break,
                }
            }
            if k > 0 {
                exps.push((i, k));
            }
        }
        if rest.len() != 1 {
            return None;
        }
        let (m, c) = rest.leading_term().unwrap();
        let unit = m.0.iter().enumerate().all(|(i, &e)| e == 0 || self.table.is_laurent(i));
        unit.then(|| (c.clone(), m.clone(), exps))
    }

    pub(crate) fn same(&self, other: &FactorSet) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

/// `numerator / prod factor_i^{k_i}`, fully reduced.
#[derive(Clone, PartialEq, Eq)]
pub struct Frac {
    factors: Arc<FactorSet>,
    num: Poly,
    den: Vec<(usize, u32)>,
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frac({})", crate::print::print_canonical(self))
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::print_canonical(self))
    }
}

fn merge(a: &[(usize, u32)], b: &[(usize, u32)]) -> Vec<(usize, u32)> {
    let mut out: Vec<(usize, u32)> = a.to_vec();
    for &(i, k) in b {
        match out.iter_mut().find(|(j, _)| *j == i) {
            Some(e) => e.1 += k,
            None => out.push((i, k)),
        }
    }
    out.sort_unstable();
    out
}

impl Frac {
    /// Builds and reduces `num / prod f_i^{k_i}`.
    pub fn new(factors: &Arc<FactorSet>, num: Poly, den: Vec<(usize, u32)>) -> Result<Frac> {
        if !num.same_table(&Poly::zero(factors.table())) {
            return Err(Error::TableMismatch);
        }
        let mut den: Vec<(usize, u32)> = merge(&[], &den).into_iter().filter(|&(_, k)| k > 0).collect();
        if den.iter().any(|&(i, _)| i >= factors.len()) {
            return Err(Error::InvalidFactor(format!("#{}", den.last().unwrap().0), "index out of range"));
        }
        let mut num = num;
        // Laurent monomial factors are units: move them into the numerator.
        den.retain(|&(i, k)| {
            if factors.kind(i) == &FactorKind::LaurentMonomial {
                let (m, _) = factors.factor(i).leading_term().unwrap();
                let inv = Monomial(m.0.iter().map(|&e| -e * k as i32).collect());
                num = num.mul_monomial(&inv);
                false
            } else {
                true
            }
        });
        let mut f = Frac { factors: factors.clone(), num, den };
        f.reduce();
        Ok(f)
    }

    pub fn from_poly(factors: &Arc<FactorSet>, p: Poly) -> Frac {
        Frac { factors: factors.clone(), num: p, den: vec![] }
    }

    pub fn zero(factors: &Arc<FactorSet>) -> Frac {
        Self::from_poly(factors, Poly::zero(factors.table()))
    }

    pub fn one(factors: &Arc<FactorSet>) -> Frac {
        Self::from_poly(factors, Poly::one(factors.table()))
    }

    pub fn constant(factors: &Arc<FactorSet>, c: Rational) -> Frac {
        Self::from_poly(factors, Poly::constant(factors.table(), c))
    }

    pub fn var(factors: &Arc<FactorSet>, i: usize) -> Frac {
        Self::from_poly(factors, Poly::var(factors.table(), i))
    }

    pub fn named(factors: &Arc<FactorSet>, name: &str) -> Frac {
        Self::from_poly(factors, Poly::named(factors.table(), name))
    }

    /// Cancels every denominator factor that divides the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (i, k) in self.den.iter_mut() {
            let f = self.factors.factor(*i);
            while *k > 0 {
                match self.num.exact_div(f).expect("same table") {
                    Some(q) => {
                        self.num = q;
                        *k -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|&(_, k)| k > 0);
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &[(usize, u32)] {
        &self.den
    }

    pub fn denominator_poly(&self) -> Poly {
        let t = self.factors.table();
        self.den
            .iter()
            .fold(Poly::one(t), |acc, &(i, k)| &acc * &self.factors.factor(i).pow(k))
    }

    pub fn factor_set(&self) -> &Arc<FactorSet> {
        &self.factors
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.factors.table()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The numerator, if the denominator is empty.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn check(&self, other: &Frac) -> Result<()> {
        if self.factors.same(&other.factors) {
            Ok(())
        } else {
            Err(Error::FactorSetMismatch)
        }
    }

    fn lift_to(&self, den: &[(usize, u32)]) -> Poly {
        let t = self.factors.table();
        let mut out = self.num.clone();
        for &(i, k) in den {
            let have = self.den.iter().find(|(j, _)| *j == i).map_or(0, |e| e.1);
            if k > have {
                out = &out * &self.factors.factor(i).pow(k - have);
            }
        }
        debug_assert!(out.same_table(&Poly::zero(t)));
        out
    }

    fn common_den(&self, other: &Frac) -> Vec<(usize, u32)> {
        let mut out = self.den.clone();
        for &(i, k) in &other.den {
            match out.iter_mut().find(|(j, _)| *j == i) {
                Some(e) => e.1 = e.1.max(k),
                None => out.push((i, k)),
            }
        }
        out.sort_unstable();
        out
    }

    pub fn try_add(&self, other: &Frac) -> Result<Frac> {
        self.check(other)?;
        let den = self.common_den(other);
        let num = &self.lift_to(&den) + &other.lift_to(&den);
        let mut f = Frac { factors: self.factors.clone(), num, den };
        f.reduce();
        Ok(f)
    }

    pub fn try_sub(&self, other: &Frac) -> Result<Frac> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Frac) -> Result<Frac> {
        self.check(other)?;
        let mut f = Frac {
            factors: self.factors.clone(),
            num: &self.num * &other.num,
            den: merge(&self.den, &other.den),
        };
        f.reduce();
        Ok(f)
    }

    fn neg_ref(&self) -> Frac {
        Frac { factors: self.factors.clone(), num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Frac {
        if c.is_zero() {
            return Frac::zero(&self.factors);
        }
        Frac { factors: self.factors.clone(), num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplicative inverse inside the localization, when the numerator is a
    /// unit times a product of declared factors.
    pub fn inverse(&self) -> Result<Frac> {
        let (c, m, exps) = self
            .factors
            .decompose(&self.num)
            .ok_or_else(|| Error::NotInvertible(self.to_string()))?;
        let inv_m = Monomial(m.0.iter().map(|e| -e).collect());
        let num = self.denominator_poly().mul_monomial(&inv_m).scale(&c.recip());
        Frac::new(&self.factors, num, exps)
    }

    pub fn pow(&self, e: i32) -> Result<Frac> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let e = e as u32;
        Ok(Frac {
            factors: self.factors.clone(),
            num: self.num.pow(e),
            den: self.den.iter().map(|&(i, k)| (i, k * e)).collect(),
        }
        .reduced())
    }

    fn reduced(mut self) -> Frac {
        self.reduce();
        self
    }

    /// `self / d`: succeeds when `d` is invertible in the localization or
    /// when `d` is a polynomial dividing the numerator exactly.
    pub fn try_div(&self, d: &Frac) -> Result<Frac> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Ok(inv) = d.inverse() {
            return self.try_mul(&inv);
        }
        // d = n/D with n not a unit: need n | self.num.
        if let Some(q) = self.num.exact_div(&d.num)? {
            let f = Frac { factors: self.factors.clone(), num: q, den: self.den.clone() };
            let dd = Frac { factors: self.factors.clone(), num: d.denominator_poly(), den: vec![] };
            return f.try_mul(&dd);
        }
        Err(Error::DenominatorOutsideFactorSet(d.num.to_string()))
    }

    /// Moves to another factor set over the same table.
    pub fn rebase(&self, factors: &Arc<FactorSet>) -> Result<Frac> {
        if !self.num.same_table(&Poly::zero(factors.table())) {
            return Err(Error::TableMismatch);
        }
        let mut den = vec![];
        for &(i, k) in &self.den {
            let j = factors
                .index_of(self.factors.factor(i))
                .ok_or_else(|| Error::DenominatorOutsideFactorSet(self.factors.factor(i).to_string()))?;
            den.push((j, k));
        }
        // Factor normalization is identical in both sets, so no rescaling is needed.
        Frac::new(factors, self.num.clone(), den)
    }

    /// Clears denominators: returns the numerator times each factor's missing power.
    pub fn cross_multiplied(&self, other: &Frac) -> Result<(Poly, Poly)> {
        self.check(other)?;
        Ok((&self.num * &other.denominator_poly(), &other.num * &self.denominator_poly()))
    }

    /// Total exponent of factor `i` in the denominator.
    pub fn denominator_power(&self, i: usize) -> u32 {
        self.den.iter().find(|(j, _)| *j == i).map_or(0, |e| e.1)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }
}

impl Add for &Frac {
    type Output = Frac;
    fn add(self, rhs: &Frac) -> Frac {
        self.try_add(rhs).expect("factor set mismatch")
    }
}

impl Sub for &Frac {
    type Output = Frac;
    fn sub(self, rhs: &Frac) -> Frac {
        self.try_sub(rhs).expect("factor set mismatch")
    }
}

impl Mul for &Frac {
    type Output = Frac;
    fn mul(self, rhs: &Frac) -> Frac {
        self.try_mul(rhs).expect("factor set mismatch")
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        self.neg_ref()
    }
}

impl Add for Frac {
    type Output = Frac;
    fn add(self, rhs: Frac) -> Frac {
        &self + &rhs
    }
}

impl Sub for Frac {
    type Output = Frac;
    fn sub(self, rhs: Frac) -> Frac {
        &self - &rhs
    }
}

impl Mul for Frac {
    type Output = Frac;
    fn mul(self, rhs: Frac) -> Frac {
        &self * &rhs
    }
}

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        self.neg_ref()
    }
}

/// Same value check that does not rely on the reduced form: clears both
/// denominators and compares polynomials.
pub fn same_value(a: &Frac, b: &Frac) -> Result<bool> {
    let (x, y) = a.cross_multiplied(b)?;
    Ok(x == y)
}

impl Frac {
    pub fn is_unit_scalar(&self) -> bool {
        self.as_constant().is_some_and(|c| !c.is_zero())
    }

    pub fn one_like(&self) -> Frac {
        Frac::one(&self.factors)
    }

    pub fn constant_like(&self, c: i64) -> Frac {
        Frac::constant(&self.factors, Rational::from_integer(c.into()))
    }

    pub fn is_constant_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

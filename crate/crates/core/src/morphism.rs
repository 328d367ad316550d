//! Ring homomorphisms given by variable substitutions.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frac::{FactorSet, Frac};
use crate::poly::{Monomial, Poly, Rational, VarTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismKind {
    Identity,
    Weyl,
    Translation,
    EulerSection,
    SectionHomomorphism,
    Custom,
}

/// Substitution `x_i -> images[i]` from `source` into fractions over `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMorphism {
    source: Arc<VarTable>,
    target: Arc<FactorSet>,
    images: Vec<Frac>,
    pub kind: MorphismKind,
}

impl RingMorphism {
    pub fn new(
        source: &Arc<VarTable>,
        target: &Arc<FactorSet>,
        images: Vec<Frac>,
        kind: MorphismKind,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::MissingImage(
                source.name(images.len().min(source.len().saturating_sub(1))).to_string(),
            ));
        }
        for img in &images {
            if !img.factor_set().as_ref().eq(target.as_ref()) {
                return Err(Error::FactorSetMismatch);
            }
        }
        Ok(RingMorphism { source: source.clone(), target: target.clone(), images, kind })
    }

    /// Identity on the factor set's table.
    pub fn identity(fs: &Arc<FactorSet>) -> Self {
        let t = fs.table();
        let images = (0..t.len()).map(|i| Frac::var(fs, i)).collect();
        RingMorphism { source: t.clone(), target: fs.clone(), images, kind: MorphismKind::Identity }
    }

    /// Starts from the identity (same table) and overrides named variables.
    pub fn with_images(fs: &Arc<FactorSet>, overrides: Vec<(usize, Frac)>, kind: MorphismKind) -> Self {
        let mut m = Self::identity(fs);
        for (i, f) in overrides {
            m.images[i] = f;
        }
        m.kind = kind;
        m
    }

    pub fn source(&self) -> &Arc<VarTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FactorSet> {
        &self.target
    }

    pub fn images(&self) -> &[Frac] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Frac {
        &self.images[i]
    }

    /// Image of a polynomial; the result is fully reduced.
    pub fn apply(&self, p: &Poly) -> Result<Frac> {
        substitute(p, self)
    }

    /// Image of a fraction whose table is the source table.
    pub fn apply_frac(&self, f: &Frac) -> Result<Frac> {
        let num = substitute(f.numerator(), self)?;
        let mut acc = num;
        for &(i, k) in f.denominator() {
            let img = substitute(f.factor_set().factor(i), self)?;
            if img.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let inv = img.inverse()?;
            acc = acc.try_mul(&inv.pow(k as i32)?)?;
        }
        Ok(acc)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &RingMorphism) -> Result<RingMorphism> {
        if !Arc::ptr_eq(self.target.table(), other.source()) && **self.target.table() != **other.source() {
            return Err(Error::TableMismatch);
        }
        let images = self.images.iter().map(|f| other.apply_frac(f)).collect::<Result<Vec<_>>>()?;
        Ok(RingMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
            kind: MorphismKind::Custom,
        })
    }
}

/// Numerator and denominator exponents of `image^e` before reduction.
struct Power {
    num: Poly,
    den: Vec<u32>,
}

fn image_power(m: &RingMorphism, var: usize, e: i32, inverses: &mut HashMap<usize, Frac>) -> Result<Power> {
    let base = if e >= 0 {
        m.images[var].clone()
    } else {
        if !inverses.contains_key(&var) {
            let img = &m.images[var];
            if img.is_zero() {
                return Err(Error::NotInvertible(format!("image of {}", m.source.name(var))));
            }
            inverses.insert(var, img.inverse()?);
        }
        inverses[&var].clone()
    };
    let k = e.unsigned_abs();
    let mut den = vec![0u32; m.target.len()];
    for &(i, d) in base.denominator() {
        den[i] += d * k;
    }
    Ok(Power { num: base.numerator().pow(k), den })
}

/// Image `c * x^a` of a variable that can be applied by moving exponents.
struct MonomialImage {
    coef: Rational,
    exps: Vec<i32>,
}

fn monomial_image(m: &RingMorphism, var: usize) -> Option<MonomialImage> {
    let img = &m.images[var];
    let p = img.as_poly()?;
    if p.len() != 1 {
        return None;
    }
    let (mono, c) = p.leading_term()?;
    let t = m.target.table();
    // a negative source power must stay a valid exponent in the target
    if m.source.is_laurent(var) && mono.0.iter().enumerate().any(|(i, &e)| e != 0 && !t.is_laurent(i)) {
        return None;
    }
    Some(MonomialImage { coef: c.clone(), exps: mono.0.clone() })
}

/// Applies a substitution to a polynomial, reducing once at the end.
///
/// Variables with monomial images are moved directly; the rest are grouped
/// so each distinct power product is substituted once.
pub fn substitute(p: &Poly, m: &RingMorphism) -> Result<Frac> {
    if !p.same_table(&Poly::zero(m.source())) {
        return Err(Error::TableMismatch);
    }
    let fs = &m.target;
    let t = fs.table();
    let nf = fs.len();
    let n = m.source.len();
    let simple: Vec<Option<MonomialImage>> = (0..n).map(|v| monomial_image(m, v)).collect();
    let complex: Vec<usize> = (0..n).filter(|&v| simple[v].is_none()).collect();

    let mut cache: HashMap<(usize, i32), Power> = HashMap::new();
    let mut inverses: HashMap<usize, Frac> = HashMap::new();
    let mut terms: Vec<(Poly, Vec<u32>)> = Vec::new();
    for (key, coeff) in p.split_by(&complex) {
        let mut mapped = Poly::zero(t);
        for (mono, c) in coeff.terms() {
            let mut exps = vec![0i32; t.len()];
            let mut c = c.clone();
            for (var, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = simple[var].as_ref().expect("simple variable");
                c *= if e >= 0 {
                    num_traits::pow(img.coef.clone(), e as usize)
                } else {
                    num_traits::pow(img.coef.recip(), (-e) as usize)
                };
                for (x, &a) in exps.iter_mut().zip(&img.exps) {
                    *x += a * e;
                }
            }
            mapped.add_term(Monomial(exps), c);
        }
        let mut num = mapped;
        let mut den = vec![0u32; nf];
        for (&var, &e) in complex.iter().zip(&key) {
            if e == 0 {
                continue;
            }
            if !cache.contains_key(&(var, e)) {
                let pw = image_power(m, var, e, &mut inverses)?;
                cache.insert((var, e), pw);
            }
            let pw = &cache[&(var, e)];
            num = &num * &pw.num;
            for (d, x) in den.iter_mut().zip(&pw.den) {
                *d += x;
            }
        }
        terms.push((num, den));
    }
    let mut common = vec![0u32; nf];
    for (_, den) in &terms {
        for (c, d) in common.iter_mut().zip(den) {
            *c = (*c).max(*d);
        }
    }
    let mut total = Poly::zero(t);
    let mut factor_powers: HashMap<(usize, u32), Poly> = HashMap::new();
    for (num, den) in terms {
        let mut lifted = num;
        for i in 0..nf {
            let missing = common[i] - den[i];
            if missing > 0 {
                let f = factor_powers.entry((i, missing)).or_insert_with(|| fs.factor(i).pow(missing));
                lifted = &lifted * f;
            }
        }
        total = &total + &lifted;
    }
    let den = common.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (i, k)).collect();
    Frac::new(fs, total, den)
}

/// Substitution `var -> value` for a single variable, identity elsewhere.
pub fn substitute_var(f: &Frac, var: usize, value: &Frac) -> Result<Frac> {
    let m = RingMorphism::with_images(f.factor_set(), vec![(var, value.clone())], MorphismKind::Custom);
    m.apply_frac(f)
}

/// Monomial `z^m` as a fraction.
pub fn monomial_frac(fs: &Arc<FactorSet>, exps: Vec<i32>) -> Result<Frac> {
    Ok(Frac::from_poly(fs, Poly::term(fs.table(), exps, num_traits::One::one())?))
}

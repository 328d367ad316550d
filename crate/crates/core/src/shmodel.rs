//! Equivariant cohomology of the representation ball, `Q[mu, eta]`, and its
//! localization at the Seidel operators `psi_nu = mu + <nu, eta>`.
//!
//! The section homomorphism sends a Coulomb branch element to the
//! localization by evaluating `z` at the Euler section in `eta`. An image
//! with no denominator lies in the image of the acceleration map.

use std::fmt;
use std::sync::Arc;

use crate::coulomb::{Coulomb, SectionSpec};
use crate::error::{Error, Result};
use crate::frac::{FactorSet, Frac};
use crate::morphism::{MorphismKind, RingMorphism};
use crate::poly::{rat, Poly, VarTable};
use crate::print::print_canonical;
use crate::rootdata::{linear_form, CoulombProblem};

/// The localized ring `Q[mu, eta][psi_nu^-1]`.
#[derive(Clone, Debug)]
pub struct ShModel {
    pub problem: CoulombProblem,
    pub factors: Arc<FactorSet>,
    pub mu: usize,
    pub eta: Vec<usize>,
    /// Distinct weights with the FactorSet index of their psi.
    pub psi: Vec<(Vec<i32>, usize)>,
    /// `eta_k -> -eta_k` for each SU(2) block.
    pub weyl: Vec<RingMorphism>,
}

impl ShModel {
    pub fn new(problem: &CoulombProblem) -> Result<Self> {
        let r = problem.rank();
        let mut names = vec!["mu".to_string()];
        names.extend((0..r).map(|i| problem.eta_name(i)));
        let table = VarTable::polynomial(names)?;
        let eta: Vec<usize> = (1..=r).collect();
        let mut psi = Vec::new();
        let mut factors = Vec::new();
        for w in problem.distinct_weights() {
            psi.push((w.clone(), factors.len()));
            factors.push(linear_form(&table, 0, &eta, &w));
        }
        let fs = FactorSet::new(&table, factors)?;
        let weyl = problem
            .datum
            .su2_coordinates()
            .map(|k| {
                let img = Frac::var(&fs, eta[k]).scale(&rat(-1));
                RingMorphism::with_images(&fs, vec![(eta[k], img)], MorphismKind::Weyl)
            })
            .collect();
        Ok(ShModel { problem: problem.clone(), factors: fs, mu: 0, eta, psi, weyl })
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.factors.table()
    }

    pub fn parse(&self, text: &str) -> Result<Frac> {
        crate::parse::parse_expression(text, &self.factors)
    }

    /// `mu + <nu, eta>`.
    pub fn seidel_operator(&self, nu: &[i32]) -> Result<Poly> {
        if nu.len() != self.eta.len() {
            return Err(Error::InvalidProblem(format!("weight {nu:?} has the wrong length")));
        }
        Ok(linear_form(self.table(), self.mu, &self.eta, nu))
    }

    /// `s_Delta`, the product of the Seidel operators over all weights.
    pub fn diagonal_seidel(&self) -> Poly {
        self.problem
            .weights
            .iter()
            .fold(Poly::one(self.table()), |acc, nu| &acc * &self.seidel_operator(nu).expect("valid weight"))
    }

    /// The inverted elements, one per distinct weight.
    pub fn inverted(&self) -> &[Poly] {
        self.factors.factors()
    }

    /// For each inverted `psi`, the cofactor `c` with `psi * c = s_Delta`,
    /// so `psi^-1 = c * s_Delta^-1` lies in the `s_Delta` localization.
    pub fn localization_witnesses(&self) -> Result<Vec<(Poly, Poly)>> {
        let sd = self.diagonal_seidel();
        self.inverted()
            .iter()
            .map(|p| {
                let c = sd
                    .exact_div(p)?
                    .ok_or_else(|| Error::NotInvertible(format!("{p} does not divide s_Delta")))?;
                Ok((p.clone(), c))
            })
            .collect()
    }

    /// `z_i -> prod_nu psi_nu(eta, mu)^{nu_i}`.
    pub fn euler_section(&self) -> Result<SectionSpec> {
        SectionSpec::from_weights(&self.factors, self.mu, &self.eta, &self.problem.weights)
    }

    /// Substitution from the Coulomb ambient ring: `z -> s(eta)`, `tau -> eta`,
    /// `mu -> mu`, `u_k -> (s_k - 1)/eta_k`.
    pub fn section_morphism(&self, c: &Coulomb) -> Result<RingMorphism> {
        let a = c.ambient();
        if a.problem != self.problem {
            return Err(Error::InvalidProblem("section homomorphism between different problems".into()));
        }
        let s = self.euler_section()?;
        let mut images = vec![Frac::zero(&self.factors); a.table().len()];
        images[a.mu] = Frac::var(&self.factors, self.mu);
        for k in 0..self.problem.rank() {
            images[a.z[k]] = s.entries[k].clone();
            let eta = Frac::var(&self.factors, self.eta[k]);
            images[a.tau[k]] = eta.clone();
            if let Some(u) = a.u[k] {
                images[u] = s.entries[k].try_sub(&Frac::one(&self.factors))?.try_div(&eta)?;
            }
        }
        RingMorphism::new(a.table(), &self.factors, images, MorphismKind::SectionHomomorphism)
    }

    /// The section homomorphism applied to a Coulomb element.
    pub fn section_homomorphism(&self, c: &Coulomb, f: &Frac) -> Result<Frac> {
        let m = self.section_morphism(c)?;
        self.apply_section(&m, c, f)
    }

    fn apply_section(&self, m: &RingMorphism, c: &Coulomb, f: &Frac) -> Result<Frac> {
        let g = c.normal_form(f)?;
        m.apply_frac(&g).map_err(|e| match e {
            Error::NotInvertible(s) => Error::DenominatorOutsideFactorSet(s),
            other => other,
        })
    }

    /// Empty denominator: the element comes from `H*` under the acceleration map.
    pub fn acceleration_membership(g: &Frac) -> bool {
        g.is_polynomial()
    }

    /// Images of the generators, acceleration checks and multiplicativity on all pairs.
    pub fn verify_diagram(&self, c: &Coulomb, gens: &[(String, Frac)]) -> Result<DiagramReport> {
        let m = self.section_morphism(c)?;
        let mut entries = Vec::new();
        let mut images = Vec::new();
        for (name, g) in gens {
            let img = self.apply_section(&m, c, g)?;
            entries.push(DiagramEntry {
                name: name.clone(),
                accelerated: Self::acceleration_membership(&img),
                image: img.clone(),
            });
            images.push(img);
        }
        let mut products = Vec::new();
        for i in 0..gens.len() {
            for j in i..gens.len() {
                let prod = c.mul(&gens[i].1, &gens[j].1)?;
                let lhs = self.apply_section(&m, c, &prod)?;
                let rhs = images[i].try_mul(&images[j])?;
                products.push(ProductCheck { left: i, right: j, multiplicative: lhs == rhs });
            }
        }
        let passed = entries.iter().all(|e| e.accelerated) && products.iter().all(|p| p.multiplicative);
        Ok(DiagramReport { entries, products, passed })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramEntry {
    pub name: String,
    pub image: Frac,
    pub accelerated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCheck {
    pub left: usize,
    pub right: usize,
    pub multiplicative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub entries: Vec<DiagramEntry>,
    pub products: Vec<ProductCheck>,
    pub passed: bool,
}

impl fmt::Display for DiagramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let status = if e.accelerated { "ok" } else { "FAIL" };
            writeln!(f, "S({}) = {}  [{}]", e.name, print_canonical(&e.image), status)?;
        }
        let bad: Vec<String> = self
            .products
            .iter()
            .filter(|p| !p.multiplicative)
            .map(|p| format!("{}*{}", self.entries[p.left].name, self.entries[p.right].name))
            .collect();
        if bad.is_empty() {
            writeln!(f, "multiplicative on {} pairs", self.products.len())?;
        } else {
            writeln!(f, "not multiplicative on: {}", bad.join(", "))?;
        }
        write!(f, "{}", if self.passed { "diagram commutes" } else { "diagram fails" })
    }
}

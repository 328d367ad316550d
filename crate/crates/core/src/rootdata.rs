//! Group data for `G = T^a x SU(2)^b`, the weights of the representation and
//! the rings they induce.
//!
//! Coordinates are numbered torus first, then one coordinate per SU(2) block.
//! Block `k` contributes the root `tau_k` with coroot `e_k` and the blowup
//! variable `u_k = (z_k - 1)/tau_k`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frac::{FactorSet, Frac};
use crate::morphism::{MorphismKind, RingMorphism};
use crate::poly::{rat, Poly, Rational, VarTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coefficients of the root as a linear form in the tau variables.
    pub form: Vec<i32>,
    /// Exponent vector of the coroot on the z variables.
    pub coroot: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub torus_rank: usize,
    pub su2_blocks: usize,
    pub roots: Vec<Root>,
}

impl RootDatum {
    pub fn new(torus_rank: usize, su2_blocks: usize) -> Result<Self> {
        let r = torus_rank + su2_blocks;
        if r == 0 {
            return Err(Error::InvalidProblem("rank must be positive".into()));
        }
        let roots = (torus_rank..r)
            .map(|k| {
                let mut e = vec![0; r];
                e[k] = 1;
                Root { form: e.clone(), coroot: e }
            })
            .collect();
        Ok(RootDatum { torus_rank, su2_blocks, roots })
    }

    pub fn rank(&self) -> usize {
        self.torus_rank + self.su2_blocks
    }

    /// Coordinates carrying an SU(2) block.
    pub fn su2_coordinates(&self) -> impl Iterator<Item = usize> + '_ {
        self.torus_rank..self.rank()
    }

    pub fn is_su2(&self, coord: usize) -> bool {
        coord >= self.torus_rank && coord < self.rank()
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> usize {
        1 << self.su2_blocks
    }
}

fn indexed(base: &str, r: usize, i: usize) -> String {
    if r == 1 {
        base.to_string()
    } else {
        format!("{base}{}", i + 1)
    }
}

/// A group together with the weights of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoulombProblem {
    pub datum: RootDatum,
    pub weights: Vec<Vec<i32>>,
}

impl CoulombProblem {
    pub fn new(torus_rank: usize, su2_blocks: usize, weights: Vec<Vec<i32>>) -> Result<Self> {
        let datum = RootDatum::new(torus_rank, su2_blocks)?;
        let r = datum.rank();
        for w in &weights {
            if w.len() != r {
                return Err(Error::InvalidProblem(format!(
                    "weight {w:?} has length {}, expected {r}",
                    w.len()
                )));
            }
        }
        for k in datum.su2_coordinates() {
            let mut flipped: Vec<Vec<i32>> = weights
                .iter()
                .map(|w| {
                    let mut v = w.clone();
                    v[k] = -v[k];
                    v
                })
                .collect();
            let mut orig = weights.clone();
            flipped.sort();
            orig.sort();
            if flipped != orig {
                return Err(Error::InvalidProblem(format!(
                    "weights are not stable under the Weyl reflection of coordinate {}",
                    k + 1
                )));
            }
        }
        Ok(CoulombProblem { datum, weights })
    }

    pub fn torus(rank: usize, weights: Vec<Vec<i32>>) -> Result<Self> {
        Self::new(rank, 0, weights)
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn is_abelian(&self) -> bool {
        self.datum.su2_blocks == 0
    }

    /// Distinct weights in order of first appearance.
    pub fn distinct_weights(&self) -> Vec<Vec<i32>> {
        let mut out: Vec<Vec<i32>> = Vec::new();
        for w in &self.weights {
            if !out.contains(w) {
                out.push(w.clone());
            }
        }
        out
    }

    pub fn multiplicity(&self, w: &[i32]) -> usize {
        self.weights.iter().filter(|v| v.as_slice() == w).count()
    }

    pub fn z_name(&self, i: usize) -> String {
        indexed("z", self.rank(), i)
    }

    pub fn tau_name(&self, i: usize) -> String {
        indexed("tau", self.rank(), i)
    }

    pub fn eta_name(&self, i: usize) -> String {
        indexed("eta", self.rank(), i)
    }

    pub fn u_name(&self, i: usize) -> String {
        indexed("u", self.rank(), i)
    }

    pub fn v_name(&self, i: usize) -> String {
        indexed("v", self.rank(), i)
    }

    /// Human-readable description of the root convention in force.
    pub fn root_convention(&self) -> &'static str {
        "alpha = tau_k per SU(2) block, u_k = (z_k - 1)/tau_k"
    }
}

/// Ambient ring of a problem: the table, its FactorSet and variable indices.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub problem: CoulombProblem,
    pub factors: Arc<FactorSet>,
    pub z: Vec<usize>,
    pub tau: Vec<usize>,
    pub mu: usize,
    /// `u[k]` is the blowup variable of coordinate `k`, when that coordinate is an SU(2) block.
    pub u: Vec<Option<usize>>,
    /// Index of each distinct weight's psi in the FactorSet.
    pub psi: Vec<(Vec<i32>, usize)>,
}

impl Ambient {
    pub fn table(&self) -> &Arc<VarTable> {
        self.factors.table()
    }

    pub fn var(&self, i: usize) -> Frac {
        Frac::var(&self.factors, i)
    }

    pub fn poly_var(&self, i: usize) -> Poly {
        Poly::var(self.table(), i)
    }

    /// `mu + <nu, tau>` over the ambient table.
    pub fn psi_poly(&self, nu: &[i32]) -> Poly {
        linear_form(self.table(), self.mu, &self.tau, nu)
    }

    pub fn psi_index(&self, nu: &[i32]) -> Option<usize> {
        self.psi.iter().find(|(w, _)| w.as_slice() == nu).map(|(_, i)| *i)
    }

    pub fn has_blowup(&self) -> bool {
        self.u.iter().any(Option::is_some)
    }

    pub fn u_vars(&self) -> Vec<usize> {
        self.u.iter().flatten().copied().collect()
    }

    /// The blowup relations `tau_k*u_k - z_k + 1`.
    pub fn blowup_relations(&self) -> Vec<Poly> {
        let t = self.table();
        (0..self.problem.rank())
            .filter_map(|k| {
                self.u[k].map(|u| {
                    &(&(&self.poly_var(self.tau[k]) * &self.poly_var(u)) - &self.poly_var(self.z[k]))
                        + &Poly::one(t)
                })
            })
            .collect()
    }

    /// `v_k = u_k * z_k^-1`.
    pub fn v(&self, k: usize) -> Option<Frac> {
        let u = self.u[k]?;
        let zi = self.var(self.z[k]).inverse().ok()?;
        self.var(u).try_mul(&zi).ok()
    }

    /// Named shorthands available to the expression parser.
    pub fn definitions(&self) -> Vec<(String, Frac)> {
        (0..self.problem.rank())
            .filter_map(|k| self.v(k).map(|v| (self.problem.v_name(k), v)))
            .collect()
    }
}

pub(crate) fn linear_form(t: &Arc<VarTable>, mu: usize, vars: &[usize], nu: &[i32]) -> Poly {
    let mut p = Poly::var(t, mu);
    for (&v, &c) in vars.iter().zip(nu) {
        if c != 0 {
            p = &p + &Poly::var(t, v).scale(&rat(c as i64));
        }
    }
    p
}

/// Variables `z.., mu, u.., tau..` and FactorSet `{tau_j} ∪ {psi_nu} ∪ {z_i}`.
/// Roots are `tau_k` and therefore already listed.
pub fn ambient_table(p: &CoulombProblem) -> Result<Ambient> {
    let r = p.rank();
    let mut vars: Vec<(String, bool)> = (0..r).map(|i| (p.z_name(i), true)).collect();
    vars.push(("mu".into(), false));
    let mut u = vec![None; r];
    for k in p.datum.su2_coordinates() {
        u[k] = Some(vars.len());
        vars.push((p.u_name(k), false));
    }
    let tau: Vec<usize> = (0..r).map(|i| vars.len() + i).collect();
    for i in 0..r {
        vars.push((p.tau_name(i), false));
    }
    let table = VarTable::new(vars)?;
    let z: Vec<usize> = (0..r).collect();
    let mu = r;
    let mut factors: Vec<Poly> = tau.iter().map(|&i| Poly::var(&table, i)).collect();
    let mut psi = Vec::new();
    for w in p.distinct_weights() {
        psi.push((w.clone(), factors.len()));
        factors.push(linear_form(&table, mu, &tau, &w));
    }
    factors.extend(z.iter().map(|&i| Poly::var(&table, i)));
    let fs = FactorSet::new(&table, factors)?;
    Ok(Ambient { problem: p.clone(), factors: fs, z, tau, mu, u, psi })
}

/// One reflection per SU(2) block: `z -> z^-1`, `tau -> -tau`, `u -> u*z^-1`.
pub fn weyl_generator_morphisms(a: &Ambient) -> Result<Vec<RingMorphism>> {
    a.problem.datum.su2_coordinates().map(|k| weyl_element(a, &[k])).collect()
}

/// The Weyl group element reflecting the listed coordinates.
pub fn weyl_element(a: &Ambient, coords: &[usize]) -> Result<RingMorphism> {
    let mut images = Vec::new();
    for &k in coords {
        let u = a.u[k].ok_or_else(|| Error::InvalidProblem(format!("coordinate {} is not an SU(2) block", k + 1)))?;
        let zi = a.var(a.z[k]).inverse()?;
        images.push((a.z[k], zi.clone()));
        images.push((a.tau[k], a.var(a.tau[k]).scale(&-Rational::from_integer(1.into()))));
        images.push((u, a.var(u).try_mul(&zi)?));
    }
    let kind = if coords.is_empty() { MorphismKind::Identity } else { MorphismKind::Weyl };
    Ok(RingMorphism::with_images(&a.factors, images, kind))
}

/// All `2^b` elements of the Weyl group, identity first.
pub fn weyl_group(a: &Ambient) -> Result<Vec<RingMorphism>> {
    let coords: Vec<usize> = a.problem.datum.su2_coordinates().collect();
    (0..1usize << coords.len())
        .map(|mask| {
            let chosen: Vec<usize> =
                coords.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &k)| k).collect();
            weyl_element(a, &chosen)
        })
        .collect()
}

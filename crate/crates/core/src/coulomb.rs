//! Pure and matter Coulomb branches.
//!
//! Elements are [`Frac`]s over the ambient FactorSet of a problem. On a
//! problem with SU(2) blocks they live in the blowup ring
//! `B = Q[z^±, mu, u, tau] / (tau_k*u_k - z_k + 1)` localized at the psi
//! factors, and are kept in a normal form where no monomial contains both
//! `tau_k` and `u_k` (see [`Coulomb::normal_form`]).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frac::{FactorSet, Frac};
use crate::groebner::{buchberger, ring_map_kernel, GroebnerBasis, Ideal, LaurentEncoding, MonomialOrder};
use crate::morphism::{MorphismKind, RingMorphism};
use crate::parse::ParseContext;
use crate::poly::{Poly, Rational, VarTable};
use crate::print::print_poly;
use crate::rootdata::{ambient_table, weyl_generator_morphisms, weyl_group, Ambient, CoulombProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    PureTorus,
    Blowup,
    MatterSubring,
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresentationKind::PureTorus => "pure-torus",
            PresentationKind::Blowup => "blowup",
            PresentationKind::MatterSubring => "matter-subring",
        })
    }
}

/// A ring given by variables and a relation ideal, with the ambient element
/// each variable stands for.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    pub kind: PresentationKind,
    pub table: Arc<VarTable>,
    pub relations: Ideal,
    pub generators: Vec<(String, Frac)>,
    /// Named elements that are not variables of the presentation (`v = u*z^-1`).
    pub derived: Vec<(String, Frac)>,
    pub weyl: Vec<RingMorphism>,
    pub note: Option<String>,
}

impl RingPresentation {
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.generators().iter().map(print_poly).collect()
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self
            .table
            .vars()
            .iter()
            .map(|v| if v.laurent { format!("{}^±", v.name) } else { v.name.clone() })
            .collect();
        write!(f, "Q[{}]", vars.join(", "))?;
        let rels = self.relation_strings();
        if !rels.is_empty() {
            write!(f, " / ({})", rels.join(", "))?;
        }
        Ok(())
    }
}

/// Per-coordinate images `z_i -> z_i * s_i` of a translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpec {
    pub entries: Vec<Frac>,
}

impl SectionSpec {
    /// Entries `prod_nu (mu + <nu, x>)^{nu_i}` over the variables `vars`.
    pub fn from_weights(fs: &Arc<FactorSet>, mu: usize, vars: &[usize], weights: &[Vec<i32>]) -> Result<Self> {
        let t = fs.table();
        let mut entries = Vec::with_capacity(vars.len());
        for i in 0..vars.len() {
            let mut s = Frac::one(fs);
            for nu in weights {
                if nu[i] != 0 {
                    let psi = Frac::from_poly(fs, crate::rootdata::linear_form(t, mu, vars, nu));
                    s = s.try_mul(&psi.pow(nu[i])?)?;
                }
            }
            entries.push(s);
        }
        Ok(SectionSpec { entries })
    }

    pub fn unit(fs: &Arc<FactorSet>, rank: usize) -> Self {
        SectionSpec { entries: vec![Frac::one(fs); rank] }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(SectionSpec { entries: self.entries.iter().map(Frac::inverse).collect::<Result<_>>()? })
    }

    /// Pointwise product: translation by `self` then by `other`.
    pub fn product(&self, other: &SectionSpec) -> Result<Self> {
        Ok(SectionSpec {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.try_mul(b)).collect::<Result<_>>()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// The element and its translate are regular; `translated` is the translate.
    Member { translated: Frac },
    /// `factor^required` is the first FactorSet power (in FactorSet order)
    /// that fails to clear.
    NotMember { factor: Poly, required: u32, translated: Option<Frac> },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }

    pub fn offending_factor(&self) -> Option<&Poly> {
        match self {
            Membership::NotMember { factor, .. } => Some(factor),
            Membership::Member { .. } => None,
        }
    }
}

/// A problem's Coulomb branch with its Weyl group and Euler translation.
pub struct Coulomb {
    ambient: Ambient,
    to_ambient: RingMorphism,
    weyl_generators: Vec<RingMorphism>,
    weyl_group: Vec<RingMorphism>,
    section: SectionSpec,
    eplus: RingMorphism,
    eplus_inverse: RingMorphism,
    ideal_cache: Mutex<HashMap<(usize, u32), Arc<GroebnerBasis>>>,
}

impl fmt::Debug for Coulomb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coulomb").field("problem", &self.ambient.problem).finish()
    }
}

impl Coulomb {
    pub fn new(problem: &CoulombProblem) -> Result<Self> {
        let ambient = ambient_table(problem)?;
        let fs = ambient.factors.clone();
        let mut down = Vec::new();
        for k in 0..problem.rank() {
            if let Some(u) = ambient.u[k] {
                let img = ambient.var(ambient.z[k]).try_sub(&Frac::one(&fs))?.try_div(&ambient.var(ambient.tau[k]))?;
                down.push((u, img));
            }
        }
        let to_ambient = RingMorphism::with_images(&fs, down, MorphismKind::Custom);
        let weyl_generators = weyl_generator_morphisms(&ambient)?;
        let weyl_group = weyl_group(&ambient)?;
        let mut c = Coulomb {
            section: SectionSpec::unit(&fs, problem.rank()),
            eplus: RingMorphism::identity(&fs),
            eplus_inverse: RingMorphism::identity(&fs),
            ambient,
            to_ambient,
            weyl_generators,
            weyl_group,
            ideal_cache: Mutex::new(HashMap::new()),
        };
        c.section = c.euler_section()?;
        c.eplus = c.translate_by_section(&c.section)?;
        c.eplus_inverse = c.translate_by_section(&c.section.inverse()?)?;
        Ok(c)
    }

    pub fn problem(&self) -> &CoulombProblem {
        &self.ambient.problem
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn factors(&self) -> &Arc<FactorSet> {
        &self.ambient.factors
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.ambient.table()
    }

    /// Parser over the ambient ring, with `v`-shorthands on blowup problems.
    pub fn parser(&self) -> ParseContext {
        let mut ctx = ParseContext::new(self.factors());
        for (n, v) in self.ambient.definitions() {
            ctx = ctx.define(n, v);
        }
        ctx
    }

    pub fn parse(&self, text: &str) -> Result<Frac> {
        self.normal_form(&self.parser().parse(text)?)
    }

    pub fn var(&self, name: &str) -> Frac {
        Frac::named(self.factors(), name)
    }

    fn check(&self, f: &Frac) -> Result<()> {
        if f.factor_set().as_ref() != self.factors().as_ref() {
            return Err(Error::FactorSetMismatch);
        }
        Ok(())
    }

    // ---- blowup normal form ----

    /// Substitutes `u_k = (z_k - 1)/tau_k`.
    pub fn to_ambient(&self, f: &Frac) -> Result<Frac> {
        self.check(f)?;
        if !self.ambient.has_blowup() {
            return Ok(f.clone());
        }
        self.to_ambient.apply_frac(f)
    }

    /// `n / tau_k^e` rewritten with `u_k`, when it lies in the blowup ring.
    fn lift_block(&self, n: &Poly, e: u32, k: usize) -> Result<Option<Poly>> {
        let t = self.table();
        let (Some(u), tau) = (self.ambient.u[k], self.ambient.tau[k]) else {
            return Ok(None);
        };
        let zm1 = &Poly::var(t, self.ambient.z[k]) - &Poly::one(t);
        let mut out = Poly::zero(t);
        for (j, c) in n.coefficients_in(tau) {
            let j = j as i64;
            let e = e as i64;
            if j >= e {
                out = &out + &(&c * &Poly::var(t, tau).pow((j - e) as u32));
            } else {
                let b = (e - j) as u32;
                match c.exact_div(&zm1.pow(b))? {
                    Some(q) => out = &out + &(&q * &Poly::var(t, u).pow(b)),
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(out))
    }

    /// Lift of an element into the blowup localization, or `None` when a
    /// `tau` pole survives.
    pub fn lift(&self, f: &Frac) -> Result<Option<Frac>> {
        let g = self.to_ambient(f)?;
        let mut num = g.numerator().clone();
        let mut rest = Vec::new();
        for &(i, e) in g.denominator() {
            match self.ambient.tau.iter().position(|&t| self.factors().factor(i) == &Poly::var(self.table(), t)) {
                Some(k) => match self.lift_block(&num, e, k)? {
                    Some(p) => num = p,
                    None => return Ok(None),
                },
                None => rest.push((i, e)),
            }
        }
        Ok(Some(Frac::new(self.factors(), num, rest)?))
    }

    /// Canonical form: the blowup lift when it exists, the ambient fraction otherwise.
    pub fn normal_form(&self, f: &Frac) -> Result<Frac> {
        if !self.ambient.has_blowup() {
            self.check(f)?;
            return Ok(f.clone());
        }
        match self.lift(f)? {
            Some(g) => Ok(g),
            None => self.to_ambient(f),
        }
    }

    /// Lies in the (unlocalized) pure branch: lifts and has no denominator.
    pub fn is_regular(&self, f: &Frac) -> Result<bool> {
        Ok(self.lift(f)?.is_some_and(|g| g.is_polynomial()))
    }

    pub fn equal(&self, a: &Frac, b: &Frac) -> Result<bool> {
        Ok(self.normal_form(&a.try_sub(b)?)?.is_zero())
    }

    pub fn apply(&self, m: &RingMorphism, f: &Frac) -> Result<Frac> {
        self.normal_form(&m.apply_frac(f)?)
    }

    pub fn mul(&self, a: &Frac, b: &Frac) -> Result<Frac> {
        self.normal_form(&a.try_mul(b)?)
    }

    // ---- presentations ----

    pub fn pure_branch(&self) -> Result<RingPresentation> {
        if self.ambient.has_blowup() {
            return self.blowup_presentation();
        }
        let t = self.table();
        Ok(RingPresentation {
            kind: PresentationKind::PureTorus,
            table: t.clone(),
            relations: Ideal::new(t, [])?,
            generators: (0..t.len()).map(|i| (t.name(i).to_string(), self.ambient.var(i))).collect(),
            derived: vec![],
            weyl: vec![],
            note: None,
        })
    }

    pub fn blowup_presentation(&self) -> Result<RingPresentation> {
        if !self.ambient.has_blowup() {
            return self.pure_branch();
        }
        let t = self.table();
        Ok(RingPresentation {
            kind: PresentationKind::Blowup,
            table: t.clone(),
            relations: Ideal::new(t, self.ambient.blowup_relations())?,
            generators: (0..t.len()).map(|i| (t.name(i).to_string(), self.ambient.var(i))).collect(),
            derived: self.ambient.definitions(),
            weyl: self.weyl_generators.clone(),
            note: Some(self.problem().root_convention().to_string()),
        })
    }

    // ---- Weyl group ----

    pub fn weyl_generators(&self) -> &[RingMorphism] {
        &self.weyl_generators
    }

    pub fn weyl_group(&self) -> &[RingMorphism] {
        &self.weyl_group
    }

    /// Average over the Weyl group.
    pub fn reynolds(&self, f: &Frac) -> Result<Frac> {
        let mut acc = Frac::zero(self.factors());
        for w in &self.weyl_group {
            acc = acc.try_add(&w.apply_frac(f)?)?;
        }
        let n = Rational::new(1.into(), (self.weyl_group.len() as i64).into());
        self.normal_form(&acc.scale(&n))
    }

    pub fn is_weyl_invariant(&self, f: &Frac) -> Result<bool> {
        for w in &self.weyl_generators {
            if !self.equal(&w.apply_frac(f)?, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Involves only `tau` and `mu`, and is Weyl invariant.
    pub fn toda_base_membership(&self, f: &Frac) -> Result<bool> {
        let g = self.normal_form(f)?;
        let a = &self.ambient;
        let others: Vec<usize> = a.z.iter().copied().chain(a.u_vars()).collect();
        if !g.is_polynomial() || others.iter().any(|&v| g.numerator().involves(v)) {
            return Ok(false);
        }
        self.is_weyl_invariant(&g)
    }

    // ---- sections and translations ----

    /// `z_i -> prod_nu psi_nu(tau, mu)^{nu_i}`.
    pub fn euler_section(&self) -> Result<SectionSpec> {
        let a = &self.ambient;
        SectionSpec::from_weights(&a.factors, a.mu, &a.tau, &a.problem.weights)
    }

    pub fn section(&self) -> &SectionSpec {
        &self.section
    }

    /// `z_i -> z_i * s_i`; on blowup blocks `u_k -> (z_k*s_k - 1)/tau_k`,
    /// which must lift back into the blowup.
    pub fn translate_by_section(&self, s: &SectionSpec) -> Result<RingMorphism> {
        let a = &self.ambient;
        if s.entries.len() != a.problem.rank() {
            return Err(Error::IncompatibleSection(format!(
                "section has {} entries, rank is {}",
                s.entries.len(),
                a.problem.rank()
            )));
        }
        let mut images = Vec::new();
        for (k, e) in s.entries.iter().enumerate() {
            self.check(e)?;
            e.inverse().map_err(|_| Error::IncompatibleSection(format!("entry {e} is not invertible")))?;
            let zs = a.var(a.z[k]).try_mul(e)?;
            if let Some(u) = a.u[k] {
                let raw = zs.try_sub(&Frac::one(&a.factors))?.try_div(&a.var(a.tau[k]))?;
                let lifted = self
                    .lift(&raw)?
                    .ok_or_else(|| Error::IncompatibleSection(format!("image of {} has a tau pole", a.table().name(u))))?;
                images.push((u, lifted));
            }
            images.push((a.z[k], zs));
        }
        Ok(RingMorphism::with_images(&a.factors, images, MorphismKind::Translation))
    }

    /// Translation by the Euler section.
    pub fn epsilon_plus(&self) -> &RingMorphism {
        &self.eplus
    }

    pub fn epsilon_plus_inverse(&self) -> &RingMorphism {
        &self.eplus_inverse
    }

    pub fn translate(&self, f: &Frac) -> Result<Frac> {
        self.apply(&self.eplus, &self.normal_form(f)?)
    }

    // ---- matter branch ----

    fn first_pole(&self, f: &Frac) -> Option<(Poly, u32)> {
        f.denominator().first().map(|&(i, k)| (self.factors().factor(i).clone(), k))
    }

    fn not_member_source(&self, f: &Frac) -> Result<Option<Membership>> {
        let g = self.normal_form(f)?;
        let lifted = self.lift(f)?;
        let bad = match &lifted {
            None => self.first_pole(&g),
            Some(l) => self.first_pole(l),
        };
        Ok(bad.map(|(factor, required)| Membership::NotMember { factor, required, translated: None }))
    }

    /// Membership in the matter branch: `f` and its translate are regular.
    /// Uses the divisibility criterion on abelian problems and Gröbner ideal
    /// membership otherwise.
    pub fn matter_membership(&self, f: &Frac) -> Result<Membership> {
        if self.problem().is_abelian() {
            self.membership_by_divisibility(f)
        } else {
            self.membership_by_groebner(f)
        }
    }

    /// For `f = sum_m z^m c_m`: member iff each `c_m` is divisible by
    /// `prod_{<nu,m> < 0} psi_nu^{-<nu,m>}`.
    pub fn membership_by_divisibility(&self, f: &Frac) -> Result<Membership> {
        if !self.problem().is_abelian() {
            return Err(Error::Unsupported("divisibility criterion needs an abelian problem".into()));
        }
        if let Some(m) = self.not_member_source(f)? {
            return Ok(m);
        }
        let a = &self.ambient;
        let mut worst: Option<(usize, u32)> = None;
        for (m, c) in f.numerator().split_by(&a.z) {
            for (nu, idx) in &a.psi {
                let pairing: i32 = nu.iter().zip(&m).map(|(x, y)| x * y).sum();
                let e = pairing * a.problem.multiplicity(nu) as i32;
                if e >= 0 {
                    continue;
                }
                let need = (-e) as u32;
                if c.exact_div(&self.factors().factor(*idx).pow(need))?.is_none() {
                    worst = match worst {
                        Some((i, k)) if i < *idx || (i == *idx && k >= need) => Some((i, k)),
                        _ => Some((*idx, need)),
                    };
                }
            }
        }
        let translated = self.translate(f)?;
        Ok(match worst {
            None => Membership::Member { translated },
            Some((i, k)) => Membership::NotMember {
                factor: self.factors().factor(i).clone(),
                required: k,
                translated: Some(translated),
            },
        })
    }

    fn power_ideal(&self, i: usize, k: u32) -> Result<Arc<GroebnerBasis>> {
        if let Some(g) = self.ideal_cache.lock().unwrap().get(&(i, k)) {
            return Ok(g.clone());
        }
        let enc = LaurentEncoding::new(self.table(), &[])?;
        let mut gens = enc.unit_relations();
        for r in self.ambient.blowup_relations() {
            gens.push(enc.encode(&r)?);
        }
        gens.push(enc.encode(&self.factors().factor(i).pow(k))?);
        let gb = Arc::new(buchberger(&Ideal::new(&enc.table, gens)?, MonomialOrder::GrevLex));
        self.ideal_cache.lock().unwrap().insert((i, k), gb.clone());
        Ok(gb)
    }

    /// Clears the denominator of the translate and tests the numerator in
    /// `<relations, psi^k>` for each denominator factor, in FactorSet order.
    pub fn membership_by_groebner(&self, f: &Frac) -> Result<Membership> {
        if let Some(m) = self.not_member_source(f)? {
            return Ok(m);
        }
        let g = self.translate(f)?;
        if self.lift(&g)?.is_none() {
            let (factor, required) = self.first_pole(&g).expect("pole");
            return Ok(Membership::NotMember { factor, required, translated: Some(g) });
        }
        let enc = LaurentEncoding::new(self.table(), &[])?;
        let num = enc.encode(g.numerator())?;
        for &(i, k) in g.denominator() {
            let gb = self.power_ideal(i, k)?;
            if !gb.contains(&num) {
                return Ok(Membership::NotMember {
                    factor: self.factors().factor(i).clone(),
                    required: k,
                    translated: Some(g),
                });
            }
        }
        // every power divides the numerator in B; the quotient is the translate
        Ok(Membership::Member { translated: g })
    }

    // ---- generators ----

    fn window(&self, d: u32, coords: &[usize]) -> Vec<Vec<i32>> {
        let r = self.problem().rank();
        let d = d as i32;
        let mut out: Vec<Vec<i32>> = Vec::new();
        let mut cur = vec![0i32; coords.len()];
        fn rec(i: usize, cur: &mut Vec<i32>, d: i32, out: &mut Vec<Vec<i32>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            for v in -d..=d {
                cur[i] = v;
                rec(i + 1, cur, d, out);
            }
        }
        rec(0, &mut cur, d, &mut out);
        let mut full: Vec<Vec<i32>> = out
            .into_iter()
            .filter(|m| m.iter().any(|&e| e != 0))
            .map(|m| {
                let mut v = vec![0; r];
                for (j, &c) in coords.iter().enumerate() {
                    v[c] = m[j];
                }
                v
            })
            .collect();
        let norm = |m: &Vec<i32>| m.iter().map(|e| e.abs()).max().unwrap();
        // by sup-norm, then larger exponents first
        full.sort_by(|a, b| norm(a).cmp(&norm(b)).then_with(|| b.cmp(a)));
        full
    }

    fn window_name(&self, m: &[i32]) -> String {
        if self.problem().rank() == 1 {
            let e = m[0];
            let base = if e > 0 { "x" } else { "y" };
            if e.abs() == 1 {
                base.to_string()
            } else {
                format!("{base}{}", e.abs())
            }
        } else {
            let parts: Vec<String> =
                m.iter().map(|&e| if e < 0 { format!("m{}", -e) } else { e.to_string() }).collect();
            format!("g_{}", parts.join("_"))
        }
    }

    /// `z^m * prod_{<nu,m> < 0} psi_nu^{-<nu,m>}`.
    pub fn cleared_monomial(&self, m: &[i32]) -> Result<Frac> {
        let a = &self.ambient;
        let t = self.table();
        let mut exps = vec![0; t.len()];
        for (k, &e) in m.iter().enumerate() {
            exps[a.z[k]] = e;
        }
        let mut p = Poly::term(t, exps, Rational::one())?;
        for nu in &a.problem.weights {
            let pairing: i32 = nu.iter().zip(m).map(|(x, y)| x * y).sum();
            if pairing < 0 {
                p = &p * &a.psi_poly(nu).pow((-pairing) as u32);
            }
        }
        Ok(Frac::from_poly(self.factors(), p))
    }

    fn base_generators(&self) -> Vec<(String, Frac)> {
        let a = &self.ambient;
        let mut out = vec![("mu".to_string(), a.var(a.mu))];
        for k in 0..a.problem.rank() {
            out.push((a.problem.tau_name(k), a.var(a.tau[k])));
        }
        out
    }

    /// `mu`, the `tau`s and the cleared monomials with `0 < |m|_inf <= d`.
    pub fn abelian_matter_generators(&self, d: u32) -> Result<Vec<(String, Frac)>> {
        if !self.problem().is_abelian() {
            return Err(Error::Unsupported("abelian generators need a torus problem".into()));
        }
        let coords: Vec<usize> = (0..self.problem().rank()).collect();
        let mut out = self.base_generators();
        for m in self.window(d, &coords) {
            out.push((self.window_name(&m), self.cleared_monomial(&m)?));
        }
        Ok(out)
    }

    /// Default generator list in presentation order (non-base generators,
    /// then `mu`, then the `tau`s). On SU(2) blocks: `x_k = c_k*u_k - 1` with
    /// `c_k` the denominator of the translate of `u_k`, `y_k` its Weyl image
    /// and `w_k = (x_k - y_k)/tau_k`, each kept only if it is a member.
    pub fn default_generators(&self, d: u32) -> Result<Vec<(String, Frac)>> {
        let a = &self.ambient;
        let p = &a.problem;
        let torus: Vec<usize> = (0..p.datum.torus_rank).collect();
        let mut head: Vec<(String, Frac)> = Vec::new();
        if !torus.is_empty() {
            for m in self.window(d, &torus) {
                head.push((self.window_name(&m), self.cleared_monomial(&m)?));
            }
        }
        for k in p.datum.su2_coordinates() {
            let suffix = if p.rank() == 1 { String::new() } else { (k + 1).to_string() };
            let u = a.var(a.u[k].expect("blowup variable"));
            let c = Frac::from_poly(self.factors(), self.eplus.image(a.u[k].unwrap()).denominator_poly());
            let x = self.normal_form(&c.try_mul(&u)?.try_sub(&Frac::one(self.factors()))?)?;
            let w = &self.weyl_generators[k - p.datum.torus_rank];
            let y = self.apply(w, &x)?;
            let diff = self.normal_form(&x.try_sub(&y)?.try_div(&a.var(a.tau[k]))?)?;
            for (name, g) in [("x", x), ("y", y), ("w", diff)] {
                if self.is_regular(&g)? && self.matter_membership(&g)?.is_member() {
                    head.push((format!("{name}{suffix}"), g));
                }
            }
        }
        head.extend(self.base_generators());
        Ok(head)
    }

    fn is_base(&self, f: &Frac) -> bool {
        self.base_generators().iter().any(|(_, b)| b == f)
    }

    /// Weyl-invariant closure: Reynolds images of the generators and of their
    /// pairwise products, skipping products with an invariant factor, zeros
    /// and scalar duplicates.
    pub fn reynolds_closure(&self, gens: &[(String, Frac)]) -> Result<Vec<(String, Frac)>> {
        let mut out: Vec<(String, Frac)> = Vec::new();
        let invariant: Vec<bool> = gens.iter().map(|(_, g)| self.is_weyl_invariant(g)).collect::<Result<_>>()?;
        let push = |name: String, f: Frac, out: &mut Vec<(String, Frac)>| -> Result<()> {
            if f.is_zero() {
                return Ok(());
            }
            for (_, g) in out.iter() {
                if proportional(g, &f)? {
                    return Ok(());
                }
            }
            out.push((name, f));
            Ok(())
        };
        for (i, (n, g)) in gens.iter().enumerate() {
            if invariant[i] {
                push(n.clone(), g.clone(), &mut out)?;
            } else {
                push(format!("r_{n}"), self.reynolds(g)?, &mut out)?;
            }
        }
        for i in 0..gens.len() {
            for j in i..gens.len() {
                if invariant[i] || invariant[j] {
                    continue;
                }
                let prod = self.mul(&gens[i].1, &gens[j].1)?;
                push(format!("r_{}_{}", gens[i].0, gens[j].0), self.reynolds(&prod)?, &mut out)?;
            }
        }
        Ok(out)
    }

    /// Relation ideal of the subalgebra generated by `gens` (after Weyl
    /// closure on SU(2) problems). Tags are ordered non-base first, then
    /// `mu`, then the `tau`s.
    pub fn matter_presentation(&self, gens: &[(String, Frac)]) -> Result<RingPresentation> {
        let mut normalized = Vec::with_capacity(gens.len());
        for (name, g) in gens {
            let g = self.normal_form(g)?;
            if let Membership::NotMember { factor, .. } = self.matter_membership(&g)? {
                return Err(Error::NonMemberGenerator { name: name.clone(), factor: print_poly(&factor) });
            }
            normalized.push((name.clone(), g));
        }
        let (closed, note) = if self.problem().is_abelian() {
            (normalized, "subalgebra generated by the supplied generators")
        } else {
            (self.reynolds_closure(&normalized)?, "Weyl-invariant subalgebra from the degree-2 Reynolds closure")
        };
        let base: Vec<(String, Frac)> = self.base_generators();
        let mut ordered: Vec<(String, Frac)> = closed.iter().filter(|(_, g)| !self.is_base(g)).cloned().collect();
        for (_, b) in &base {
            if let Some(e) = closed.iter().find(|(_, g)| g == b) {
                ordered.push(e.clone());
            }
        }
        let relations = ring_map_kernel(&ordered, &self.ambient.blowup_relations())?;
        Ok(RingPresentation {
            kind: PresentationKind::MatterSubring,
            table: relations.table().clone(),
            relations,
            generators: ordered,
            derived: vec![],
            weyl: vec![],
            note: Some(note.to_string()),
        })
    }

    /// `f` with `mu = 0`; denominators must stay inside the FactorSet.
    pub fn mu_zero_element(&self, f: &Frac) -> Result<Frac> {
        self.check(f)?;
        self.normal_form(&at_mu_zero(f)?)
    }
}

/// Evaluates the variable `mu` at zero.
pub fn at_mu_zero(f: &Frac) -> Result<Frac> {
    let Some(mu) = f.table().index_of("mu") else {
        return Ok(f.clone());
    };
    let fs = f.factor_set();
    let zero = Rational::zero();
    let mut out = Frac::from_poly(fs, f.numerator().eval_var(mu, &zero));
    for &(i, k) in f.denominator() {
        let d = Frac::from_poly(fs, fs.factor(i).eval_var(mu, &zero).pow(k));
        out = out.try_div(&d)?;
    }
    Ok(out)
}

fn proportional(a: &Frac, b: &Frac) -> Result<bool> {
    if a.denominator() != b.denominator() {
        return Ok(false);
    }
    let (Some((_, ca)), Some((_, cb))) = (a.numerator().leading_term(), b.numerator().leading_term()) else {
        return Ok(false);
    };
    let s = cb / ca;
    Ok(a.numerator().scale(&s) == *b.numerator())
}

/// Sets `mu = 0` in every relation and drops `mu` from the table.
pub fn mu_zero_fiber(pres: &RingPresentation) -> Result<RingPresentation> {
    let Some(mu) = pres.table.index_of("mu") else {
        return Ok(pres.clone());
    };
    let kept: Vec<usize> = (0..pres.table.len()).filter(|&i| i != mu).collect();
    let table = VarTable::new(kept.iter().map(|&i| (pres.table.name(i).to_string(), pres.table.is_laurent(i))))?;
    let mut map = vec![0; pres.table.len()];
    for (j, &i) in kept.iter().enumerate() {
        map[i] = j;
    }
    let zero = Rational::zero();
    let rels = pres
        .relations
        .generators()
        .iter()
        .map(|r| r.eval_var(mu, &zero).reindex(&table, &map))
        .collect::<Result<Vec<_>>>()?;
    let mut out = pres.clone();
    out.relations = Ideal::new(&table, rels)?;
    out.generators = pres
        .generators
        .iter()
        .filter(|(n, _)| n != "mu")
        .map(|(n, g)| Ok((n.clone(), at_mu_zero(g)?)))
        .collect::<Result<_>>()?;
    if pres.kind != PresentationKind::MatterSubring {
        out.generators.clear();
        out.derived.clear();
        out.weyl.clear();
    }
    out.table = table;
    out.note = Some("fiber over mu = 0".into());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u1() -> Coulomb {
        Coulomb::new(&CoulombProblem::torus(1, vec![vec![1], vec![-1]]).unwrap()).unwrap()
    }

    fn su2() -> Coulomb {
        Coulomb::new(&CoulombProblem::new(0, 1, vec![vec![1], vec![-1]]).unwrap()).unwrap()
    }

    #[test]
    fn euler_translation_u1() {
        let c = u1();
        let z = c.parse("z").unwrap();
        assert_eq!(c.translate(&z).unwrap(), c.parse("z*(mu+tau)/(mu-tau)").unwrap());
        let x = c.parse("z*(mu-tau)").unwrap();
        let m = c.matter_membership(&x).unwrap();
        assert_eq!(m, Membership::Member { translated: c.parse("z*(mu+tau)").unwrap() });
        let m = c.matter_membership(&z).unwrap();
        assert_eq!(m.offending_factor(), Some(&c.parse("mu - tau").unwrap().numerator().clone()));
    }

    #[test]
    fn section_shapes() {
        let c = Coulomb::new(&CoulombProblem::torus(1, vec![vec![1]]).unwrap()).unwrap();
        assert_eq!(c.euler_section().unwrap().entries[0], c.parse("mu + tau").unwrap());
        let c = Coulomb::new(&CoulombProblem::torus(1, vec![]).unwrap()).unwrap();
        assert!(c.euler_section().unwrap().entries[0].is_one());
        let z = c.parse("z").unwrap();
        assert_eq!(c.translate(&z).unwrap(), z);
    }

    #[test]
    fn blowup_normal_form_of_w() {
        let c = su2();
        let x = c.parse("mu*u - z").unwrap();
        let y = c.parse("mu*v - z^-1").unwrap();
        let w = c.parse("(x_ - y_)/tau".replace("x_", "(mu*u - z)").replace("y_", "(mu*v - z^-1)").as_str()).unwrap();
        assert_eq!(w, c.parse("mu*u*v - u - v").unwrap());
        assert!(w.is_polynomial());
        let wg = &c.weyl_generators()[0];
        assert_eq!(c.apply(wg, &x).unwrap(), y);
        assert_eq!(c.apply(wg, &w).unwrap(), w);
        for g in [&x, &y, &w] {
            assert!(c.membership_by_groebner(g).unwrap().is_member(), "{g}");
        }
        assert!(!c.matter_membership(&c.parse("u").unwrap()).unwrap().is_member());
    }

    #[test]
    fn default_su2_generators_for_standard_rep() {
        let c = su2();
        let gens = c.default_generators(1).unwrap();
        let names: Vec<&str> = gens.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["x", "y", "w", "mu", "tau"]);
        assert_eq!(gens[0].1, c.parse("mu*u - z").unwrap());
    }

    #[test]
    fn reynolds_examples() {
        let c = su2();
        assert_eq!(c.reynolds(&c.parse("z").unwrap()).unwrap(), c.parse("(z + z^-1)/2").unwrap());
        assert!(c.reynolds(&c.parse("tau").unwrap()).unwrap().is_zero());
        let f = c.parse("tau*(z - z^-1)").unwrap();
        assert_eq!(c.reynolds(&f).unwrap(), f);
    }

    #[test]
    fn u1_presentation_and_fiber() {
        let c = u1();
        let gens = c.abelian_matter_generators(1).unwrap();
        let names: Vec<&str> = gens.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["mu", "tau", "x", "y"]);
        let pres = c.matter_presentation(&gens).unwrap();
        assert_eq!(pres.relation_strings(), ["x*y - mu^2 + tau^2"]);
        let fiber = mu_zero_fiber(&pres).unwrap();
        assert_eq!(fiber.relation_strings(), ["x*y + tau^2"]);
        assert_eq!(c.mu_zero_element(&c.parse("z*(mu-tau)").unwrap()).unwrap(), c.parse("-z*tau").unwrap());
    }

    #[test]
    fn toda_base() {
        let c = su2();
        assert!(c.toda_base_membership(&c.parse("tau^2").unwrap()).unwrap());
        assert!(!c.toda_base_membership(&c.parse("tau").unwrap()).unwrap());
        let t2 = Coulomb::new(&CoulombProblem::torus(2, vec![]).unwrap()).unwrap();
        assert!(t2.toda_base_membership(&t2.parse("mu*tau1").unwrap()).unwrap());
    }
}

//! Problem files (TOML) and the JSON encoding of elements.
//!
//! ```toml
//! torus_rank = 1
//! su2_blocks = 0
//! weights = [[1], [-1]]
//! degree = 1
//!
//! [[generator]]
//! name = "x"
//! expr = "z*(mu - tau)"
//! ```

use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coulomb::Coulomb;
use crate::error::{Error, Result};
use crate::frac::{FactorSet, Frac};
use crate::poly::{Monomial, Poly, Rational, VarTable};
use crate::print::{print_canonical, print_poly};
use crate::rootdata::CoulombProblem;

fn default_degree() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub expr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub torus_rank: usize,
    #[serde(default)]
    pub su2_blocks: usize,
    #[serde(default)]
    pub weights: Vec<Vec<i32>>,
    #[serde(default = "default_degree")]
    pub degree: u32,
    #[serde(default, rename = "generator")]
    pub generators: Vec<GeneratorSpec>,
}

impl ProblemFile {
    pub fn from_toml(text: &str) -> Result<Self> {
        let pf: ProblemFile = toml::from_str(text).map_err(|e| Error::InvalidProblem(e.to_string()))?;
        if pf.degree == 0 {
            return Err(Error::InvalidProblem("degree must be at least 1".into()));
        }
        Ok(pf)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("serializable")
    }

    pub fn problem(&self) -> Result<CoulombProblem> {
        CoulombProblem::new(self.torus_rank, self.su2_blocks, self.weights.clone())
    }

    /// Generator overrides, each parsed with the earlier names in scope.
    pub fn parse_generators(&self, c: &Coulomb) -> Result<Option<Vec<(String, Frac)>>> {
        if self.generators.is_empty() {
            return Ok(None);
        }
        let mut ctx = c.parser();
        let mut out = Vec::new();
        for g in &self.generators {
            if !crate::poly::is_identifier(&g.name) {
                return Err(Error::InvalidName(g.name.clone()));
            }
            if out.iter().any(|(n, _): &(String, Frac)| *n == g.name) {
                return Err(Error::DuplicateVariable(g.name.clone()));
            }
            let f = c.normal_form(&ctx.parse(&g.expr)?)?;
            ctx = ctx.define(g.name.clone(), f.clone());
            out.push((g.name.clone(), f));
        }
        Ok(Some(out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVariable {
    pub name: String,
    pub laurent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exponents: Vec<i32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFactor {
    pub text: String,
    pub terms: Vec<JsonTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDenominator {
    pub factor: usize,
    pub exponent: u32,
}

/// Self-contained JSON form of an element: table, FactorSet, numerator
/// terms and denominator as factor index/exponent pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonElement {
    pub variables: Vec<JsonVariable>,
    pub factors: Vec<JsonFactor>,
    pub numerator: Vec<JsonTerm>,
    pub denominator: Vec<JsonDenominator>,
    pub text: String,
}

pub fn poly_terms(p: &Poly) -> Vec<JsonTerm> {
    p.terms()
        .map(|(m, c)| JsonTerm { exponents: m.0.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
        .collect()
}

pub fn variables(t: &VarTable) -> Vec<JsonVariable> {
    t.vars().iter().map(|v| JsonVariable { name: v.name.clone(), laurent: v.laurent }).collect()
}

/// JSON form of a bare polynomial (terms are relative to its table).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonPoly {
    pub text: String,
    pub terms: Vec<JsonTerm>,
}

pub fn poly_to_json(p: &Poly) -> JsonPoly {
    JsonPoly { text: print_poly(p), terms: poly_terms(p) }
}

pub fn element_to_json(f: &Frac) -> JsonElement {
    let fs = f.factor_set();
    JsonElement {
        variables: variables(fs.table()),
        factors: fs.factors().iter().map(|p| JsonFactor { text: print_poly(p), terms: poly_terms(p) }).collect(),
        numerator: poly_terms(f.numerator()),
        denominator: f.denominator().iter().map(|&(factor, exponent)| JsonDenominator { factor, exponent }).collect(),
        text: print_canonical(f),
    }
}

fn terms_from_json(t: &Arc<VarTable>, terms: &[JsonTerm]) -> Result<Poly> {
    let parse_int = |s: &str| -> Result<BigInt> {
        s.parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad integer `{s}`") })
    };
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        if term.exponents.len() != t.len() {
            return Err(Error::TableMismatch);
        }
        let den = parse_int(&term.den)?;
        if den == BigInt::from(0) {
            return Err(Error::DivisionByZero);
        }
        out.push((Monomial(term.exponents.clone()), Rational::new(parse_int(&term.num)?, den)));
    }
    Poly::from_terms(t, out)
}

pub fn element_from_json(j: &JsonElement) -> Result<Frac> {
    let t = VarTable::new(j.variables.iter().map(|v| (v.name.clone(), v.laurent)))?;
    let factors = j.factors.iter().map(|f| terms_from_json(&t, &f.terms)).collect::<Result<Vec<_>>>()?;
    let fs = FactorSet::new(&t, factors)?;
    let num = terms_from_json(&t, &j.numerator)?;
    Frac::new(&fs, num, j.denominator.iter().map(|d| (d.factor, d.exponent)).collect())
}

pub fn element_to_json_string(f: &Frac) -> String {
    serde_json::to_string_pretty(&element_to_json(f)).expect("serializable")
}

pub fn element_from_json_str(s: &str) -> Result<Frac> {
    let j: JsonElement = serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
    element_from_json(&j)
}

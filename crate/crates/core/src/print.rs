//! Canonical text form of polynomials and factored fractions.
//!
//! Terms appear in descending graded reverse lexicographic order, variables in
//! table order, rational coefficients as `n/d`. A fraction prints as
//! `(numerator) / (f1^k1 * f2 ...)` with factors in factor-set order.
//! The output re-parses to the same value.

use num_traits::{One, Signed};

use crate::frac::Frac;
use crate::poly::{Monomial, Poly, Rational, VarTable};

fn monomial_text(table: &VarTable, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(table.name(i).to_string()),
            _ => parts.push(format!("{}^{}", table.name(i), e)),
        }
    }
    parts.join("*")
}

fn rational_text(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn print_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = monomial_text(p.table(), m);
        if mono.is_empty() {
            out.push_str(&rational_text(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&rational_text(&a));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// Denominator text `f1^k1 * f2 * ...`; empty string for a polynomial.
pub fn print_denominator(f: &Frac) -> String {
    let fs = f.factor_set();
    f.denominator()
        .iter()
        .map(|&(i, k)| {
            let fac = fs.factor(i);
            let base = if fac.len() > 1 { format!("({})", print_poly(fac)) } else { print_poly(fac) };
            if k == 1 {
                base
            } else {
                format!("{base}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

pub fn print_canonical(f: &Frac) -> String {
    if f.is_polynomial() {
        return print_poly(f.numerator());
    }
    let num = print_poly(f.numerator());
    match f.denominator() {
        [(i, 1)] => format!("({num}) / ({})", print_poly(f.factor_set().factor(*i))),
        _ => format!("({num}) / ({})", print_denominator(f)),
    }
}

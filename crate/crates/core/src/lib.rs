//! Exact computations with Coulomb branch algebras of cotangent-type gauge
//! theories for groups `T^a x SU(2)^b`.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`], [`frac`], [`morphism`]: Laurent polynomials over the rationals,
//!   fractions with denominators in a declared multiplicative set, and
//!   substitution homomorphisms.
//! * [`groebner`]: Buchberger's algorithm, normal forms, elimination, kernels
//!   of ring maps and subalgebra membership.
//! * [`rootdata`]: the group and representation data and the rings they induce.
//! * [`coulomb`]: pure and matter Coulomb branches, the affine blowup, Weyl
//!   symmetrization, Euler sections and translation automorphisms.
//! * [`shmodel`]: the localized equivariant cohomology of the representation
//!   ball and the section homomorphism into it.
//! * [`parse`], [`print`], [`io`], [`cli`]: text and JSON surfaces.

pub mod cli;
pub mod coulomb;
pub mod error;
pub mod groebner;
pub mod io;
pub mod frac;
pub mod morphism;
pub mod parse;
pub mod poly;
pub mod print;
pub mod rootdata;
pub mod shmodel;

pub use coulomb::{Coulomb, Membership, RingPresentation, SectionSpec};
pub use error::{Error, Result};
pub use frac::{FactorSet, Frac};
pub use morphism::{MorphismKind, RingMorphism};
pub use poly::{Monomial, Poly, Rational, VarTable};
pub use rootdata::CoulombProblem;
pub use shmodel::ShModel;

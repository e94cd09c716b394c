//! Entailment and interpolation for semilattices with monotone operators.
//!
//! The crate decides ground entailment `A /\ B |= s <= t` in the theory of
//! semilattices extended with monotone unary functions satisfying inclusion
//! axioms `f(x) <= g(x)` and composition axioms `y <= g(x) -> f(y) <= h(x)`,
//! and computes interpolating terms over the shared signature. An EL+
//! front end maps concept subsumption onto the same machinery.

pub mod beth;
pub mod el;
pub mod error;
pub mod interp;
pub mod locality;
pub mod slat;
pub mod slp;
pub mod syntax;
pub mod terms;

pub use error::{Error, Result};
pub use locality::{Axiom, AxiomSet, Problem};
pub use terms::{mk_meet, Atom, Color, GroundHornClause, Ident, Literal, Term};

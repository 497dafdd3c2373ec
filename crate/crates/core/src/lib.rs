//! Relation type of ideals in polynomial rings and of affine algebras.

pub mod constructions;
pub mod error;
pub mod field;
pub mod gcd;
pub mod groebner;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod random;
pub mod rees;
pub mod ring;
pub mod script;

pub use error::{AbortReason, Error, Result};
pub use field::{Coeff, Field};
pub use groebner::{Budget, EngineStats, GroebnerBasis, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, Term};
pub use ring::Ring;

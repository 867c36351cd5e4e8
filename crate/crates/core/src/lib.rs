//! Exact computation with binary-ternary Hom-algebras over `ℚ[params]`.
//!
//! Structure constants are dense tensors of polynomial scalars, so every
//! check is an exact polynomial identity: a pass holds for all values of the
//! symbolic parameters.

mod lex;

pub mod algebra;
pub mod catalog;
pub mod coeff;
pub mod constructions;
pub mod error;
pub mod identity;
pub mod io;
pub mod morphism;

pub use algebra::{is_morphism, is_weak_morphism, BasisTuple, HomAlgebra, LinearMap, TupleFailure, Vector};
pub use coeff::{Monomial, Rational, Scalar};
pub use error::{DimensionMismatch, Error, ParseError};
pub use identity::{check_suite, IdentitySuite, SuiteReport, Verdict};

//! Exact local symbols on function fields: divisors, tame and degree
//! symbols, residues and ε-residue pairings on the projective line, and
//! two-dimensional symbols along flags on the plane, together with
//! reciprocity checkers that sum each symbol over all places and verify
//! the aggregate is trivial.
//!
//! All arithmetic is exact: the coefficient ring is ℚ, a finite field, an
//! extension of one, or a nilpotent ring over either. See the `examples/`
//! directory for a tour of each capability, and the `localsym` binary for
//! the command-line interface.

pub mod bivariate;
pub mod cli;
pub mod error;
pub mod expr;
pub mod field;
pub mod flags;
pub mod milnor;
pub mod place;
pub mod poly;
pub mod ratfunc;
pub mod reciprocity;
pub mod series;
pub mod symbols;

mod detrng;

pub use bivariate::{Poly2, RatFunc2};
pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use flags::{parshin_symbol, Chart, Curve2, Flag2};
pub use milnor::MilnorSymbol;
pub use place::{Divisor, Place};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use reciprocity::ReciprocityReport;
pub use series::{laurent_expand, residue_fdg, LaurentSeries};
pub use symbols::{degree_symbol, tame_symbol, SymbolValue};

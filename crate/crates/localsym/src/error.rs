//! Crate-wide error type. Every fallible operation returns [`Result`];
//! arithmetic on mismatched coefficient domains is a programming error and
//! panics instead.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("the zero function has no valuation, reduction or divisor")]
    ZeroFunction,

    #[error("pole at {0}: cannot reduce")]
    PoleAtPlace(String),

    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("factorization not certified: {0}")]
    Uncertified(String),

    #[error("place of degree {0} is not rational; cannot expand a series at it")]
    NonrationalPlace(usize),

    #[error("series precision exhausted before the requested coefficient")]
    Precision,

    #[error("wedge weight {0} unsupported (weights up to 3 are implemented)")]
    WeightTooLarge(usize),

    #[error("unsupported curve shape: {0}")]
    UnsupportedCurve(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Formal Milnor symbols: integer combinations of wedges of nonzero slots,
//! and the boundary map that lowers the weight by one at a chosen
//! codimension-one locus.
//!
//! The boundary is computed by rewriting: split each slot as z^a·u for the
//! pinned uniformizer z, expand multilinearly, kill wedges that contain the
//! slot 1 or no z at all, move the z's to the tail picking up one sign per
//! transposition, fold repeated z's via {z, z} = {-1, z}, then drop the
//! trailing z and reduce the remaining slots.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Elem;

/// Weight-homogeneous formal sum of wedges with integer coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MilnorSymbol<T> {
    terms: Vec<(i64, Vec<T>)>,
}

impl<T: Clone + PartialEq> MilnorSymbol<T> {
    pub fn zero() -> MilnorSymbol<T> {
        MilnorSymbol { terms: Vec::new() }
    }

    /// A single wedge with coefficient one.
    pub fn wedge(slots: Vec<T>) -> MilnorSymbol<T> {
        MilnorSymbol { terms: vec![(1, slots)] }
    }

    pub fn from_terms(terms: Vec<(i64, Vec<T>)>) -> MilnorSymbol<T> {
        let mut s = MilnorSymbol { terms };
        s.combine();
        s
    }

    pub fn terms(&self) -> &[(i64, Vec<T>)] {
        &self.terms
    }

    /// Common wedge length; None for the zero symbol.
    pub fn weight(&self) -> Option<usize> {
        let w = self.terms.first().map(|(_, s)| s.len())?;
        assert!(
            self.terms.iter().all(|(_, s)| s.len() == w),
            "mixed-weight symbol"
        );
        Some(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MilnorSymbol<T>) -> MilnorSymbol<T> {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MilnorSymbol::from_terms(terms)
    }

    pub fn scale(&self, c: i64) -> MilnorSymbol<T> {
        MilnorSymbol::from_terms(
            self.terms
                .iter()
                .map(|(k, s)| (c * k, s.clone()))
                .collect(),
        )
    }

    pub fn neg(&self) -> MilnorSymbol<T> {
        self.scale(-1)
    }

    fn combine(&mut self) {
        let mut merged: Vec<(i64, Vec<T>)> = Vec::new();
        for (c, slots) in self.terms.drain(..) {
            match merged.iter_mut().find(|(_, s)| *s == slots) {
                Some((acc, _)) => *acc += c,
                None => merged.push((c, slots)),
            }
        }
        merged.retain(|(c, _)| *c != 0);
        self.terms = merged;
    }

    /// Total coefficient of a weight-zero symbol (the image of a valuation
    /// map); errors when any wedge still has slots.
    pub fn as_integer(&self) -> Result<i64> {
        if self.terms.iter().any(|(_, s)| !s.is_empty()) {
            return Err(Error::Unsupported(
                "as_integer needs a weight-zero symbol".into(),
            ));
        }
        Ok(self.terms.iter().map(|(c, _)| c).sum())
    }
}

impl MilnorSymbol<Elem> {
    /// Evaluates a weight-one symbol in the multiplicative group:
    /// Σ c_i {u_i} becomes Π u_i^{c_i}.
    pub fn exponentiate(&self) -> Result<Elem> {
        let mut acc: Option<Elem> = None;
        for (c, slots) in &self.terms {
            if slots.len() != 1 {
                return Err(Error::Unsupported(
                    "exponentiate needs a weight-one symbol".into(),
                ));
            }
            let v = slots[0].pow(*c)?;
            acc = Some(match acc {
                Some(a) => &a * &v,
                None => v,
            });
        }
        acc.ok_or(Error::ZeroFunction)
    }

    /// As `exponentiate`, but an empty (zero) symbol evaluates to 1 in the
    /// given field.
    pub fn exponentiate_in(&self, field: &crate::field::Field) -> Result<Elem> {
        if self.is_zero() {
            return Ok(field.one());
        }
        self.exponentiate()
    }
}

impl<T: fmt::Display> fmt::Display for MilnorSymbol<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, slots)) in self.terms.iter().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != 1 || slots.is_empty() {
                write!(f, "{mag}")?;
                if !slots.is_empty() {
                    write!(f, "*")?;
                }
            }
            if !slots.is_empty() {
                write!(f, "{{")?;
                for (j, s) in slots.iter().enumerate() {
                    if j > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, "}}")?;
            }
        }
        Ok(())
    }
}

/// What the boundary needs to know about one codimension-one locus: how to
/// split a slot into uniformizer power times unit, and how to reduce units
/// into the residue level.
pub(crate) trait BoundaryCtx {
    type Up: Clone + PartialEq;
    type Down: Clone + PartialEq;

    /// f = z^a · u with u a unit at the locus; returns (a, u).
    fn split(&self, f: &Self::Up) -> Result<(i64, Self::Up)>;
    /// Image of a unit in the residue level.
    fn reduce(&self, u: &Self::Up) -> Result<Self::Down>;
    /// The constant -1 upstairs (for the {z, z} = {-1, z} rewrite).
    fn minus_one(&self) -> Self::Up;
    fn is_one_up(&self, f: &Self::Up) -> bool;
    fn is_one_down(&self, d: &Self::Down) -> bool;
}

/// The weight-lowering boundary map for weights one to three.
pub(crate) fn boundary<C: BoundaryCtx>(
    sym: &MilnorSymbol<C::Up>,
    ctx: &C,
) -> Result<MilnorSymbol<C::Down>> {
    let mut out: Vec<(i64, Vec<C::Down>)> = Vec::new();
    for (coeff, slots) in sym.terms() {
        let m = slots.len();
        if m == 0 || m > 3 {
            return Err(Error::WeightTooLarge(m));
        }
        let mut split = Vec::with_capacity(m);
        for s in slots {
            split.push(ctx.split(s)?);
        }
        // multilinear expansion: each slot contributes either its z-power
        // (with weight a_i) or its unit part
        'term: for mask in 0u32..(1 << m) {
            let mut c = *coeff;
            for (i, (a, _)) in split.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    c *= a;
                }
            }
            if c == 0 {
                continue;
            }
            let z_positions: Vec<usize> =
                (0..m).filter(|i| mask & (1 << i) != 0).collect();
            let r = z_positions.len();
            if r == 0 {
                continue; // a wedge of units has zero boundary
            }
            let mut units: Vec<C::Up> = Vec::new();
            for (i, (_, u)) in split.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    if ctx.is_one_up(u) {
                        continue 'term; // a slot equal to 1 kills the wedge
                    }
                    units.push(u.clone());
                }
            }
            // move the z's to the tail, one sign per adjacent transposition
            let mut swaps = 0usize;
            for (j, &p) in z_positions.iter().enumerate() {
                swaps += m - r + j - p;
            }
            if swaps % 2 == 1 {
                c = -c;
            }
            // {..., z, z} = {..., -1, z}, repeated until a single z remains
            for _ in 1..r {
                units.push(ctx.minus_one());
            }
            // drop the trailing z and land in the residue level
            let mut reduced = Vec::with_capacity(units.len());
            for u in &units {
                let d = ctx.reduce(u)?;
                if ctx.is_one_down(&d) {
                    continue 'term;
                }
                reduced.push(d);
            }
            out.push((c, reduced));
        }
    }
    Ok(MilnorSymbol::from_terms(out))
}

//! The dimension-one local symbols on the line: degree symbol, tame symbol,
//! the two ε-residue pairings, and the Milnor boundary at a place.

use crate::error::{Error, Result};
use crate::field::{norm, Elem, Field};
use crate::milnor::{boundary, BoundaryCtx, MilnorSymbol};
use crate::place::Place;
use crate::ratfunc::RatFunc;
use crate::series::residue_fdg;

/// A computed symbol value together with its provenance: where it was
/// evaluated, from which inputs, and by which formula.
#[derive(Debug, Clone)]
pub struct SymbolValue {
    pub value: Elem,
    pub formula: &'static str,
    pub at: String,
    pub inputs: Vec<String>,
}

impl SymbolValue {
    pub(crate) fn new(
        value: Elem,
        formula: &'static str,
        at: String,
        inputs: Vec<String>,
    ) -> SymbolValue {
        assert!(value.is_unit(), "symbol values must be units");
        SymbolValue { value, formula, at, inputs }
    }
}

impl std::fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The degree symbol [k(p):k] · v_p(f).
pub fn degree_symbol(f: &RatFunc, p: &Place) -> Result<i64> {
    Ok(p.degree() as i64 * p.valuation(f)?)
}

/// The tame symbol
/// N_{k(p)/k}( (-1)^{v_p(f) v_p(g)} · r_f^{v_p(g)} · r_g^{-v_p(f)} ),
/// where r_f, r_g are the unit parts of f and g at p.
pub fn tame_symbol(f: &RatFunc, g: &RatFunc, p: &Place) -> Result<SymbolValue> {
    let pre = tame_symbol_pre_norm(f, g, p)?;
    Ok(SymbolValue::new(
        norm(&pre)?,
        "tame",
        p.to_string(),
        vec![f.to_string(), g.to_string()],
    ))
}

/// The tame symbol before the norm, as an element of k(p).
pub fn tame_symbol_pre_norm(f: &RatFunc, g: &RatFunc, p: &Place) -> Result<Elem> {
    let vf = p.valuation(f)?;
    let vg = p.valuation(g)?;
    let rf = p.unit_part(f)?;
    let rg = p.unit_part(g)?;
    let kp = p.residue_field();
    let sign = if (vf * vg) % 2 == 0 { kp.one() } else { kp.from_i64(-1) };
    Ok(&(&sign * &rf.pow(vg)?) * &rg.pow(-vf)?)
}

/// The ε-residue pairing: the image of (1 - ε₁f) ∧ (1 - ε₂g) at p, namely
/// 1 - ε₁ε₂ · Res_p(f·dg) in k[ε₁,ε₂]/(ε₁², ε₂²).
pub fn residue_pairing(f: &RatFunc, g: &RatFunc, p: &Place) -> Result<SymbolValue> {
    let k = f.field().clone();
    if !k.is_field() {
        return Err(Error::InvalidDescriptor(
            "residue pairing inputs live over a field".into(),
        ));
    }
    let ring = Field::eps_square_zero(k, 2)?;
    let res = residue_fdg(f, g, p)?;
    let eps1 = ring.nil_generator(0)?;
    let eps2 = ring.nil_generator(1)?;
    let value = &ring.one() - &(&(&eps1 * &eps2) * &ring.embed(&res));
    // structural shape check: constant term 1, no bare ε₁ or ε₂ component
    assert!(value.nil_constant().is_one(), "pairing constant term must be 1");
    assert!(
        value.nil_coeff(0b01)?.is_zero() && value.nil_coeff(0b10)?.is_zero(),
        "pairing must have no single-ε component"
    );
    Ok(SymbolValue::new(
        value,
        "residue-pairing",
        p.to_string(),
        vec![f.to_string(), g.to_string()],
    ))
}

/// Extracts the k-valued residue R(f,g) from a residue_pairing value.
pub fn pairing_residue_coefficient(v: &SymbolValue) -> Result<Elem> {
    Ok(v.value.nil_coeff(0b11)?.neg_ref())
}

/// The single-ε variant: 1 - ε² · Res_p(f·dg) in k[ε]/(ε³).
pub fn eps3_pairing(f: &RatFunc, g: &RatFunc, p: &Place) -> Result<SymbolValue> {
    let k = f.field().clone();
    if !k.is_field() {
        return Err(Error::InvalidDescriptor(
            "residue pairing inputs live over a field".into(),
        ));
    }
    let ring = Field::eps_truncated(k, 3)?;
    let res = residue_fdg(f, g, p)?;
    let eps = ring.nil_generator(0)?;
    let value = &ring.one() - &(&(&eps * &eps) * &ring.embed(&res));
    assert!(value.nil_constant().is_one(), "pairing constant term must be 1");
    assert!(value.nil_coeff(1)?.is_zero(), "pairing must have no ε¹ component");
    Ok(SymbolValue::new(
        value,
        "eps3-pairing",
        p.to_string(),
        vec![f.to_string(), g.to_string()],
    ))
}

/// Extracts the k-valued residue from an eps3_pairing value.
pub fn eps3_residue_coefficient(v: &SymbolValue) -> Result<Elem> {
    Ok(v.value.nil_coeff(2)?.neg_ref())
}

struct PlaceCtx<'a> {
    place: &'a Place,
}

impl BoundaryCtx for PlaceCtx<'_> {
    type Up = RatFunc;
    type Down = Elem;

    fn split(&self, f: &RatFunc) -> Result<(i64, RatFunc)> {
        let v = self.place.valuation(f)?;
        let u = match self.place {
            Place::Finite(p) => f.mul(&RatFunc::from_poly(p.clone()).pow(-v)?)?,
            Place::Infinity { field, .. } => {
                f.mul(&RatFunc::variable(field, self.place.var()).pow(v)?)?
            }
        };
        Ok((v, u))
    }

    fn reduce(&self, u: &RatFunc) -> Result<Elem> {
        self.place.reduce(u)
    }

    fn minus_one(&self) -> RatFunc {
        RatFunc::from_i64(self.place.field(), self.place.var(), -1)
    }

    fn is_one_up(&self, f: &RatFunc) -> bool {
        f.is_one()
    }

    fn is_one_down(&self, d: &Elem) -> bool {
        d.is_one()
    }
}

/// Milnor boundary at a place: weight m symbols over the function field map
/// to weight m-1 symbols over the residue field k(p). Weights up to three.
pub fn milnor_boundary(
    s: &MilnorSymbol<RatFunc>,
    p: &Place,
) -> Result<MilnorSymbol<Elem>> {
    if let Some(w) = s.weight() {
        if w > 3 {
            return Err(Error::WeightTooLarge(w));
        }
    }
    boundary(s, &PlaceCtx { place: p })
}

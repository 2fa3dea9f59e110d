//! Rational functions in one variable, kept in lowest terms with a monic
//! denominator, plus an optional factored-form hint.
//!
//! A hint records the function as `unit * prod factor_i ^ e_i` exactly. It is
//! created when the user writes a factored expression, survives
//! multiplication, division and powers, and is dropped by addition. Full
//! factorization consults the hint first so certified factoring only has to
//! handle the pieces the user already separated.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq)]
pub struct FactoredHint {
    pub unit: Elem,
    /// Monic polynomial factors of degree >= 1 with nonzero integer exponents.
    pub factors: Vec<(Poly, i64)>,
}

impl FactoredHint {
    fn merge(&self, other: &FactoredHint) -> FactoredHint {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            match factors.iter_mut().find(|(q, _)| q == p) {
                Some((_, acc)) => *acc += e,
                None => factors.push((p.clone(), *e)),
            }
        }
        factors.retain(|(_, e)| *e != 0);
        FactoredHint { unit: &self.unit * &other.unit, factors }
    }

    fn invert(&self) -> Result<FactoredHint> {
        Ok(FactoredHint {
            unit: self.unit.inv()?,
            factors: self.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
        })
    }

    fn power(&self, e: i64) -> Result<FactoredHint> {
        let unit = if e >= 0 {
            self.unit.pow(e)?
        } else {
            self.unit.inv()?.pow(-e)?
        };
        Ok(FactoredHint {
            unit,
            factors: self
                .factors
                .iter()
                .map(|(p, k)| (p.clone(), k * e))
                .collect(),
        })
    }

    /// Rebuilds numerator and denominator from the hint (for verification).
    fn reconstruct(&self, var: char) -> (Poly, Poly) {
        let field = self.unit.field().clone();
        let mut num = Poly::constant(self.unit.clone(), var);
        let mut den = Poly::constant(field.one(), var);
        for (p, e) in &self.factors {
            if *e > 0 {
                num = num.mul(&p.pow(*e as u64));
            } else {
                den = den.mul(&p.pow((-e) as u64));
            }
        }
        (num, den)
    }
}

#[derive(Debug, Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
    hint: Option<FactoredHint>,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        // cross-multiplied so unreduced representations still compare equal
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        RatFunc::with_hint(num, den, None)
    }

    pub fn with_hint(num: Poly, den: Poly, hint: Option<FactoredHint>) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let var = if num.is_constant() { den.var() } else { num.var() };
        if num.is_zero() {
            let field = num.field().clone();
            return Ok(RatFunc {
                num,
                den: Poly::constant(field.one(), var),
                hint: None,
            });
        }
        let (mut num, mut den) = (num, den);
        if num.field().is_field() {
            let g = num.gcd(&den)?;
            if g.degree() > 0 {
                num = num.exact_div(&g)?;
                den = den.exact_div(&g)?;
            }
            let (lead, monic_den) = den.monic()?;
            den = monic_den;
            num = num.scale(&lead.inv()?);
        } else if let Ok(lead_inv) = den.leading_coeff().inv() {
            den = den.scale(&lead_inv);
            num = num.scale(&lead_inv);
        }
        let out = RatFunc { num, den, hint };
        debug_assert!(out.hint_consistent(), "factored hint out of sync");
        Ok(out)
    }

    fn hint_consistent(&self) -> bool {
        match &self.hint {
            None => true,
            Some(h) => {
                let (hn, hd) = h.reconstruct(self.var());
                hn.mul(&self.den) == hd.mul(&self.num)
            }
        }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let den = Poly::constant(p.field().one(), p.var());
        RatFunc::new(p, den).expect("constant one denominator")
    }

    pub fn constant(e: Elem, var: char) -> RatFunc {
        let mut f = RatFunc::from_poly(Poly::constant(e.clone(), var));
        if !e.is_zero() {
            // a nonzero constant is its own certified factorization
            f.hint = Some(FactoredHint { unit: e, factors: Vec::new() });
        }
        f
    }

    pub fn variable(field: &Field, var: char) -> RatFunc {
        let mut f = RatFunc::from_poly(Poly::variable(field, var));
        f.hint = Some(FactoredHint {
            unit: field.one(),
            factors: vec![(Poly::variable(field, var), 1)],
        });
        f
    }

    pub fn zero(field: &Field, var: char) -> RatFunc {
        RatFunc::from_poly(Poly::zero(field, var))
    }

    pub fn one(field: &Field, var: char) -> RatFunc {
        RatFunc::constant(field.one(), var)
    }

    pub fn from_i64(field: &Field, var: char, c: i64) -> RatFunc {
        RatFunc::constant(field.from_i64(c), var)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn var(&self) -> char {
        if self.num.is_constant() {
            self.den.var()
        } else {
            self.num.var()
        }
    }

    pub fn hint(&self) -> Option<&FactoredHint> {
        self.hint.as_ref()
    }

    /// Attaches the trivial hint `f = unit * monic(f)` to a polynomial-valued
    /// function; used by the parser when the user parenthesizes a factor.
    pub fn as_hinted_factor(&self) -> RatFunc {
        let mut out = self.clone();
        if out.hint.is_some() {
            return out;
        }
        if !out.field().is_field() {
            return out;
        }
        if out.den.is_one() && !out.num.is_zero() {
            if let Ok((unit, monic)) = out.num.monic() {
                let factors = if monic.degree() >= 1 {
                    vec![(monic, 1)]
                } else {
                    Vec::new()
                };
                out.hint = Some(FactoredHint { unit, factors });
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value of a constant function.
    pub fn constant_value(&self) -> Option<Elem> {
        if self.is_constant() {
            self.num.coeff(0).try_div(&self.den.coeff(0)).ok()
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatFunc) -> Result<RatFunc> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        RatFunc::new(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> RatFunc {
        let hint = self.hint.as_ref().map(|h| FactoredHint {
            unit: h.unit.neg_ref(),
            factors: h.factors.clone(),
        });
        RatFunc::with_hint(self.num.neg(), self.den.clone(), hint)
            .expect("negation preserves validity")
    }

    pub fn sub(&self, other: &RatFunc) -> Result<RatFunc> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> Result<RatFunc> {
        let hint = match (&self.hint, &other.hint) {
            (Some(a), Some(b)) if !self.is_zero() && !other.is_zero() => Some(a.merge(b)),
            _ => None,
        };
        RatFunc::with_hint(self.num.mul(&other.num), self.den.mul(&other.den), hint)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let hint = match &self.hint {
            Some(h) => Some(h.invert()?),
            None => None,
        };
        RatFunc::with_hint(self.den.clone(), self.num.clone(), hint)
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        if e == 0 {
            return Ok(RatFunc::one(self.field(), self.var()));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        let hint = match &self.hint {
            Some(h) if !self.is_zero() => Some(h.power(e)?),
            _ => None,
        };
        RatFunc::with_hint(base.num.pow(k), base.den.pow(k), hint)
    }

    /// Evaluates at a point of the coefficient field; errors on a pole.
    pub fn eval(&self, x: &Elem) -> Result<Elem> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPlace(format!("{} = {}", self.var(), x)));
        }
        self.num.eval(x).try_div(&d)
    }

    /// Derivative with respect to the variable (quotient rule).
    pub fn derivative(&self) -> Result<RatFunc> {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RatFunc::new(num, self.den.mul(&self.den))
    }

    /// Embeds coefficientwise into an extension field.
    pub fn lift_to(&self, target: &Field) -> RatFunc {
        let hint = self.hint.as_ref().map(|h| FactoredHint {
            unit: target.embed(&h.unit),
            factors: h
                .factors
                .iter()
                .map(|(p, e)| (p.lift_to(target), *e))
                .collect(),
        });
        RatFunc {
            num: self.num.lift_to(target),
            den: self.den.lift_to(target),
            hint,
        }
    }

    /// Full factorization `unit * prod irreducible_i ^ e_i`, refining the
    /// hint when one is available so only its pieces need certified factoring.
    pub fn factored(&self) -> Result<(Elem, Vec<(Poly, i64)>)> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let mut unit;
        let mut out: Vec<(Poly, i64)> = Vec::new();
        let push = |p: Poly, e: i64, out: &mut Vec<(Poly, i64)>| {
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some((_, acc)) => *acc += e,
                None => out.push((p, e)),
            }
        };
        match &self.hint {
            Some(h) if self.hint_consistent() => {
                unit = h.unit.clone();
                for (p, e) in &h.factors {
                    let (u, irr) = p.factor()?;
                    unit = &unit
                        * &(if *e >= 0 {
                            u.pow(*e)?
                        } else {
                            u.inv()?.pow(-e)?
                        });
                    for (q, m) in irr {
                        push(q, m as i64 * e, &mut out);
                    }
                }
            }
            _ => {
                let (u_num, num_factors) = self.num.factor()?;
                let (u_den, den_factors) = self.den.factor()?;
                unit = u_num.try_div(&u_den)?;
                for (q, m) in num_factors {
                    push(q, m as i64, &mut out);
                }
                for (q, m) in den_factors {
                    push(q, -(m as i64), &mut out);
                }
            }
        }
        out.retain(|(_, e)| *e != 0);
        out.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        Ok((unit, out))
    }
}

fn display_atom(s: &str) -> bool {
    s.chars().all(|c| c.is_alphanumeric() || c == '^' || c == '_')
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.to_string();
        if self.den.is_one() {
            return write!(f, "{n}");
        }
        let d = self.den.to_string();
        // a single leading minus re-parses identically, so it may stay bare
        let n_body = n.strip_prefix('-').unwrap_or(&n);
        let n = if display_atom(n_body) { n } else { format!("({n})") };
        let d = if display_atom(&d) { d } else { format!("({d})") };
        write!(f, "{n}/{d}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn poly(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_i64_coeffs(field, 't', coeffs)
    }

    #[test]
    fn reduction_to_lowest_terms() {
        let k = q();
        // (t^2-1)/(t-1) = t+1
        let f = RatFunc::new(poly(&k, &[-1, 0, 1]), poly(&k, &[-1, 1])).unwrap();
        assert_eq!(f.to_string(), "t+1");
        assert!(f.den().is_one());
    }

    #[test]
    fn denominator_made_monic() {
        let k = q();
        let f = RatFunc::new(poly(&k, &[1]), poly(&k, &[0, 2])).unwrap();
        assert_eq!(f.to_string(), "(1/2)/t");
    }

    #[test]
    fn arithmetic_and_derivative() {
        let k = q();
        let t = RatFunc::variable(&k, 't');
        let one = RatFunc::one(&k, 't');
        // d/dt (1/t) = -1/t^2
        let invt = one.div(&t).unwrap();
        assert_eq!(invt.derivative().unwrap().to_string(), "-1/t^2");
        // t * 1/t = 1
        assert!(t.mul(&invt).unwrap().is_one());
        // t + (-t) = 0
        assert!(t.add(&t.neg()).unwrap().is_zero());
    }

    #[test]
    fn hints_survive_multiplication_and_refine_factoring() {
        let k = q();
        let a = RatFunc::from_poly(poly(&k, &[-1, 0, 1])).as_hinted_factor(); // t^2-1
        let b = RatFunc::from_poly(poly(&k, &[3, 1])).as_hinted_factor(); // t+3
        let f = a.mul(&b.pow(2).unwrap()).unwrap().inv().unwrap();
        let hint = f.hint().expect("hint should survive * ^ and inversion");
        assert_eq!(hint.factors.len(), 2);
        let (unit, factors) = f.factored().unwrap();
        assert!(unit.is_one());
        let strs: Vec<String> = factors
            .iter()
            .map(|(p, e)| format!("({p})^{e}"))
            .collect();
        assert_eq!(strs, vec!["(t-1)^-1", "(t+1)^-1", "(t+3)^-2"]);
    }

    #[test]
    fn hint_dropped_by_addition() {
        let k = q();
        let t = RatFunc::variable(&k, 't');
        let sum = t.add(&RatFunc::one(&k, 't')).unwrap();
        assert!(sum.hint().is_none());
        assert!(t.add(&RatFunc::zero(&k, 't')).unwrap().hint().is_some());
    }

    #[test]
    fn eval_and_poles() {
        let k = q();
        let t = RatFunc::variable(&k, 't');
        let f = RatFunc::one(&k, 't').div(&t).unwrap();
        let half = k.from_i64(1).try_div(&k.from_i64(2)).unwrap();
        assert_eq!(f.eval(&k.from_i64(2)).unwrap(), half);
        assert!(matches!(f.eval(&k.zero()), Err(Error::PoleAtPlace(_))));
    }

    #[test]
    fn factoring_without_hint_is_certified() {
        let k = q();
        let f = RatFunc::new(poly(&k, &[1, 0, 1]), poly(&k, &[0, 1])).unwrap(); // (t^2+1)/t
        let (_, factors) = f.factored().unwrap();
        let strs: Vec<String> = factors
            .iter()
            .map(|(p, e)| format!("({p})^{e}"))
            .collect();
        assert_eq!(strs, vec!["(t)^-1", "(t^2+1)^1"]);
    }
}

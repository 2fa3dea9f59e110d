//! Bivariate polynomials and rational functions in (x, y), just enough for
//! flags on the doubled line: curve-order extraction, reductions onto a
//! coordinate line, chart inversions, and factored-form hints.
//!
//! Numerator/denominator pairs are deliberately left unreduced (no bivariate
//! gcd); orders and reductions are computed on the pieces, which is exact.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// Dense in y with univariate coefficients: `coeffs[i]` (a polynomial in x)
/// multiplies y^i.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    field: Field,
    coeffs: Vec<Poly>,
}

impl Poly2 {
    pub fn new(field: Field, coeffs: Vec<Poly>) -> Poly2 {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        Poly2 { field, coeffs }
    }

    pub fn zero(field: &Field) -> Poly2 {
        Poly2 { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(e: Elem) -> Poly2 {
        let field = e.field().clone();
        Poly2::new(field.clone(), vec![Poly::constant(e, 'x')])
    }

    /// Embeds a univariate polynomial in x.
    pub fn from_poly_x(p: &Poly) -> Poly2 {
        Poly2::new(p.field().clone(), vec![p.with_var('x')])
    }

    /// Embeds a univariate polynomial as a polynomial in y.
    pub fn from_poly_y(p: &Poly) -> Poly2 {
        let field = p.field().clone();
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| Poly::constant(c.clone(), 'x'))
            .collect();
        Poly2::new(field, coeffs)
    }

    pub fn variable_x(field: &Field) -> Poly2 {
        Poly2::from_poly_x(&Poly::variable(field, 'x'))
    }

    pub fn variable_y(field: &Field) -> Poly2 {
        Poly2::new(
            field.clone(),
            vec![Poly::zero(field, 'x'), Poly::constant(field.one(), 'x')],
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.deg_y() <= 0 && self.deg_x() <= 0
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn deg_y(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn deg_x(&self) -> i64 {
        self.coeffs.iter().map(Poly::degree).max().unwrap_or(-1)
    }

    /// Coefficient of y^i, a polynomial in x.
    pub fn coeff_y(&self, i: usize) -> Poly {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.field, 'x'))
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff_y(i).add(&other.coeff_y(i)));
        }
        Poly2::new(self.field.clone(), out)
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(Poly::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() || other.is_zero() {
            return Poly2::zero(&self.field);
        }
        let mut out =
            vec![Poly::zero(&self.field, 'x'); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly2::new(self.field.clone(), out)
    }

    pub fn scale(&self, c: &Elem) -> Poly2 {
        Poly2::new(
            self.field.clone(),
            self.coeffs.iter().map(|p| p.scale(c)).collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Poly2 {
        let mut result = Poly2::constant(self.field.one());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        result
    }

    pub fn eval_point(&self, alpha: &Elem, beta: &Elem) -> Elem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * beta) + &c.eval(alpha);
        }
        acc
    }

    /// Substitutes y := inner(x, y) (Horner in y).
    pub fn compose_y(&self, inner: &Poly2) -> Poly2 {
        let mut acc = Poly2::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly2::from_poly_x(c));
        }
        acc
    }

    /// Order along the graph curve y = s(x) and the leading coefficient:
    /// substituting y = s(x) + w, returns (order in w, coefficient of
    /// w^order), the latter a nonzero polynomial in x.
    pub fn graph_order(&self, s: &Poly) -> Result<(i64, Poly)> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let shifted = self.compose_y(
            &Poly2::from_poly_x(&s.with_var('x')).add(&Poly2::variable_y(&self.field)),
        );
        for (i, c) in shifted.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return Ok((i as i64, c.clone()));
            }
        }
        unreachable!("substitution preserves nonzeroness");
    }

    /// Order along the vertical line x = alpha and the leading coefficient:
    /// substituting x = alpha + w, returns (order in w, coefficient of
    /// w^order), the latter a nonzero polynomial in y.
    pub fn vertical_order(&self, alpha: &Elem) -> Result<(i64, Poly)> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let shifted: Vec<Poly> = self
            .coeffs
            .iter()
            .map(|c| c.taylor_shift(alpha))
            .collect();
        let ord = shifted
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.coeffs().iter().take_while(|e| e.is_zero()).count())
            .min()
            .expect("nonzero polynomial");
        let red = shifted
            .iter()
            .map(|c| c.coeff(ord))
            .collect::<Vec<Elem>>();
        Ok((ord as i64, Poly::new(self.field.clone(), 'y', red)))
    }

    /// x := 1/X, cleared: returns X^{deg_x} * self(1/X, y).
    pub fn invert_x(&self) -> Poly2 {
        let d = self.deg_x().max(0) as usize;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let mut v = c.coeffs().to_vec();
                v.resize(d + 1, self.field.zero());
                v.reverse();
                Poly::new(self.field.clone(), 'x', v)
            })
            .collect();
        Poly2::new(self.field.clone(), coeffs)
    }

    /// y := 1/Y, cleared: returns Y^{deg_y} * self(x, 1/Y).
    pub fn invert_y(&self) -> Poly2 {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly2::new(self.field.clone(), coeffs)
    }
}

fn coeff_term(c: &Elem, powers: &str) -> (bool, String) {
    let cs = c.to_string();
    if powers.is_empty() {
        return match cs.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, cs),
        };
    }
    if cs == "1" {
        return (false, powers.to_string());
    }
    if cs == "-1" {
        return (true, powers.to_string());
    }
    let atomic = !cs.contains(['+', '*', '/']) && !cs[1..].contains('-');
    match cs.strip_prefix('-') {
        Some(rest) if atomic => (true, format!("{rest}*{powers}")),
        _ if atomic => (false, format!("{cs}*{powers}")),
        _ => (false, format!("({cs})*{powers}")),
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut wrote = false;
        for yi in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[yi];
            for xj in (0..=c.degree().max(0) as usize).rev() {
                let e = c.coeff(xj);
                if e.is_zero() {
                    continue;
                }
                let mut powers = String::new();
                if xj > 0 {
                    powers.push('x');
                    if xj > 1 {
                        powers.push_str(&format!("^{xj}"));
                    }
                }
                if yi > 0 {
                    if !powers.is_empty() {
                        powers.push('*');
                    }
                    powers.push('y');
                    if yi > 1 {
                        powers.push_str(&format!("^{yi}"));
                    }
                }
                let (neg, body) = coeff_term(&e, &powers);
                if wrote {
                    write!(f, "{}", if neg { "-" } else { "+" })?;
                } else if neg {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                wrote = true;
            }
        }
        Ok(())
    }
}

/// Factored-form hint for a bivariate rational function.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredHint2 {
    pub unit: Elem,
    pub factors: Vec<(Poly2, i64)>,
}

impl FactoredHint2 {
    fn merge(&self, other: &FactoredHint2) -> FactoredHint2 {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            match factors.iter_mut().find(|(q, _)| q == p) {
                Some((_, acc)) => *acc += e,
                None => factors.push((p.clone(), *e)),
            }
        }
        factors.retain(|(_, e)| *e != 0);
        FactoredHint2 { unit: &self.unit * &other.unit, factors }
    }
}

/// A bivariate rational function, unreduced, with an optional factored hint.
#[derive(Debug, Clone)]
pub struct RatFunc2 {
    num: Poly2,
    den: Poly2,
    hint: Option<FactoredHint2>,
}

impl PartialEq for RatFunc2 {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl RatFunc2 {
    pub fn new(num: Poly2, den: Poly2) -> Result<RatFunc2> {
        RatFunc2::with_hint(num, den, None)
    }

    pub fn with_hint(num: Poly2, den: Poly2, hint: Option<FactoredHint2>) -> Result<RatFunc2> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(RatFunc2 {
                num,
                den: Poly2::constant(field.one()),
                hint: None,
            });
        }
        // fold a constant denominator into the numerator
        let (num, den) = if den.deg_y() == 0 && den.deg_x() <= 0 {
            let c = den.coeff_y(0).coeff(0);
            (num.scale(&c.inv()?), Poly2::constant(field.one()))
        } else {
            (num, den)
        };
        Ok(RatFunc2 { num, den, hint })
    }

    pub fn from_poly2(p: Poly2) -> RatFunc2 {
        let one = Poly2::constant(p.field().one());
        RatFunc2 { num: p, den: one, hint: None }
    }

    pub fn constant(e: Elem) -> RatFunc2 {
        let mut f = RatFunc2::from_poly2(Poly2::constant(e.clone()));
        if !e.is_zero() {
            // a nonzero constant is its own certified factorization
            f.hint = Some(FactoredHint2 { unit: e, factors: Vec::new() });
        }
        f
    }

    pub fn variable_x(field: &Field) -> RatFunc2 {
        let mut f = RatFunc2::from_poly2(Poly2::variable_x(field));
        f.hint = Some(FactoredHint2 {
            unit: field.one(),
            factors: vec![(Poly2::variable_x(field), 1)],
        });
        f
    }

    pub fn variable_y(field: &Field) -> RatFunc2 {
        let mut f = RatFunc2::from_poly2(Poly2::variable_y(field));
        f.hint = Some(FactoredHint2 {
            unit: field.one(),
            factors: vec![(Poly2::variable_y(field), 1)],
        });
        f
    }

    pub fn one(field: &Field) -> RatFunc2 {
        RatFunc2::constant(field.one())
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn hint(&self) -> Option<&FactoredHint2> {
        self.hint.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Marks a polynomial-valued function as a factor for hint purposes.
    pub fn as_hinted_factor(&self) -> RatFunc2 {
        let mut out = self.clone();
        if out.hint.is_some() || out.is_zero() {
            return out;
        }
        if out.den.is_one() && (out.num.deg_y() > 0 || out.num.deg_x() > 0) {
            out.hint = Some(FactoredHint2 {
                unit: out.field().one(),
                factors: vec![(out.num.clone(), 1)],
            });
        }
        out
    }

    pub fn add(&self, other: &RatFunc2) -> Result<RatFunc2> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        RatFunc2::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFunc2 {
        let hint = self.hint.as_ref().map(|h| FactoredHint2 {
            unit: h.unit.neg_ref(),
            factors: h.factors.clone(),
        });
        RatFunc2 { num: self.num.neg(), den: self.den.clone(), hint }
    }

    pub fn sub(&self, other: &RatFunc2) -> Result<RatFunc2> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc2) -> Result<RatFunc2> {
        let hint = match (&self.hint, &other.hint) {
            (Some(a), Some(b)) if !self.is_zero() && !other.is_zero() => Some(a.merge(b)),
            _ => None,
        };
        RatFunc2::with_hint(self.num.mul(&other.num), self.den.mul(&other.den), hint)
    }

    pub fn inv(&self) -> Result<RatFunc2> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let hint = match &self.hint {
            Some(h) => Some(FactoredHint2 {
                unit: h.unit.inv()?,
                factors: h.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
            }),
            None => None,
        };
        RatFunc2::with_hint(self.den.clone(), self.num.clone(), hint)
    }

    pub fn div(&self, other: &RatFunc2) -> Result<RatFunc2> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc2> {
        if e == 0 {
            return Ok(RatFunc2::one(self.field()));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        let hint = match (&base.hint, e < 0) {
            (Some(h), _) => Some(FactoredHint2 {
                unit: h.unit.pow(k as i64)?,
                factors: h
                    .factors
                    .iter()
                    .map(|(p, x)| (p.clone(), x * k as i64))
                    .collect(),
            }),
            _ => None,
        };
        RatFunc2::with_hint(base.num.pow(k), base.den.pow(k), hint)
    }

    pub fn eval_point(&self, alpha: &Elem, beta: &Elem) -> Result<Elem> {
        let d = self.den.eval_point(alpha, beta);
        if d.is_zero() {
            return Err(Error::PoleAtPlace(format!("({alpha}, {beta})")));
        }
        self.num.eval_point(alpha, beta).try_div(&d)
    }

    /// Order and reduction along the graph curve y = s(x): returns
    /// (order, unit reduction as a rational function in x).
    pub fn graph_order_reduce(&self, s: &Poly) -> Result<(i64, RatFunc)> {
        let (on, rn) = self.num.graph_order(s)?;
        let (od, rd) = self.den.graph_order(s)?;
        Ok((on - od, RatFunc::new(rn, rd)?))
    }

    /// Order and reduction along the vertical line x = alpha: returns
    /// (order, unit reduction as a rational function in y).
    pub fn vertical_order_reduce(&self, alpha: &Elem) -> Result<(i64, RatFunc)> {
        let (on, rn) = self.num.vertical_order(alpha)?;
        let (od, rd) = self.den.vertical_order(alpha)?;
        Ok((on - od, RatFunc::new(rn, rd)?))
    }

    /// Chart substitution x := 1/x (hints are rebuilt by the caller).
    pub fn invert_x(&self) -> Result<RatFunc2> {
        let dn = self.num.deg_x().max(0);
        let dd = self.den.deg_x().max(0);
        let x = Poly2::variable_x(self.field());
        let mut num = self.num.invert_x();
        let mut den = self.den.invert_x();
        if dd > dn {
            num = num.mul(&x.pow((dd - dn) as u64));
        } else {
            den = den.mul(&x.pow((dn - dd) as u64));
        }
        RatFunc2::new(num, den)
    }

    /// Chart substitution y := 1/y.
    pub fn invert_y(&self) -> Result<RatFunc2> {
        let dn = self.num.deg_y().max(0);
        let dd = self.den.deg_y().max(0);
        let y = Poly2::variable_y(self.field());
        let mut num = self.num.invert_y();
        let mut den = self.den.invert_y();
        if dd > dn {
            num = num.mul(&y.pow((dd - dn) as u64));
        } else {
            den = den.mul(&y.pow((dn - dd) as u64));
        }
        RatFunc2::new(num, den)
    }
}

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atom = |s: &str| s.chars().all(|c| c.is_alphanumeric() || c == '^');
        let n = self.num.to_string();
        if self.den.is_one() {
            return write!(f, "{n}");
        }
        let d = self.den.to_string();
        let n_body = n.strip_prefix('-').unwrap_or(&n);
        let n = if atom(n_body) { n } else { format!("({n})") };
        let d = if atom(&d) { d } else { format!("({d})") };
        write!(f, "{n}/{d}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn px(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_i64_coeffs(field, 'x', coeffs)
    }

    #[test]
    fn display_and_arithmetic() {
        let k = q();
        let x = Poly2::variable_x(&k);
        let y = Poly2::variable_y(&k);
        let f = y.sub(&x.mul(&x)).add(&Poly2::constant(k.from_i64(-1)));
        assert_eq!(f.to_string(), "y-x^2-1");
        let g = y.mul(&x).add(&Poly2::constant(k.one()));
        assert_eq!(g.to_string(), "x*y+1");
        // (y - x^2 - 1)(xy + 1) at (2, 5): (5-4-1)(10+1) = 0
        assert!(f.mul(&g).eval_point(&k.from_i64(2), &k.from_i64(5)).is_zero());
        assert_eq!(
            f.mul(&g).eval_point(&k.from_i64(1), &k.from_i64(3)),
            k.from_i64(4)
        );
    }

    #[test]
    fn graph_order_extraction() {
        let k = q();
        let y = Poly2::variable_y(&k);
        let x = Poly2::variable_x(&k);
        // f = (y - x^2)^2 * x: order 2 along y = x^2, reduction x
        let z1 = y.sub(&x.mul(&x));
        let f = z1.mul(&z1).mul(&x);
        let s = px(&k, &[0, 0, 1]);
        let (ord, red) = f.graph_order(&s).unwrap();
        assert_eq!(ord, 2);
        assert_eq!(red.to_string(), "x");
        // along y = 0 the same f has order 0 and reduction x^5
        let (ord, red) = f.graph_order(&Poly::zero(&k, 'x')).unwrap();
        assert_eq!(ord, 0);
        assert_eq!(red.to_string(), "x^5");
    }

    #[test]
    fn vertical_order_extraction() {
        let k = q();
        let y = Poly2::variable_y(&k);
        let x = Poly2::variable_x(&k);
        // f = (x - 1)^3 * (y + x): order 3 along x = 1, reduction y + 1
        let lin = x.sub(&Poly2::constant(k.one()));
        let f = lin.pow(3).mul(&y.add(&x));
        let (ord, red) = f.vertical_order(&k.one()).unwrap();
        assert_eq!(ord, 3);
        assert_eq!(red.to_string(), "y+1");
    }

    #[test]
    fn ratfunc2_orders_subtract() {
        let k = q();
        let y = RatFunc2::variable_y(&k);
        let x = RatFunc2::variable_x(&k);
        // f = y^2 / x along the curve y = 0: order 2, reduction 1/x
        let f = y.pow(2).unwrap().div(&x).unwrap();
        let (ord, red) = f.graph_order_reduce(&Poly::zero(&k, 'x')).unwrap();
        assert_eq!(ord, 2);
        assert_eq!(red.to_string(), "1/x");
    }

    #[test]
    fn chart_inversions() {
        let k = q();
        let x = RatFunc2::variable_x(&k);
        let y = RatFunc2::variable_y(&k);
        // x inverts to 1/x
        let inv = x.invert_x().unwrap();
        assert_eq!(inv.to_string(), "1/x");
        // y - x under both inversions: (x - y)/(x*y), rendered y-major
        let f = y.sub(&x).unwrap();
        let g = f.invert_x().unwrap().invert_y().unwrap();
        assert_eq!(g.to_string(), "(-y+x)/(x*y)");
        // double inversion returns the original
        let back = g.invert_x().unwrap().invert_y().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn hints_track_products() {
        let k = q();
        let x = RatFunc2::variable_x(&k);
        let y = RatFunc2::variable_y(&k);
        let f = x.mul(&y.pow(-2).unwrap()).unwrap();
        let h = f.hint().unwrap();
        assert_eq!(h.factors.len(), 2);
        assert_eq!(h.factors[0].1, 1);
        assert_eq!(h.factors[1].1, -2);
    }
}

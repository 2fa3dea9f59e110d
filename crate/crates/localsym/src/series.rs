//! Laurent expansions at rational places and at infinity, and the residue
//! Res_p(f·dg). Precision is tracked exactly: every stored coefficient is the
//! true one, and reading past the known prefix is an error rather than a
//! guess.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::place::Place;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// Finitely many exact coefficients of a Laurent series
/// Σ_{i ≥ val} c_i z^i, known strictly below `precision`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    field: Field,
    var: String,
    val: i64,
    coeffs: Vec<Elem>,
}

impl LaurentSeries {
    fn normalized(field: Field, var: String, mut val: i64, mut coeffs: Vec<Elem>) -> LaurentSeries {
        let mut lead = 0;
        while lead < coeffs.len() && coeffs[lead].is_zero() {
            lead += 1;
        }
        val += lead as i64;
        coeffs.drain(..lead);
        LaurentSeries { field, var, val, coeffs }
    }

    /// The series known to vanish up to (but excluding) `precision`.
    pub fn zero_prefix(field: &Field, var: &str, precision: i64) -> LaurentSeries {
        LaurentSeries {
            field: field.clone(),
            var: var.to_string(),
            val: precision,
            coeffs: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Exponent of the first (nonzero) known coefficient, if any coefficient
    /// is known to be nonzero.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Exponents strictly below this bound have exact coefficients.
    pub fn precision(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Exact coefficient of z^k; errors when k is beyond the known prefix.
    pub fn coeff_at(&self, k: i64) -> Result<Elem> {
        if k >= self.precision() {
            return Err(Error::Precision);
        }
        if k < self.val {
            return Ok(self.field.zero());
        }
        Ok(self.coeffs[(k - self.val) as usize].clone())
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        let val = self.val + other.val;
        let prec = (self.precision() + other.val).min(other.precision() + self.val);
        let n = (prec - val).max(0) as usize;
        let mut out = vec![self.field.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                let prod = a * b;
                out[i + j] = &out[i + j] + &prod;
            }
        }
        LaurentSeries::normalized(self.field.clone(), self.var.clone(), val, out)
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        let val = self.val.min(other.val);
        let prec = self.precision().min(other.precision());
        let n = (prec - val).max(0) as usize;
        let mut out = vec![self.field.zero(); n];
        for k in 0..n {
            let e = val + k as i64;
            let mut c = self.field.zero();
            if e >= self.val && e < self.precision() {
                c = &c + &self.coeffs[(e - self.val) as usize];
            }
            if e >= other.val && e < other.precision() {
                c = &c + &other.coeffs[(e - other.val) as usize];
            }
            out[k] = c;
        }
        LaurentSeries::normalized(self.field.clone(), self.var.clone(), val, out)
    }

    pub fn scale(&self, c: &Elem) -> LaurentSeries {
        LaurentSeries::normalized(
            self.field.clone(),
            self.var.clone(),
            self.val,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn neg(&self) -> LaurentSeries {
        self.scale(&self.field.from_i64(-1))
    }

    /// Termwise derivative d/dz.
    pub fn derivative(&self) -> LaurentSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| &self.field.from_i64(self.val + i as i64) * c)
            .collect();
        LaurentSeries::normalized(self.field.clone(), self.var.clone(), self.val - 1, coeffs)
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.val + i as i64;
            let cs = c.to_string();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if wrote {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            let mag_atom = mag.chars().all(|ch| ch.is_alphanumeric() || ch == '/');
            let mag = if mag_atom { mag } else { format!("({mag})") };
            match e {
                0 => write!(f, "{mag}")?,
                1 if mag == "1" => write!(f, "{}", self.var)?,
                1 => write!(f, "{mag}*{}", self.var)?,
                _ if mag == "1" => write!(f, "{}^{e}", self.var)?,
                _ => write!(f, "{mag}*{}^{e}", self.var)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.precision())
    }
}

/// Power series division: numerator and denominator unit coefficient lists
/// (denominator constant term invertible), to `n` output terms.
fn divide_series(num: &[Elem], den: &[Elem], field: &Field, n: usize) -> Result<Vec<Elem>> {
    let d0 = den
        .first()
        .cloned()
        .unwrap_or_else(|| field.zero())
        .inv()?;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.get(k).cloned().unwrap_or_else(|| field.zero());
        for j in 1..=k {
            if j < den.len() {
                let prod = &den[j] * &out[k - j];
                acc = &acc - &prod;
            }
        }
        out.push(&acc * &d0);
    }
    Ok(out)
}

fn trailing_order(p: &Poly) -> usize {
    p.coeffs().iter().take_while(|c| c.is_zero()).count()
}

/// Laurent expansion of `f` at a rational place or at infinity, with
/// `n_terms` known terms starting at the valuation.
pub fn laurent_expand(f: &RatFunc, place: &Place, n_terms: usize) -> Result<LaurentSeries> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if n_terms == 0 {
        return Err(Error::Precision);
    }
    if place.degree() > 1 {
        return Err(Error::NonrationalPlace(place.degree()));
    }
    let field = f.field().clone();
    let (num_u, den_u, shift, var): (Poly, Poly, i64, String) = match place {
        Place::Finite(p) => {
            let alpha = place.theta()?;
            let num_z = f.num().taylor_shift(&alpha);
            let den_z = f.den().taylor_shift(&alpha);
            let (on, od) = (trailing_order(&num_z), trailing_order(&den_z));
            let var = if p.coeff(0).is_zero() {
                p.var().to_string()
            } else {
                "z".to_string()
            };
            let strip = |p: &Poly, k: usize| {
                Poly::new(p.field().clone(), p.var(), p.coeffs()[k..].to_vec())
            };
            (
                strip(&num_z, on),
                strip(&den_z, od),
                on as i64 - od as i64,
                var,
            )
        }
        Place::Infinity { .. } => {
            let shift = f.den().degree() - f.num().degree();
            (f.num().reverse(), f.den().reverse(), shift, "s".to_string())
        }
    };
    let coeffs = divide_series(num_u.coeffs(), den_u.coeffs(), &field, n_terms)?;
    Ok(LaurentSeries::normalized(field, var, shift, coeffs))
}

/// The residue Res_p(f·dg): the z^{-1} coefficient of f·(dg/dz) in a local
/// uniformizer z at p, followed by the trace down to the coefficient field
/// when the residue field is a proper extension.
pub fn residue_fdg(f: &RatFunc, g: &RatFunc, place: &Place) -> Result<Elem> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if place.degree() > 1 {
        // base-change to the residue field, where the place becomes rational
        let kp = place.residue_field();
        let theta = place.theta()?;
        let lifted = Place::linear(&theta, place.var());
        let res = residue_rational(&f.lift_to(&kp), &g.lift_to(&kp), &lifted)?;
        return crate::field::trace(&res);
    }
    residue_rational(f, g, place)
}

fn residue_rational(f: &RatFunc, g: &RatFunc, place: &Place) -> Result<Elem> {
    let n = (place.valuation(f)?.unsigned_abs()
        + place.valuation(g)?.unsigned_abs()
        + 2) as usize;
    let sf = laurent_expand(f, place, n)?;
    let sg = laurent_expand(g, place, n)?;
    sf.mul(&sg.derivative()).coeff_at(-1)
}

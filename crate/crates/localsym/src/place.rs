//! Places of the projective line over a coefficient field: monic irreducible
//! polynomials plus a first-class point at infinity. Valuations, residue
//! fields, reduction maps, unit parts and divisors all live here.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

#[derive(Debug, Clone)]
pub enum Place {
    /// A finite closed point, stored as its monic irreducible polynomial.
    Finite(Poly),
    /// The point at infinity of the line with the given coordinate variable.
    Infinity { field: Field, var: char },
}

impl PartialEq for Place {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Place::Finite(p), Place::Finite(q)) => p == q,
            (Place::Infinity { .. }, Place::Infinity { .. }) => true,
            _ => false,
        }
    }
}

impl Eq for Place {}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    /// Canonical order: finite places by degree then coefficients (constant
    /// term first), the place at infinity last.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(p), Place::Finite(q)) => p.cmp_canonical(q),
            (Place::Finite(_), Place::Infinity { .. }) => Ordering::Less,
            (Place::Infinity { .. }, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity { .. }, Place::Infinity { .. }) => Ordering::Equal,
        }
    }
}

impl Place {
    /// Builds a finite place, normalizing to monic and certifying
    /// irreducibility.
    pub fn finite(poly: Poly) -> Result<Place> {
        if !poly.field().is_field() {
            return Err(Error::InvalidDescriptor(
                "places require a field of coefficients".into(),
            ));
        }
        if poly.degree() < 1 {
            return Err(Error::NotIrreducible(poly.to_string()));
        }
        let (_, monic) = poly.monic()?;
        if monic.degree() > 1 && !monic.is_irreducible()? {
            return Err(Error::NotIrreducible(monic.to_string()));
        }
        Ok(Place::Finite(monic))
    }

    /// A finite place from an already-certified monic irreducible (used for
    /// factorization output, which is certified by construction).
    pub(crate) fn finite_unchecked(monic: Poly) -> Place {
        debug_assert!(monic.is_monic() && monic.degree() >= 1);
        Place::Finite(monic)
    }

    /// The rational place t = alpha.
    pub fn linear(alpha: &Elem, var: char) -> Place {
        Place::Finite(Poly::linear(alpha, var))
    }

    pub fn infinity(field: &Field, var: char) -> Place {
        Place::Infinity { field: field.clone(), var }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity { .. })
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinity { .. } => None,
        }
    }

    pub fn field(&self) -> &Field {
        match self {
            Place::Finite(p) => p.field(),
            Place::Infinity { field, .. } => field,
        }
    }

    pub fn var(&self) -> char {
        match self {
            Place::Finite(p) => p.var(),
            Place::Infinity { var, .. } => *var,
        }
    }

    /// Residue degree [k(p) : k].
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree() as usize,
            Place::Infinity { .. } => 1,
        }
    }

    /// The residue field k(p); the base field itself for rational places and
    /// infinity, an extension otherwise.
    pub fn residue_field(&self) -> Field {
        match self {
            Place::Finite(p) if p.degree() > 1 => {
                let base = p.field().clone();
                let gen = if base.gen_name() == Some("a") { "b" } else { "a" };
                Field::extension_unchecked(base, p.coeffs().to_vec(), gen)
            }
            _ => self.field().clone(),
        }
    }

    /// The image of the coordinate variable in the residue field (finite
    /// places only).
    pub fn theta(&self) -> Result<Elem> {
        match self {
            Place::Finite(p) if p.degree() == 1 => Ok(p.coeff(0).neg_ref()),
            Place::Finite(_) => self.residue_field().generator(),
            Place::Infinity { .. } => Err(Error::PoleAtPlace("inf".into())),
        }
    }

    /// Order of vanishing of `f` at this place; negative at poles.
    pub fn valuation(&self, f: &RatFunc) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        match self {
            Place::Finite(p) => {
                let (vn, _) = multiplicity_in(p, f.num())?;
                let (vd, _) = multiplicity_in(p, f.den())?;
                Ok(vn - vd)
            }
            Place::Infinity { .. } => Ok(f.den().degree() - f.num().degree()),
        }
    }

    /// Image of `f` in the residue field; requires v_p(f) >= 0.
    pub fn reduce(&self, f: &RatFunc) -> Result<Elem> {
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let v = self.valuation(f)?;
        if v < 0 {
            return Err(Error::PoleAtPlace(self.to_string()));
        }
        match self {
            Place::Finite(p) => {
                if v > 0 {
                    return Ok(self.residue_field().zero());
                }
                let kp = self.residue_field();
                let theta = self.theta()?;
                if p.degree() == 1 {
                    f.eval(&theta)
                } else {
                    let n = f.num().lift_to(&kp).eval(&theta);
                    let d = f.den().lift_to(&kp).eval(&theta);
                    n.try_div(&d)
                }
            }
            Place::Infinity { field, .. } => {
                if v > 0 {
                    return Ok(field.zero());
                }
                f.num().leading_coeff().try_div(&f.den().leading_coeff())
            }
        }
    }

    /// The unit part r = (f * z^{-v})(p) in k(p), with z the pinned
    /// uniformizer: the place polynomial at finite places, 1/t at infinity.
    pub fn unit_part(&self, f: &RatFunc) -> Result<Elem> {
        let v = self.valuation(f)?;
        let u = match self {
            Place::Finite(p) => f.mul(&RatFunc::from_poly(p.clone()).pow(-v)?)?,
            Place::Infinity { field, .. } => {
                f.mul(&RatFunc::variable(field, self.var()).pow(v)?)?
            }
        };
        self.reduce(&u)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "({p})"),
            Place::Infinity { .. } => write!(f, "inf"),
        }
    }
}

/// Multiplicity of the monic polynomial `p` in `f`, with the cofactor.
pub(crate) fn multiplicity_in(p: &Poly, f: &Poly) -> Result<(i64, Poly)> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut m = 0;
    let mut cof = f.clone();
    loop {
        let (q, r) = cof.div_rem(p)?;
        if !r.is_zero() || q.is_zero() {
            return Ok((m, cof));
        }
        m += 1;
        cof = q;
    }
}

/// A divisor on the completed line: finitely many places with integer
/// multiplicities, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    entries: Vec<(Place, i64)>,
}

impl Divisor {
    pub fn empty() -> Divisor {
        Divisor { entries: Vec::new() }
    }

    /// The divisor of zeros and poles of `f`, including the place at
    /// infinity. Requires a certified factorization of `f`.
    pub fn of(f: &RatFunc) -> Result<Divisor> {
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let (_, factors) = f.factored()?;
        let mut entries: Vec<(Place, i64)> = Vec::new();
        let mut inf_mult = 0i64;
        for (p, e) in factors {
            inf_mult -= e * p.degree();
            entries.push((Place::finite_unchecked(p), e));
        }
        if inf_mult != 0 {
            entries.push((Place::infinity(f.field(), f.var()), inf_mult));
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Divisor { entries })
    }

    pub fn entries(&self) -> &[(Place, i64)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.entries.iter().map(|(p, _)| p)
    }

    pub fn get(&self, place: &Place) -> i64 {
        self.entries
            .iter()
            .find(|(p, _)| p == place)
            .map_or(0, |(_, m)| *m)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total degree Σ [k(p):k] · mult(p).
    pub fn degree(&self) -> i64 {
        self.entries
            .iter()
            .map(|(p, m)| p.degree() as i64 * m)
            .sum()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (i, (place, m)) in self.entries.iter().enumerate() {
            let (sign, mag) = if *m < 0 { ("-", -m) } else { ("+", *m) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "{place}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn rf(field: &Field, num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(
            Poly::from_i64_coeffs(field, 't', num),
            Poly::from_i64_coeffs(field, 't', den),
        )
        .unwrap()
    }

    #[test]
    fn valuations_at_finite_and_infinite_places() {
        let k = q();
        let t = RatFunc::variable(&k, 't');
        let inf = Place::infinity(&k, 't');
        assert_eq!(inf.valuation(&t).unwrap(), -1);

        let at_zero = Place::linear(&k.zero(), 't');
        let f = rf(&k, &[1, 0, 1], &[0, 1]); // (t^2+1)/t
        assert_eq!(at_zero.valuation(&f).unwrap(), -1);

        let p = Place::finite(Poly::from_i64_coeffs(&k, 't', &[1, 0, 1])).unwrap();
        assert_eq!(p.valuation(&RatFunc::from_poly(Poly::from_i64_coeffs(&k, 't', &[1, 0, 1]))).unwrap(), 1);
        assert_eq!(p.valuation(&f).unwrap(), 1);
    }

    #[test]
    fn reduce_at_places() {
        let k = q();
        let at_zero = Place::linear(&k.zero(), 't');
        let one_minus_t = rf(&k, &[1, -1], &[1]);
        assert!(at_zero.reduce(&one_minus_t).unwrap().is_one());

        let inf = Place::infinity(&k, 't');
        let f = rf(&k, &[1, 1], &[0, 1]); // (1+t)/t
        assert!(inf.reduce(&f).unwrap().is_one());
    }

    #[test]
    fn reduce_into_quadratic_residue_field() {
        let k = Field::prime(3).unwrap();
        let p = Place::finite(Poly::from_i64_coeffs(&k, 't', &[1, 0, 1])).unwrap();
        assert_eq!(p.degree(), 2);
        let f9 = p.residue_field();
        assert_eq!(f9.order().unwrap(), 9u32.into());
        let t = RatFunc::variable(&k, 't');
        let image = p.reduce(&t).unwrap();
        assert_eq!(image, f9.generator().unwrap());
    }

    #[test]
    fn unit_parts() {
        let k = q();
        let at_zero = Place::linear(&k.zero(), 't');
        // f = 3t^2/(1+t): unit part at (t) is 3
        let f = rf(&k, &[0, 0, 3], &[1, 1]);
        assert_eq!(at_zero.unit_part(&f).unwrap(), k.from_i64(3));
        // at infinity the uniformizer is 1/t: t^2 has unit part 1, v = -2
        let inf = Place::infinity(&k, 't');
        let t2 = rf(&k, &[0, 0, 1], &[1]);
        assert_eq!(inf.valuation(&t2).unwrap(), -2);
        assert!(inf.unit_part(&t2).unwrap().is_one());
    }

    #[test]
    fn divisor_of_t_and_of_a_quotient() {
        let k = q();
        let t = RatFunc::variable(&k, 't');
        let d = Divisor::of(&t).unwrap();
        assert_eq!(d.to_string(), "(t) - inf");
        assert_eq!(d.degree(), 0);

        let f = rf(&k, &[1, 0, 1], &[0, 1]); // (t^2+1)/t
        let d = Divisor::of(&f).unwrap();
        assert_eq!(d.to_string(), "-(t) + (t^2+1) - inf");
        assert_eq!(d.degree(), 0);

        let c = RatFunc::from_i64(&k, 't', 7);
        assert!(Divisor::of(&c).unwrap().is_empty());
    }

    #[test]
    fn place_ordering_is_canonical() {
        let k = Field::prime(5).unwrap();
        let mut places = vec![
            Place::infinity(&k, 't'),
            Place::finite(Poly::from_i64_coeffs(&k, 't', &[2, 0, 1])).unwrap(),
            Place::linear(&k.from_i64(3), 't'),
            Place::linear(&k.zero(), 't'),
        ];
        places.sort();
        let labels: Vec<String> = places.iter().map(|p| p.to_string()).collect();
        assert_eq!(labels, vec!["(t)", "(t+2)", "(t^2+2)", "inf"]);
    }

    #[test]
    fn reducible_polynomial_rejected_as_place() {
        let k = q();
        let err = Place::finite(Poly::from_i64_coeffs(&k, 't', &[-1, 0, 1]));
        assert!(matches!(err, Err(Error::NotIrreducible(_))));
    }
}

//! Exact coefficient domains: the rationals, prime fields, single-step
//! algebraic extensions, and the nilpotent coefficient rings used by the
//! epsilon pairings.
//!
//! A [`Field`] is a cheap reference-counted handle describing the domain; an
//! [`Elem`] pairs a handle with a canonical representation. Canonical forms:
//! reduced fractions with positive denominator, residues in `0..p`,
//! coefficient vectors of degree < deg(modulus) with trailing zeros trimmed,
//! and sparse nilpotent expansions that never store a zero coefficient.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Shape of a nilpotent coefficient ring over a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilShape {
    /// `k[e1,...,em]` with every square `ei^2 = 0` (mixed products survive).
    SquareZero { count: u32 },
    /// `k[e]/(e^order)`.
    Truncated { order: u32 },
}

#[derive(Debug)]
enum FieldRepr {
    Rationals,
    Prime {
        p: u64,
    },
    /// Single-step extension `base[a]/(modulus)`, modulus monic irreducible
    /// of degree >= 2 stored as its coefficient vector over `base`.
    Extension {
        base: Field,
        modulus: Vec<Elem>,
        gen_name: String,
    },
    Nilpotent {
        base: Field,
        shape: NilShape,
    },
}

/// Handle to a coefficient domain. Cloning is cheap; equality is structural.
#[derive(Debug, Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (FieldRepr::Rationals, FieldRepr::Rationals) => true,
            (FieldRepr::Prime { p: a }, FieldRepr::Prime { p: b }) => a == b,
            (
                FieldRepr::Extension { base: b1, modulus: m1, .. },
                FieldRepr::Extension { base: b2, modulus: m2, .. },
            ) => b1 == b2 && m1 == m2,
            (
                FieldRepr::Nilpotent { base: b1, shape: s1 },
                FieldRepr::Nilpotent { base: b2, shape: s2 },
            ) => s1 == s2 && b1 == b2,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldRepr::Rationals))
    }

    /// The prime field `F_p`. Fails if `p` is not prime.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        Ok(Field(Arc::new(FieldRepr::Prime { p })))
    }

    /// Extension `base[a]/(modulus)`. The modulus is given as its coefficient
    /// vector (constant first) over `base`, must be monic of degree >= 2, and
    /// must be irreducible; irreducibility is the caller's burden here, so the
    /// constructor is crate-internal. Public callers go through
    /// [`crate::poly::Poly::extension_field`].
    pub(crate) fn extension_unchecked(
        base: Field,
        modulus: Vec<Elem>,
        gen_name: &str,
    ) -> Field {
        debug_assert!(modulus.len() >= 3, "extension degree must be >= 2");
        debug_assert!(modulus.last().unwrap().is_one(), "modulus must be monic");
        debug_assert!(base.is_field());
        Field(Arc::new(FieldRepr::Extension {
            base,
            modulus,
            gen_name: gen_name.to_string(),
        }))
    }

    /// `base[e1,...,ecount]` with all squares zero.
    pub fn eps_square_zero(base: Field, count: u32) -> Result<Field> {
        if !base.is_field() {
            return Err(Error::InvalidDescriptor(
                "nilpotent extensions require a field base".into(),
            ));
        }
        if count == 0 || count > 8 {
            return Err(Error::InvalidDescriptor(format!(
                "unsupported square-zero generator count {count}"
            )));
        }
        Ok(Field(Arc::new(FieldRepr::Nilpotent {
            base,
            shape: NilShape::SquareZero { count },
        })))
    }

    /// `base[e]/(e^order)`.
    pub fn eps_truncated(base: Field, order: u32) -> Result<Field> {
        if !base.is_field() {
            return Err(Error::InvalidDescriptor(
                "nilpotent extensions require a field base".into(),
            ));
        }
        if order < 2 || order > 32 {
            return Err(Error::InvalidDescriptor(format!(
                "unsupported truncation order {order}"
            )));
        }
        Ok(Field(Arc::new(FieldRepr::Nilpotent {
            base,
            shape: NilShape::Truncated { order },
        })))
    }

    /// True for actual fields, false for the nilpotent coefficient rings.
    pub fn is_field(&self) -> bool {
        !matches!(&*self.0, FieldRepr::Nilpotent { .. })
    }

    pub fn is_finite(&self) -> bool {
        match &*self.0 {
            FieldRepr::Rationals => false,
            FieldRepr::Prime { .. } => true,
            FieldRepr::Extension { base, .. } => base.is_finite(),
            FieldRepr::Nilpotent { base, .. } => base.is_finite(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldRepr::Rationals => 0,
            FieldRepr::Prime { p } => *p,
            FieldRepr::Extension { base, .. } | FieldRepr::Nilpotent { base, .. } => {
                base.characteristic()
            }
        }
    }

    /// Number of elements of a finite field, `None` for infinite domains.
    pub fn order(&self) -> Option<BigUint> {
        match &*self.0 {
            FieldRepr::Rationals => None,
            FieldRepr::Prime { p } => Some(BigUint::from(*p)),
            FieldRepr::Extension { base, modulus, .. } => {
                Some(base.order()?.pow((modulus.len() - 1) as u32))
            }
            FieldRepr::Nilpotent { .. } => None,
        }
    }

    /// Base field of an extension or nilpotent ring.
    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            FieldRepr::Extension { base, .. } | FieldRepr::Nilpotent { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Degree of a single-step extension over its base.
    pub fn extension_degree(&self) -> Option<usize> {
        match &*self.0 {
            FieldRepr::Extension { modulus, .. } => Some(modulus.len() - 1),
            _ => None,
        }
    }

    pub fn nil_shape(&self) -> Option<NilShape> {
        match &*self.0 {
            FieldRepr::Nilpotent { shape, .. } => Some(*shape),
            _ => None,
        }
    }

    /// Modulus coefficients (constant first) of an extension.
    pub fn modulus_coeffs(&self) -> Option<&[Elem]> {
        match &*self.0 {
            FieldRepr::Extension { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn gen_name(&self) -> Option<&str> {
        match &*self.0 {
            FieldRepr::Extension { gen_name, .. } => Some(gen_name),
            _ => None,
        }
    }

    /// A parseable description of the coefficient ring, with the modulus of
    /// any extension spelled out for reproducibility.
    pub fn descriptor(&self) -> String {
        match &*self.0 {
            FieldRepr::Rationals => "q".into(),
            FieldRepr::Prime { p } => format!("fp:{p}"),
            FieldRepr::Extension { base, modulus, gen_name } => {
                let m = poly_string(modulus, gen_name);
                match &*base.0 {
                    FieldRepr::Prime { p } => {
                        format!("fq:{p}^{}[{m}]", modulus.len() - 1)
                    }
                    _ => format!("{}[{m}]", base.descriptor()),
                }
            }
            FieldRepr::Nilpotent { base, shape } => match shape {
                NilShape::SquareZero { .. } => format!("eps2({})", base.descriptor()),
                NilShape::Truncated { order } => {
                    format!("eps{order}({})", base.descriptor())
                }
            },
        }
    }

    pub fn zero(&self) -> Elem {
        let repr = match &*self.0 {
            FieldRepr::Rationals => Repr::Rat(BigRational::zero()),
            FieldRepr::Prime { .. } => Repr::Mod(0),
            FieldRepr::Extension { .. } => Repr::Ext(Vec::new()),
            FieldRepr::Nilpotent { .. } => Repr::Nil(BTreeMap::new()),
        };
        Elem { field: self.clone(), repr }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        let repr = match &*self.0 {
            FieldRepr::Rationals => Repr::Rat(BigRational::from_integer(n.clone())),
            FieldRepr::Prime { p } => Repr::Mod(bigint_mod_u64(n, *p)),
            FieldRepr::Extension { base, .. } => {
                let c = base.from_bigint(n);
                if c.is_zero() {
                    Repr::Ext(Vec::new())
                } else {
                    Repr::Ext(vec![c])
                }
            }
            FieldRepr::Nilpotent { base, .. } => {
                let c = base.from_bigint(n);
                let mut m = BTreeMap::new();
                if !c.is_zero() {
                    m.insert(0u32, c);
                }
                Repr::Nil(m)
            }
        };
        Elem { field: self.clone(), repr }
    }

    pub fn from_rational(&self, q: BigRational) -> Result<Elem> {
        match &*self.0 {
            FieldRepr::Rationals => Ok(Elem { field: self.clone(), repr: Repr::Rat(q) }),
            _ => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                num.try_div(&den)
            }
        }
    }

    /// Embeds an element of the base field into this extension or nilpotent
    /// ring. Panics if the element does not live in the base.
    pub fn embed(&self, e: &Elem) -> Elem {
        let base = self.base().expect("embed target must have a base field");
        assert!(
            e.field == *base,
            "embed: element lives in {} but the base is {}",
            e.field,
            base
        );
        let repr = match &*self.0 {
            FieldRepr::Extension { .. } => {
                if e.is_zero() {
                    Repr::Ext(Vec::new())
                } else {
                    Repr::Ext(vec![e.clone()])
                }
            }
            FieldRepr::Nilpotent { .. } => {
                let mut m = BTreeMap::new();
                if !e.is_zero() {
                    m.insert(0u32, e.clone());
                }
                Repr::Nil(m)
            }
            _ => unreachable!(),
        };
        Elem { field: self.clone(), repr }
    }

    /// The class of the generator of an extension.
    pub fn generator(&self) -> Result<Elem> {
        match &*self.0 {
            FieldRepr::Extension { base, .. } => Ok(Elem {
                field: self.clone(),
                repr: Repr::Ext(vec![base.zero(), base.one()]),
            }),
            _ => Err(Error::Unsupported("generator of a non-extension".into())),
        }
    }

    /// The i-th nilpotent generator (0-based). For `Truncated` rings only
    /// index 0 exists.
    pub fn nil_generator(&self, i: u32) -> Result<Elem> {
        match &*self.0 {
            FieldRepr::Nilpotent { base, shape } => {
                let key = match shape {
                    NilShape::SquareZero { count } => {
                        if i >= *count {
                            return Err(Error::Unsupported(format!(
                                "no generator eps{}",
                                i + 1
                            )));
                        }
                        1u32 << i
                    }
                    NilShape::Truncated { .. } => {
                        if i != 0 {
                            return Err(Error::Unsupported("single eps generator".into()));
                        }
                        1u32
                    }
                };
                let mut m = BTreeMap::new();
                m.insert(key, base.one());
                Ok(Elem { field: self.clone(), repr: Repr::Nil(m) })
            }
            _ => Err(Error::Unsupported("nil generator of a non-nilpotent ring".into())),
        }
    }

    /// Uniform random element; finite fields only.
    pub fn sample<R: rand::Rng>(&self, rng: &mut R) -> Result<Elem> {
        match &*self.0 {
            FieldRepr::Prime { p } => Ok(Elem {
                field: self.clone(),
                repr: Repr::Mod(rng.gen_range(0..*p)),
            }),
            FieldRepr::Extension { base, modulus, .. } => {
                let d = modulus.len() - 1;
                let mut coeffs = Vec::with_capacity(d);
                for _ in 0..d {
                    coeffs.push(base.sample(rng)?);
                }
                Ok(Elem { field: self.clone(), repr: Repr::Ext(trim(coeffs)) })
            }
            _ => Err(Error::Unsupported("sampling needs a finite field".into())),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldRepr::Rationals => write!(f, "Q"),
            FieldRepr::Prime { p } => write!(f, "F{p}"),
            FieldRepr::Extension { base, modulus, gen_name } => {
                write!(f, "{base}[{gen_name}]/(")?;
                write_poly_string(f, modulus, gen_name)?;
                write!(f, ")")
            }
            FieldRepr::Nilpotent { base, shape } => match shape {
                NilShape::SquareZero { count } => {
                    let gens: Vec<String> =
                        (1..=*count).map(|i| format!("eps{i}")).collect();
                    write!(f, "{base}[{}]/(squares)", gens.join(","))
                }
                NilShape::Truncated { order } => write!(f, "{base}[eps]/(eps^{order})"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Rat(BigRational),
    Mod(u64),
    /// Coefficients over the base, constant first, trailing zeros trimmed.
    Ext(Vec<Elem>),
    /// Monomial code -> nonzero base coefficient. For `SquareZero` the code
    /// is a bitmask of generators, for `Truncated` it is the exponent.
    Nil(BTreeMap<u32, Elem>),
}

/// An element of a [`Field`], always kept in canonical form.
#[derive(Debug, Clone)]
pub struct Elem {
    field: Field,
    repr: Repr,
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        assert!(self.field == other.field, "comparing elements of different domains");
        self.repr == other.repr
    }
}

impl Eq for Elem {}

impl Elem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(q) => q.is_zero(),
            Repr::Mod(v) => *v == 0,
            Repr::Ext(c) => c.is_empty(),
            Repr::Nil(m) => m.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(q) => q.is_one(),
            Repr::Mod(v) => *v == 1,
            Repr::Ext(c) => c.len() == 1 && c[0].is_one(),
            Repr::Nil(m) => m.len() == 1 && m.get(&0).is_some_and(|c| c.is_one()),
        }
    }

    /// Units of a field are the nonzero elements; in a nilpotent ring an
    /// element is a unit iff its constant term is nonzero.
    pub fn is_unit(&self) -> bool {
        match &self.repr {
            Repr::Nil(m) => m.get(&0).is_some(),
            _ => !self.is_zero(),
        }
    }

    /// Constant (pure base field) part of a nilpotent element; for other
    /// domains the element itself.
    pub fn nil_constant(&self) -> Elem {
        match &self.repr {
            Repr::Nil(m) => m
                .get(&0)
                .cloned()
                .unwrap_or_else(|| self.field.base().unwrap().zero()),
            _ => self.clone(),
        }
    }

    /// Coefficient of the monomial with the given code in a nilpotent
    /// element (bitmask for square-zero rings, exponent for truncated ones).
    pub fn nil_coeff(&self, code: u32) -> Result<Elem> {
        match &self.repr {
            Repr::Nil(m) => Ok(m
                .get(&code)
                .cloned()
                .unwrap_or_else(|| self.field.base().unwrap().zero())),
            _ => Err(Error::Unsupported("nil_coeff on a non-nilpotent element".into())),
        }
    }

    /// Coefficient vector over the base for extension elements.
    pub fn ext_coeffs(&self) -> Result<Vec<Elem>> {
        match &self.repr {
            Repr::Ext(c) => Ok(c.clone()),
            _ => Err(Error::Unsupported("ext_coeffs on a non-extension element".into())),
        }
    }

    /// Exact rational value, if this element lives over `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(q) => Some(q),
            _ => None,
        }
    }

    /// Residue value in `0..p` for prime-field elements.
    pub fn as_mod(&self) -> Option<u64> {
        match &self.repr {
            Repr::Mod(v) => Some(*v),
            _ => None,
        }
    }

    fn check_same_field(&self, other: &Elem, what: &str) {
        assert!(
            self.field == other.field,
            "{what} on elements of different domains: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn add_ref(&self, other: &Elem) -> Elem {
        self.check_same_field(other, "addition");
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = prime_of(&self.field);
                Repr::Mod(mod_add(*a, *b, p))
            }
            (Repr::Ext(a), Repr::Ext(b)) => Repr::Ext(vec_add(a, b)),
            (Repr::Nil(a), Repr::Nil(b)) => Repr::Nil(nil_add(a, b)),
            _ => unreachable!(),
        };
        Elem { field: self.field.clone(), repr }
    }

    pub fn neg_ref(&self) -> Elem {
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Mod(a) => {
                let p = prime_of(&self.field);
                Repr::Mod(if *a == 0 { 0 } else { p - *a })
            }
            Repr::Ext(a) => Repr::Ext(a.iter().map(Elem::neg_ref).collect()),
            Repr::Nil(m) => {
                Repr::Nil(m.iter().map(|(k, v)| (*k, v.neg_ref())).collect())
            }
        };
        Elem { field: self.field.clone(), repr }
    }

    pub fn sub_ref(&self, other: &Elem) -> Elem {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Elem) -> Elem {
        self.check_same_field(other, "multiplication");
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = prime_of(&self.field);
                Repr::Mod(mod_mul(*a, *b, p))
            }
            (Repr::Ext(a), Repr::Ext(b)) => {
                let modulus = self.field.modulus_coeffs().unwrap();
                let base = self.field.base().unwrap();
                Repr::Ext(vec_rem(vec_mul(a, b, base), modulus, base))
            }
            (Repr::Nil(a), Repr::Nil(b)) => {
                let shape = self.field.nil_shape().unwrap();
                Repr::Nil(nil_mul(a, b, shape))
            }
            _ => unreachable!(),
        };
        Elem { field: self.field.clone(), repr }
    }

    /// Multiplicative inverse. In a nilpotent ring this is the geometric
    /// series around the constant term; it errors on non-units there and on
    /// zero in a field.
    pub fn inv(&self) -> Result<Elem> {
        match &self.repr {
            Repr::Rat(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Elem { field: self.field.clone(), repr: Repr::Rat(q.recip()) })
                }
            }
            Repr::Mod(v) => {
                if *v == 0 {
                    return Err(Error::DivisionByZero);
                }
                let p = prime_of(&self.field);
                Ok(Elem { field: self.field.clone(), repr: Repr::Mod(mod_inv(*v, p)) })
            }
            Repr::Ext(c) => {
                if c.is_empty() {
                    return Err(Error::DivisionByZero);
                }
                let base = self.field.base().unwrap();
                let modulus = self.field.modulus_coeffs().unwrap();
                let inv = vec_inv_mod(c, modulus, base)?;
                Ok(Elem { field: self.field.clone(), repr: Repr::Ext(inv) })
            }
            Repr::Nil(_) => nil_inverse(self),
        }
    }

    pub fn try_div(&self, other: &Elem) -> Result<Elem> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, n: i64) -> Result<Elem> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut result = self.field.one();
        let mut b = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ref(&b);
            }
        }
        Ok(result)
    }

    /// Power with an arbitrary-precision nonnegative exponent.
    pub fn pow_biguint(&self, n: &BigUint) -> Elem {
        let mut result = self.field.one();
        let mut b = self.clone();
        let bits = n.bits();
        for i in 0..bits {
            if n.bit(i) {
                result = result.mul_ref(&b);
            }
            if i + 1 < bits {
                b = b.mul_ref(&b);
            }
        }
        result
    }

    /// Arbitrary total order used only for canonical sorting and display.
    pub fn cmp_canonical(&self, other: &Elem) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Mod(a), Repr::Mod(b)) => a.cmp(b),
            (Repr::Ext(a), Repr::Ext(b)) => {
                let mut i = 0;
                loop {
                    match (a.get(i), b.get(i)) {
                        (None, None) => return Ordering::Equal,
                        (None, Some(_)) => return Ordering::Less,
                        (Some(_), None) => return Ordering::Greater,
                        (Some(x), Some(y)) => match x.cmp_canonical(y) {
                            Ordering::Equal => i += 1,
                            ord => return ord,
                        },
                    }
                }
            }
            (Repr::Nil(a), Repr::Nil(b)) => {
                let av: Vec<_> = a.iter().collect();
                let bv: Vec<_> = b.iter().collect();
                for ((ka, va), (kb, vb)) in av.iter().zip(bv.iter()) {
                    match ka.cmp(kb).then_with(|| va.cmp_canonical(vb)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                av.len().cmp(&bv.len())
            }
            _ => unreachable!("comparing elements of different domains"),
        }
    }
}

impl Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        self.add_ref(rhs)
    }
}

impl Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self.sub_ref(rhs)
    }
}

impl Mul for &Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        self.mul_ref(rhs)
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_ref()
    }
}

/// Inverse of a nilpotent-ring unit via the geometric series: for
/// `e = c(1 - n)` with `c` the constant term and `n` nilpotent,
/// `e^{-1} = c^{-1}(1 + n + n^2 + ...)`, a finite sum.
pub fn nil_inverse(e: &Elem) -> Result<Elem> {
    let Repr::Nil(m) = &e.repr else {
        return Err(Error::Unsupported("nil_inverse outside a nilpotent ring".into()));
    };
    let Some(c) = m.get(&0) else {
        return Err(Error::NotAUnit(e.to_string()));
    };
    let c_inv = e.field.embed(&c.inv()?);
    // n = 1 - e/c, purely nilpotent.
    let n = &e.field.one() - &(&c_inv * e);
    let mut sum = e.field.one();
    let mut power = n.clone();
    while !power.is_zero() {
        sum = &sum + &power;
        power = &power * &n;
    }
    Ok(&c_inv * &sum)
}

/// Norm and trace of an element of a single-step extension, relative to its
/// base: determinant and trace of the multiplication matrix on the power
/// basis. For an element of the base embedded upward this gives `e^d` and
/// `d*e` where `d` is the extension degree. On an element of a plain field
/// (the trivial extension of itself) both maps are the identity.
pub fn norm_and_trace(e: &Elem) -> Result<(Elem, Elem)> {
    let field = e.field();
    match &e.repr {
        Repr::Ext(_) => {}
        Repr::Rat(_) | Repr::Mod(_) => return Ok((e.clone(), e.clone())),
        Repr::Nil(_) => {
            return Err(Error::Unsupported(
                "norm_and_trace is not defined on nilpotent rings".into(),
            ))
        }
    }
    let base = field.base().unwrap().clone();
    let modulus = field.modulus_coeffs().unwrap().to_vec();
    let d = modulus.len() - 1;

    // Columns of the multiplication matrix: e * a^j reduced mod the modulus.
    let mut cols: Vec<Vec<Elem>> = Vec::with_capacity(d);
    let mut shifted = match &e.repr {
        Repr::Ext(c) => c.clone(),
        _ => unreachable!(),
    };
    for j in 0..d {
        let padded = pad(&shifted, d, &base);
        cols.push(padded);
        if j + 1 < d {
            // multiply by the generator: shift up one slot, reduce.
            let mut next = Vec::with_capacity(shifted.len() + 1);
            next.push(base.zero());
            next.extend(shifted.iter().cloned());
            shifted = vec_rem(next, &modulus, &base);
        }
    }

    let mut trace = base.zero();
    for (i, col) in cols.iter().enumerate() {
        trace = &trace + &col[i];
    }
    let det = det_over_field(cols, &base)?;
    Ok((det, trace))
}

/// Norm alone; see [`norm_and_trace`].
pub fn norm(e: &Elem) -> Result<Elem> {
    Ok(norm_and_trace(e)?.0)
}

/// Trace alone; see [`norm_and_trace`].
pub fn trace(e: &Elem) -> Result<Elem> {
    Ok(norm_and_trace(e)?.1)
}

/// Determinant of a square matrix given by columns over a field, by Gaussian
/// elimination with exact arithmetic.
fn det_over_field(mut cols: Vec<Vec<Elem>>, base: &Field) -> Result<Elem> {
    let n = cols.len();
    let mut det = base.one();
    for k in 0..n {
        // find a pivot row in column k at or below row k
        let pivot = (k..n).find(|&r| !cols[k][r].is_zero());
        let Some(pivot) = pivot else {
            return Ok(base.zero());
        };
        if pivot != k {
            for col in cols.iter_mut() {
                col.swap(pivot, k);
            }
            det = det.neg_ref();
        }
        let pv = cols[k][k].clone();
        det = &det * &pv;
        let pv_inv = pv.inv()?;
        for j in (k + 1)..n {
            let factor = &cols[j][k] * &pv_inv;
            if factor.is_zero() {
                continue;
            }
            for r in k..n {
                let delta = &factor * &cols[k][r];
                cols[j][r] = &cols[j][r] - &delta;
            }
        }
    }
    Ok(det)
}

// ---- coefficient-vector arithmetic over the base field ----

fn trim(mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last().is_some_and(Elem::is_zero) {
        v.pop();
    }
    v
}

fn pad(v: &[Elem], len: usize, base: &Field) -> Vec<Elem> {
    let mut out = v.to_vec();
    while out.len() < len {
        out.push(base.zero());
    }
    out
}

fn vec_add(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (i, c) in short.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    trim(out)
}

fn vec_mul(a: &[Elem], b: &[Elem], base: &Field) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![base.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let prod = x * y;
            out[i + j] = &out[i + j] + &prod;
        }
    }
    trim(out)
}

/// Remainder of `v` modulo the monic `modulus`.
fn vec_rem(mut v: Vec<Elem>, modulus: &[Elem], _base: &Field) -> Vec<Elem> {
    let d = modulus.len() - 1;
    while v.len() > d {
        let lead = v.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = v.len() - d;
        for i in 0..d {
            let delta = &lead * &modulus[i];
            v[shift + i] = &v[shift + i] - &delta;
        }
    }
    trim(v)
}

/// Inverse of `a` modulo the monic irreducible `modulus` by the extended
/// Euclidean algorithm over the base field.
fn vec_inv_mod(a: &[Elem], modulus: &[Elem], base: &Field) -> Result<Vec<Elem>> {
    // r0 = modulus, r1 = a; t0 = 0, t1 = 1; invariant t_i * a == r_i (mod modulus)
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    let mut t0: Vec<Elem> = Vec::new();
    let mut t1 = vec![base.one()];
    while !r1.is_empty() {
        let (q, rem) = vec_div_rem(&r0, &r1, base)?;
        let qt = vec_mul(&q, &t1, base);
        let t2 = vec_sub(&t0, &qt);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    // r0 is a nonzero constant since the modulus is irreducible and a != 0
    if r0.len() != 1 {
        return Err(Error::NotIrreducible(
            "modulus shares a factor with the element".into(),
        ));
    }
    let scale = r0[0].inv()?;
    Ok(trim(t0.iter().map(|c| c * &scale).collect()))
}

fn vec_sub(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let neg: Vec<Elem> = b.iter().map(Elem::neg_ref).collect();
    vec_add(a, &neg)
}

fn vec_div_rem(a: &[Elem], b: &[Elem], base: &Field) -> Result<(Vec<Elem>, Vec<Elem>)> {
    if b.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let db = b.len() - 1;
    let lead_inv = b.last().unwrap().inv()?;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return Ok((Vec::new(), trim(rem)));
    }
    let mut quot = vec![base.zero(); rem.len() - db];
    while rem.len() > db {
        let lead = rem.last().unwrap().clone();
        if lead.is_zero() {
            rem.pop();
            continue;
        }
        let c = &lead * &lead_inv;
        let shift = rem.len() - 1 - db;
        quot[shift] = c.clone();
        for i in 0..=db {
            let delta = &c * &b[i];
            rem[shift + i] = &rem[shift + i] - &delta;
        }
        rem.pop();
    }
    Ok((trim(quot), trim(rem)))
}

// ---- nilpotent-ring arithmetic ----

fn nil_add(a: &BTreeMap<u32, Elem>, b: &BTreeMap<u32, Elem>) -> BTreeMap<u32, Elem> {
    let mut out = a.clone();
    for (k, v) in b {
        match out.remove(k) {
            None => {
                out.insert(*k, v.clone());
            }
            Some(old) => {
                let s = &old + v;
                if !s.is_zero() {
                    out.insert(*k, s);
                }
            }
        }
    }
    out
}

fn nil_mul(
    a: &BTreeMap<u32, Elem>,
    b: &BTreeMap<u32, Elem>,
    shape: NilShape,
) -> BTreeMap<u32, Elem> {
    let mut out: BTreeMap<u32, Elem> = BTreeMap::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let key = match shape {
                NilShape::SquareZero { .. } => {
                    if ka & kb != 0 {
                        continue; // some generator squared
                    }
                    ka | kb
                }
                NilShape::Truncated { order } => {
                    if ka + kb >= order {
                        continue;
                    }
                    ka + kb
                }
            };
            let prod = va * vb;
            if prod.is_zero() {
                continue;
            }
            match out.remove(&key) {
                None => {
                    out.insert(key, prod);
                }
                Some(old) => {
                    let s = &old + &prod;
                    if !s.is_zero() {
                        out.insert(key, s);
                    }
                }
            }
        }
    }
    out
}

// ---- prime-field scalar arithmetic ----

fn prime_of(f: &Field) -> u64 {
    match &*f.0 {
        FieldRepr::Prime { p } => *p,
        _ => unreachable!("prime_of on a non-prime field"),
    }
}

fn mod_add(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + b as u128) % p as u128;
    s as u64
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mod_mul(r, a, p);
        }
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on signed 128-bit intermediates
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(p as i128) as u64
}

fn bigint_mod_u64(n: &BigInt, p: u64) -> u64 {
    let m = n % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().unwrap()
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---- display ----

fn write_poly_string(f: &mut fmt::Formatter<'_>, coeffs: &[Elem], var: &str) -> fmt::Result {
    let s = poly_string(coeffs, var);
    write!(f, "{s}")
}

/// Renders a coefficient vector (constant first) as a polynomial in `var`,
/// highest power first, in the same syntax the expression parser accepts.
pub(crate) fn poly_string(coeffs: &[Elem], var: &str) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let term = monomial_string(c, var, i);
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push('-');
            out.push_str(rest);
        } else {
            out.push('+');
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn monomial_string(c: &Elem, var: &str, power: usize) -> String {
    let cs = c.to_string();
    if power == 0 {
        return cs;
    }
    let v = if power == 1 { var.to_string() } else { format!("{var}^{power}") };
    if cs == "1" {
        v
    } else if cs == "-1" {
        format!("-{v}")
    } else if cs.contains(['+', '-']) && !cs.starts_with('-') {
        format!("({cs})*{v}")
    } else if cs.starts_with('-') && cs[1..].contains(['+', '-']) {
        format!("({cs})*{v}")
    } else {
        format!("{cs}*{v}")
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Mod(v) => write!(f, "{v}"),
            Repr::Ext(c) => {
                let name = self.field.gen_name().unwrap_or("a");
                write!(f, "{}", poly_string(c, name))
            }
            Repr::Nil(m) => {
                if m.is_empty() {
                    return write!(f, "0");
                }
                let shape = self.field.nil_shape().unwrap();
                let mut out = String::new();
                for (k, v) in m {
                    let mono = nil_monomial_string(*k, shape);
                    let cs = v.to_string();
                    let term = if mono.is_empty() {
                        cs
                    } else if cs == "1" {
                        mono
                    } else if cs == "-1" {
                        format!("-{mono}")
                    } else if cs.contains(['+', '-']) && !cs.starts_with('-')
                        || (cs.starts_with('-') && cs[1..].contains(['+', '-']))
                    {
                        format!("({cs})*{mono}")
                    } else {
                        format!("{cs}*{mono}")
                    };
                    if out.is_empty() {
                        out = term;
                    } else if let Some(rest) = term.strip_prefix('-') {
                        out.push('-');
                        out.push_str(rest);
                    } else {
                        out.push('+');
                        out.push_str(&term);
                    }
                }
                write!(f, "{out}")
            }
        }
    }
}

fn nil_monomial_string(code: u32, shape: NilShape) -> String {
    match shape {
        NilShape::SquareZero { count } => {
            let parts: Vec<String> = (0..count)
                .filter(|i| code & (1 << i) != 0)
                .map(|i| format!("eps{}", i + 1))
                .collect();
            parts.join("*")
        }
        NilShape::Truncated { .. } => match code {
            0 => String::new(),
            1 => "eps".to_string(),
            k => format!("eps^{k}"),
        },
    }
}

//! Univariate polynomials over a [`Field`], with exact factorization.
//!
//! Over a finite field, factorization is complete (squarefree decomposition,
//! then distinct-degree and Cantor-Zassenhaus equal-degree splitting). Over
//! the rationals it is deliberately conservative: rational roots and
//! discriminant splits are exact, and anything of degree >= 3 that remains
//! must be certified irreducible by a good-reduction prime below 1000 or the
//! call fails rather than guess.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::detrng;
use crate::error::{Error, Result};
use crate::field::{poly_string, Elem, Field};

/// Dense polynomial; `coeffs[i]` multiplies `var^i`, trailing zeros trimmed,
/// the zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    var: char,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: Field, var: char, coeffs: Vec<Elem>) -> Poly {
        for c in &coeffs {
            assert!(c.field() == &field, "coefficient outside the stated domain");
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        Poly { field, var, coeffs }
    }

    pub fn zero(field: &Field, var: char) -> Poly {
        Poly { field: field.clone(), var, coeffs: Vec::new() }
    }

    pub fn constant(e: Elem, var: char) -> Poly {
        let field = e.field().clone();
        Poly::new(field, var, vec![e])
    }

    /// The variable itself as a polynomial.
    pub fn variable(field: &Field, var: char) -> Poly {
        Poly::new(field.clone(), var, vec![field.zero(), field.one()])
    }

    /// `var - alpha`.
    pub fn linear(alpha: &Elem, var: char) -> Poly {
        let field = alpha.field().clone();
        Poly::new(field.clone(), var, vec![alpha.neg_ref(), field.one()])
    }

    pub fn from_i64_coeffs(field: &Field, var: char, coeffs: &[i64]) -> Poly {
        Poly::new(
            field.clone(),
            var,
            coeffs.iter().map(|&c| field.from_i64(c)).collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial gets -1 for convenient arithmetic.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading_coeff(&self) -> Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Elem::is_one)
    }

    fn result_var(&self, other: &Poly) -> char {
        if self.is_constant() {
            other.var
        } else {
            if !other.is_constant() {
                assert_eq!(self.var, other.var, "mixing polynomial variables");
            }
            self.var
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let var = self.result_var(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) + &other.coeff(i));
        }
        Poly::new(self.field.clone(), var, out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(Elem::neg_ref).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let var = self.result_var(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field, var);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a * b;
                out[i + j] = &out[i + j] + &prod;
            }
        }
        Poly::new(self.field.clone(), var, out)
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        Poly::new(
            self.field.clone(),
            self.var,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut result = Poly::constant(self.field.one(), self.var);
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

    /// Quotient and remainder; requires an invertible leading coefficient.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let var = self.result_var(divisor);
        let lead_inv = divisor.leading_coeff().inv()?;
        let db = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(&self.field, var), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
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
                let delta = &c * &divisor.coeffs[i];
                rem[shift + i] = &rem[shift + i] - &delta;
            }
            rem.pop();
        }
        Ok((
            Poly::new(self.field.clone(), var, quot),
            Poly::new(self.field.clone(), var, rem),
        ))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Unsupported(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(q)
    }

    pub fn rem(&self, modulus: &Poly) -> Result<Poly> {
        Ok(self.div_rem(modulus)?.1)
    }

    /// Splits off the leading coefficient: `(unit, monic)` with
    /// `self = unit * monic`.
    pub fn monic(&self) -> Result<(Elem, Poly)> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let unit = self.leading_coeff();
        Ok((unit.clone(), self.scale(&unit.inv()?)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            Ok(a.monic()?.1)
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field, self.var);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(&self.field.from_i64(i as i64) * c);
        }
        Poly::new(self.field.clone(), self.var, out)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Substitutes another polynomial for the variable (Horner).
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field, inner.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone(), inner.var));
        }
        acc
    }

    /// `p(var + alpha)`.
    pub fn taylor_shift(&self, alpha: &Elem) -> Poly {
        let shift = Poly::new(
            self.field.clone(),
            self.var,
            vec![alpha.clone(), self.field.one()],
        );
        self.compose(&shift)
    }

    /// Coefficient reversal: `var^deg * p(1/var)`.
    pub fn reverse(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::new(self.field.clone(), self.var, coeffs)
    }

    /// Renames the variable (used when moving between coordinate lines).
    pub fn with_var(&self, var: char) -> Poly {
        Poly { field: self.field.clone(), var, coeffs: self.coeffs.clone() }
    }

    /// Embeds coefficientwise into an extension of the coefficient field.
    pub fn lift_to(&self, target: &Field) -> Poly {
        Poly {
            field: target.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| target.embed(c)).collect(),
        }
    }

    /// Modular exponentiation `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Poly) -> Result<Poly> {
        let mut result = Poly::constant(self.field.one(), self.var);
        let mut b = self.rem(modulus)?;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = result.mul(&b).rem(modulus)?;
            }
            if i + 1 < bits {
                b = b.mul(&b).rem(modulus)?;
            }
        }
        Ok(result)
    }

    /// Canonical ordering: degree first, then coefficients from the constant
    /// term up. Used for stable place and factor orderings.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().zip(other.coeffs.iter()) {
                    match a.cmp_canonical(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }

    /// Builds the extension field `k[gen]/(self)` after checking that the
    /// polynomial is irreducible over its coefficient field.
    pub fn extension_field(&self, gen_name: &str) -> Result<Field> {
        if self.degree() < 2 {
            return Err(Error::InvalidDescriptor(
                "extension modulus must have degree >= 2".into(),
            ));
        }
        if !self.is_irreducible()? {
            return Err(Error::NotIrreducible(self.to_string()));
        }
        let (_, monic) = self.monic()?;
        Ok(Field::extension_unchecked(
            self.field.clone(),
            monic.coeffs.clone(),
            gen_name,
        ))
    }

    /// Exact irreducibility test over a finite field or (certified) over `Q`.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.degree() < 1 {
            return Ok(false);
        }
        if self.degree() == 1 {
            return Ok(true);
        }
        if self.field.is_finite() {
            let (_, monic) = self.monic()?;
            return rabin_irreducible(&monic);
        }
        let (_, factors) = self.factor()?;
        Ok(factors.len() == 1 && factors[0].1 == 1)
    }

    /// Full factorization into monic irreducibles:
    /// `self = unit * prod factor_i ^ mult_i`.
    ///
    /// Finite fields always succeed. Over `Q` the result is certified exact or
    /// the call errors (never a guess); see the module docs.
    pub fn factor(&self) -> Result<(Elem, Vec<(Poly, usize)>)> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let (unit, monic) = self.monic()?;
        if monic.degree() == 0 {
            return Ok((unit, Vec::new()));
        }
        let mut factors = if self.field.is_finite() {
            factor_finite(&monic)?
        } else if self.field == Field::rationals() {
            factor_rationals(&monic)?
        } else {
            return Err(Error::Unsupported(format!(
                "factorization over {} is not available",
                self.field
            )));
        };
        factors.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        Ok((unit, factors))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly_string(&self.coeffs, &self.var.to_string()))
    }
}

// ---- finite-field factorization ----

/// Total degree over the prime field, so the field has p^e elements.
fn prime_power_exponent(field: &Field) -> u32 {
    let p = BigUint::from(field.characteristic());
    let mut order = field.order().expect("finite field");
    let mut e = 0u32;
    while order > BigUint::one() {
        order /= &p;
        e += 1;
    }
    e
}

fn frobenius_root(c: &Elem) -> Elem {
    // p-th root in F_{p^e}: c^(p^(e-1))
    let field = c.field();
    let p = field.characteristic();
    let e = prime_power_exponent(field);
    if e == 1 {
        return c.clone();
    }
    c.pow_biguint(&BigUint::from(p).pow(e - 1))
}

/// p-th root of a polynomial whose derivative vanishes (all exponents are
/// multiples of p).
fn poly_pth_root(f: &Poly) -> Poly {
    let p = f.field().characteristic() as usize;
    let mut coeffs = Vec::new();
    for i in (0..f.coeffs().len()).step_by(p) {
        coeffs.push(frobenius_root(&f.coeff(i)));
    }
    Poly::new(f.field().clone(), f.var(), coeffs)
}

/// Squarefree decomposition of a monic polynomial in characteristic p.
fn squarefree_parts_charp(f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) -> Result<()> {
    if f.degree() < 1 {
        return Ok(());
    }
    let fd = f.derivative();
    if fd.is_zero() {
        return squarefree_parts_charp(&poly_pth_root(f), scale * f.field().characteristic() as usize, out);
    }
    let mut g = f.gcd(&fd)?;
    let mut w = f.exact_div(&g)?.monic()?.1;
    let mut i = 1usize;
    while w.degree() > 0 {
        let y = w.gcd(&g)?;
        let z = w.exact_div(&y)?;
        if z.degree() > 0 {
            out.push((z.monic()?.1, scale * i));
        }
        g = g.exact_div(&y)?;
        w = y;
        i += 1;
    }
    if g.degree() > 0 {
        squarefree_parts_charp(
            &poly_pth_root(&g.monic()?.1),
            scale * f.field().characteristic() as usize,
            out,
        )?;
    }
    Ok(())
}

/// Yun's squarefree decomposition in characteristic zero.
fn squarefree_parts_char0(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    let fd = f.derivative();
    let mut g = f.gcd(&fd)?;
    let mut w = f.exact_div(&g)?.monic()?.1;
    let mut i = 1usize;
    while w.degree() > 0 {
        let y = w.gcd(&g)?;
        let z = w.exact_div(&y)?;
        if z.degree() > 0 {
            out.push((z.monic()?.1, i));
        }
        g = g.exact_div(&y)?;
        w = y;
        i += 1;
    }
    Ok(out)
}

pub(crate) fn squarefree_parts(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let (_, monic) = f.monic()?;
    if f.field().characteristic() == 0 {
        squarefree_parts_char0(&monic)
    } else {
        let mut out = Vec::new();
        squarefree_parts_charp(&monic, 1, &mut out)?;
        Ok(out)
    }
}

fn factor_finite(monic: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut result = Vec::new();
    for (part, mult) in squarefree_parts(monic)? {
        for (g, d) in distinct_degree_split(&part)? {
            for irr in equal_degree_split(&g, d)? {
                result.push((irr, mult));
            }
        }
    }
    Ok(result)
}

/// Distinct-degree decomposition of a monic squarefree polynomial: returns
/// pairs (product of irreducible factors of degree d, d).
fn distinct_degree_split(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let q = f.field().order().expect("finite field");
    let var = f.var();
    let x = Poly::variable(f.field(), var);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.rem(&g)?;
    let mut d = 0usize;
    while g.degree() >= 1 {
        d += 1;
        if (g.degree() as usize) < 2 * d {
            // whatever is left is a single irreducible factor
            out.push((g.clone(), g.degree() as usize));
            break;
        }
        h = h.pow_mod(&q, &g)?;
        let gd = h.sub(&x).gcd(&g)?;
        if gd.degree() > 0 {
            out.push((gd.clone(), d));
            g = g.exact_div(&gd)?.monic()?.1;
            h = h.rem(&g)?;
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting: `f` is monic squarefree with all
/// irreducible factors of degree `d`.
fn equal_degree_split(f: &Poly, d: usize) -> Result<Vec<Poly>> {
    if f.degree() as usize == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let q = field.order().expect("finite field");
    let mut rng = detrng::rng_for("equal-degree", &[&field.to_string(), &f.to_string()]);
    let one = Poly::constant(field.one(), f.var());
    loop {
        let a = random_poly_below(&field, f.var(), f.degree() as usize, &mut rng)?;
        if a.degree() < 1 {
            continue;
        }
        let g0 = a.gcd(f)?;
        if g0.degree() > 0 && g0.degree() < f.degree() {
            let mut left = equal_degree_split(&g0, d)?;
            let right = equal_degree_split(&f.exact_div(&g0)?.monic()?.1, d)?;
            left.extend(right);
            return Ok(left);
        }
        let b = if field.characteristic() == 2 {
            // trace map: a + a^2 + a^4 + ... over F_{2^(e*d)}
            let e = prime_power_exponent(&field) as usize;
            let mut acc = a.rem(f)?;
            let mut term = a.rem(f)?;
            for _ in 1..(e * d) {
                term = term.mul(&term).rem(f)?;
                acc = acc.add(&term).rem(f)?;
            }
            acc
        } else {
            let exp = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            a.pow_mod(&exp, f)?.sub(&one)
        };
        let g = b.gcd(f)?;
        if g.degree() > 0 && g.degree() < f.degree() {
            let mut left = equal_degree_split(&g, d)?;
            let right = equal_degree_split(&f.exact_div(&g)?.monic()?.1, d)?;
            left.extend(right);
            return Ok(left);
        }
    }
}

fn random_poly_below<R: Rng>(
    field: &Field,
    var: char,
    degree_bound: usize,
    rng: &mut R,
) -> Result<Poly> {
    let mut coeffs = Vec::with_capacity(degree_bound);
    for _ in 0..degree_bound {
        coeffs.push(field.sample(rng)?);
    }
    Ok(Poly::new(field.clone(), var, coeffs))
}

/// Rabin's irreducibility test for a monic polynomial over a finite field.
fn rabin_irreducible(f: &Poly) -> Result<bool> {
    let n = f.degree() as u64;
    if n == 1 {
        return Ok(true);
    }
    let q = f.field().order().expect("finite field");
    let x = Poly::variable(f.field(), f.var());
    // x^(q^n) == x mod f
    let mut h = x.clone();
    for _ in 0..n {
        h = h.pow_mod(&q, f)?;
    }
    if !h.sub(&x).rem(f)?.is_zero() {
        return Ok(false);
    }
    for r in prime_divisors(n) {
        let m = n / r;
        let mut h = x.clone();
        for _ in 0..m {
            h = h.pow_mod(&q, f)?;
        }
        let g = h.sub(&x).gcd(f)?;
        if g.degree() != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- certified factorization over Q ----

fn factor_rationals(monic: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut result = Vec::new();
    for (part, mult) in squarefree_parts(monic)? {
        for irr in certified_factor_squarefree(&part)? {
            result.push((irr, mult));
        }
    }
    Ok(result)
}

fn rational_coeff(e: &Elem) -> BigRational {
    e.as_rational().expect("rational coefficient").clone()
}

/// Factor a monic squarefree polynomial over Q into certified irreducibles.
fn certified_factor_squarefree(f: &Poly) -> Result<Vec<Poly>> {
    let field = f.field().clone();
    let var = f.var();
    let mut out = Vec::new();
    let mut h = f.clone();

    // peel off the variable itself
    if h.degree() >= 1 && h.coeff(0).is_zero() {
        out.push(Poly::variable(&field, var));
        h = h.exact_div(&Poly::variable(&field, var))?;
    }

    // rational roots
    for root in rational_roots(&h) {
        let lin = Poly::linear(&root, var);
        h = h.exact_div(&lin)?;
        out.push(lin);
    }

    match h.degree() {
        d if d <= 0 => {}
        1 => out.push(h),
        2 => {
            // discriminant split: exact either way
            let a = rational_coeff(&h.coeff(2));
            let b = rational_coeff(&h.coeff(1));
            let c = rational_coeff(&h.coeff(0));
            let disc = &b * &b - BigRational::from_integer(BigInt::from(4)) * &a * &c;
            match rational_sqrt(&disc) {
                Some(s) => {
                    let two_a = BigRational::from_integer(BigInt::from(2)) * &a;
                    let r1 = (&s - &b) / &two_a;
                    let r2 = (-&s - &b) / &two_a;
                    out.push(Poly::linear(&field.from_rational(r1).unwrap(), var));
                    out.push(Poly::linear(&field.from_rational(r2).unwrap(), var));
                }
                None => out.push(h),
            }
        }
        _ => {
            certify_irreducible_by_witness(&h)?;
            out.push(h);
        }
    }
    Ok(out)
}

/// Rational roots of a monic squarefree polynomial over Q.
fn rational_roots(f: &Poly) -> Vec<Elem> {
    if f.degree() < 1 {
        return Vec::new();
    }
    // clear denominators: integer coefficients c_i, leading ln, constant c0
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        let den = rational_coeff(c).denom().clone();
        lcm = lcm.lcm(&den);
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let q = rational_coeff(c) * BigRational::from_integer(lcm.clone());
            q.to_integer()
        })
        .collect();
    let c0 = ints[0].clone();
    let lead = ints.last().unwrap().clone();
    if c0.is_zero() {
        return Vec::new(); // caller peels off the variable first
    }
    let mut roots = Vec::new();
    for p in divisors_bounded(&c0.abs()) {
        for q in divisors_bounded(&lead.abs()) {
            for sign in [1i64, -1] {
                let cand = BigRational::new(&p * BigInt::from(sign), q.clone());
                let val = f.eval(&f.field().from_rational(cand.clone()).unwrap());
                if val.is_zero() {
                    let root = f.field().from_rational(cand).unwrap();
                    if !roots.contains(&root) {
                        roots.push(root);
                    }
                }
            }
        }
    }
    roots
}

/// All positive divisors, via trial division. Numbers with a prime factor
/// above the bound simply yield an incomplete list, which at worst makes a
/// later certification fail loudly.
fn divisors_bounded(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.clone();
    if n.is_zero() {
        return Vec::new();
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    let bound = BigInt::from(1_000_000u64);
    while &d * &d <= n && d <= bound {
        if (&n % &d).is_zero() {
            let mut e = 0;
            while (&n % &d).is_zero() {
                n /= &d;
                e += 1;
            }
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        primes.push((n.clone(), 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Certifies a monic rational polynomial of degree >= 3 irreducible by
/// exhibiting a prime below 1000 of good reduction modulo which it stays
/// squarefree, keeps its degree and is irreducible. Errors otherwise.
fn certify_irreducible_by_witness(h: &Poly) -> Result<()> {
    'prime: for ell in primes_below(1000) {
        let ell_big = BigInt::from(ell);
        for c in h.coeffs() {
            if (rational_coeff(c).denom() % &ell_big).is_zero() {
                continue 'prime; // bad reduction
            }
        }
        let fp = Field::prime(ell)?;
        let reduced = Poly::new(
            fp.clone(),
            h.var(),
            h.coeffs()
                .iter()
                .map(|c| {
                    let q = rational_coeff(c);
                    let den = fp.from_bigint(q.denom());
                    fp.from_bigint(q.numer()).try_div(&den).unwrap()
                })
                .collect(),
        );
        if reduced.degree() != h.degree() {
            continue; // cannot happen for monic h, kept for clarity
        }
        let deriv_gcd = reduced.gcd(&reduced.derivative())?;
        if deriv_gcd.degree() != 0 {
            continue; // not squarefree mod ell
        }
        if rabin_irreducible(&reduced)? {
            return Ok(());
        }
    }
    Err(Error::Uncertified(format!(
        "no prime below 1000 certifies {h} irreducible"
    )))
}

pub(crate) fn primes_below(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n];
    let mut out = Vec::new();
    for i in 2..n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

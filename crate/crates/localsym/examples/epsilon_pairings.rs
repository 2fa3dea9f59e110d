//! Residue pairings valued in nilpotent rings.
//!
//! Adjoining square-zero elements ε₁, ε₂ to the coefficient field turns
//! the additive residue into a multiplicative symbol: the pairing of
//! 1 - ε₁f with 1 - ε₂g at p is 1 - ε₁ε₂·Res_p(f·dg). A single cube-zero ε
//! gives the same residue on the ε² component.

use localsym::expr::parse_ratfunc;
use localsym::symbols::{eps3_pairing, pairing_residue_coefficient, residue_pairing};
use localsym::{Field, Place, Result};

fn main() -> Result<()> {
    let k = Field::rationals();
    let t = parse_ratfunc("t", &k, 't')?;
    let origin = Place::linear(&k.zero(), 't');

    // R(1/t, t) = Res_0(t^{-1} dt) = 1
    let v = residue_pairing(&t.pow(-1)?, &t, &origin)?;
    println!("<1 - eps1/t, 1 - eps2*t> at (t) = {}", v.value);
    assert_eq!(v.value.to_string(), "1-eps1*eps2");
    assert!(pairing_residue_coefficient(&v)?.is_one());

    // R(z^-n, z^n) recovers the valuation n
    for n in 1..=5 {
        let v = residue_pairing(&t.pow(-n)?, &t.pow(n)?, &origin)?;
        assert!(pairing_residue_coefficient(&v)? == k.from_i64(n));
    }
    println!("R(z^-n, z^n) = n for n = 1..5");

    // monomials of non-complementary degrees pair trivially
    let v = residue_pairing(&t.pow(2)?, &t.pow(3)?, &origin)?;
    assert!(pairing_residue_coefficient(&v)?.is_zero());

    // the pairing only sees f up to functions vanishing deeply enough:
    // v(f) > n forces R(z^-n, f) = 0
    let f = parse_ratfunc("t^4*(2 + t)", &k, 't')?;
    let v = residue_pairing(&t.pow(-3)?, &f, &origin)?;
    assert!(pairing_residue_coefficient(&v)?.is_zero());

    // the cube-zero variant carries the same residue
    let f = parse_ratfunc("(t + 2)/t^2", &k, 't')?;
    let g = parse_ratfunc("t^3 - t", &k, 't')?;
    let two = pairing_residue_coefficient(&residue_pairing(&f, &g, &origin)?)?;
    let three = eps3_pairing(&f, &g, &origin)?;
    println!("eps2 pairing residue: {two}");
    println!("eps3 pairing value:   {}", three.value);
    assert!(three.value.nil_coeff(2)?.neg_ref() == two);

    // nilpotent ring arithmetic is exact and printable
    let ring = Field::eps_square_zero(k.clone(), 2)?;
    let e1 = ring.nil_generator(0)?;
    let e2 = ring.nil_generator(1)?;
    let u = &ring.one() + &(&e1 * &ring.from_i64(3));
    let w = &ring.one() - &e2;
    println!("(1 + 3*eps1)(1 - eps2) = {}", &u * &w);
    assert!((&e1 * &e1).is_zero());
    assert!(!(&e1 * &e2).is_zero());

    println!("epsilon pairing checks passed");
    Ok(())
}

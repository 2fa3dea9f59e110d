//! Tame symbols on the projective line.
//!
//! The tame symbol of two rational functions f, g at a place p is
//!
//!   (f, g)_p = N( (-1)^{v(f)v(g)} · f^{v(g)} / g^{v(f)} mod p ),
//!
//! where v is the valuation at p and N is the norm from the residue field.
//! It is multiplicative in both slots, antisymmetric, and kills pairs of
//! units. This example computes a few symbols by hand-checkable routes.

use localsym::expr::parse_ratfunc;
use localsym::symbols::tame_symbol;
use localsym::{Field, Place, Poly, Result};

fn main() -> Result<()> {
    let k = Field::rationals();
    let t = parse_ratfunc("t", &k, 't')?;

    // at the origin both t's vanish to order 1, so the symbol is the sign
    // (-1)^{1*1} = -1
    let origin = Place::linear(&k.zero(), 't');
    let v = tame_symbol(&t, &t, &origin)?;
    println!("(t, t) at (t)    = {}", v.value);
    assert!(v.value == k.from_i64(-1));

    // a unit against a uniformizer reduces the unit at the place
    let f = parse_ratfunc("t^2 + 3", &k, 't')?;
    let v = tame_symbol(&f, &t, &origin)?;
    println!("(t^2+3, t) at (t) = {}", v.value);
    assert!(v.value == k.from_i64(3));

    // swapping the slots inverts the value
    let w = tame_symbol(&t, &f, &origin)?;
    assert!((&v.value * &w.value).is_one());

    // at infinity the uniformizer is 1/t, so polynomials acquire poles
    let inf = Place::infinity(&k, 't');
    let g = parse_ratfunc("(t^2 + 1)/(2*t)", &k, 't')?;
    let v = tame_symbol(&g, &t, &inf)?;
    println!("((t^2+1)/2t, t) at inf = {}", v.value);
    assert!(v.value == k.from_i64(-2));

    // at a quadratic place the reduction lives in an extension field and
    // comes back through the norm: here k(p) = Q(i) and N(1 + i) = 2
    let p = Place::finite(Poly::new(
        k.clone(),
        't',
        vec![k.one(), k.zero(), k.one()],
    ))?;
    let f = parse_ratfunc("1 + t", &k, 't')?;
    let q = parse_ratfunc("t^2 + 1", &k, 't')?;
    let v = tame_symbol(&f, &q, &p)?;
    println!("(1+t, t^2+1) at (t^2+1) = {}", v.value);
    assert!(v.value == k.from_i64(2));

    // units at a place always pair to 1
    let u1 = parse_ratfunc("(t - 5)/(t + 4)", &k, 't')?;
    let u2 = parse_ratfunc("3*t + 1", &k, 't')?;
    assert!(tame_symbol(&u1, &u2, &origin)?.value.is_one());

    println!("all tame symbol checks passed");
    Ok(())
}

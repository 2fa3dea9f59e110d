//! Symbols in Milnor K-theory and their boundary maps.
//!
//! A weight-n symbol is a formal sum of wedges {f₁, ..., fₙ}. The boundary
//! at a place peels one slot off: uniformizer components drop to lower
//! weight with sign bookkeeping, units reduce into the residue field. The
//! tame symbol is exactly the exponential of the weight-two boundary.

use localsym::expr::parse_ratfunc;
use localsym::symbols::{milnor_boundary, tame_symbol};
use localsym::{Field, MilnorSymbol, Place, Result};

fn main() -> Result<()> {
    let k = Field::rationals();
    let origin = Place::linear(&k.zero(), 't');

    // weight one: the boundary of {f} is v_p(f) as a weight-zero symbol
    let f = parse_ratfunc("t^3/(1 - t)", &k, 't')?;
    let b = milnor_boundary(&MilnorSymbol::wedge(vec![f.clone()]), &origin)?;
    assert_eq!(b.as_integer()?, 3);
    println!("boundary {{t^3/(1-t)}} at (t) = {}", b.as_integer()?);

    // weight two: the boundary lands in the residue field and its
    // exponential is the tame symbol
    let g = parse_ratfunc("2*t", &k, 't')?;
    let wedge = MilnorSymbol::wedge(vec![f.clone(), g.clone()]);
    let b = milnor_boundary(&wedge, &origin)?;
    println!("boundary {{f, g}} at (t): {} terms", b.terms().len());
    let from_boundary = b.exponentiate_in(&k)?;
    let direct = tame_symbol(&f, &g, &origin)?.value;
    println!("exponentiated boundary = {from_boundary}, tame symbol = {direct}");
    assert!(from_boundary == direct);

    // symbols are bilinear: {f*h, g} = {f, g} + {h, g} after the boundary
    let h = parse_ratfunc("t - 4", &k, 't')?;
    let lhs = milnor_boundary(
        &MilnorSymbol::wedge(vec![f.mul(&h)?, g.clone()]),
        &origin,
    )?
    .exponentiate_in(&k)?;
    let rhs_1 = milnor_boundary(&MilnorSymbol::wedge(vec![f.clone(), g.clone()]), &origin)?;
    let rhs_2 = milnor_boundary(&MilnorSymbol::wedge(vec![h.clone(), g.clone()]), &origin)?;
    let rhs = rhs_1.add(&rhs_2).exponentiate_in(&k)?;
    assert!(lhs == rhs);

    // the formal sum layer: a symbol can carry integer coefficients and
    // cancels wedges that appear with opposite signs
    let s = MilnorSymbol::wedge(vec![f.clone(), g.clone()])
        .add(&MilnorSymbol::wedge(vec![f.clone(), g.clone()]).neg());
    assert!(s.is_zero());

    // weight three boundaries feed two-dimensional symbols: {f, g, h} at a
    // place drops to a weight-two symbol over the residue field
    let wedge3 = MilnorSymbol::wedge(vec![f, g, h]);
    let b3 = milnor_boundary(&wedge3, &origin)?;
    assert_eq!(b3.weight(), Some(2));
    println!("weight-3 boundary has weight {:?}", b3.weight());

    println!("milnor boundary checks passed");
    Ok(())
}

//! Divisors and the degree law: a rational function has as many zeros as
//! poles once places are weighted by their residue degree.
//!
//! The degree symbol at p is deg(p) · v_p(f); summed over the divisor
//! support and infinity it vanishes. This is the additive shadow of Weil
//! reciprocity.

use localsym::expr::parse_ratfunc;
use localsym::reciprocity::degree_sum_check;
use localsym::symbols::degree_symbol;
use localsym::{Divisor, Field, Place, Result};

fn main() -> Result<()> {
    let k = Field::rationals();

    // t^2 + 1 is irreducible over Q: one finite zero of degree 2, a simple
    // pole at the origin, and the rest of the balance at infinity
    let f = parse_ratfunc("(t^2 + 1)/t", &k, 't')?;
    let div = Divisor::of(&f)?;
    println!("div((t^2+1)/t):");
    for (place, mult) in div.entries() {
        println!("  {place}  with multiplicity {mult}  (degree {})", place.degree());
    }
    assert_eq!(div.degree(), 0);

    // the same data through the degree symbols
    let quad = div
        .support()
        .find(|p| p.degree() == 2)
        .expect("quadratic place")
        .clone();
    assert_eq!(degree_symbol(&f, &quad)?, 2);
    assert_eq!(degree_symbol(&f, &Place::infinity(&k, 't'))?, -1);

    // the checker sums deg(p) * v_p(f) over the support plus infinity
    let report = degree_sum_check(&f)?;
    println!("\nlaw {} over {}", report.law, report.field);
    for piece in &report.pieces {
        println!("  {}  ->  {}", piece.place, piece.value);
    }
    println!("  sum = {}", report.aggregate);
    assert!(report.pass);
    assert_eq!(report.aggregate, "0");

    // over a finite field the enumeration is genuinely finite and the law
    // holds place by place
    let k5 = Field::prime(5)?;
    let g = parse_ratfunc("(t^4 + 2)/(t^2 + t + 1)", &k5, 't')?;
    let report = degree_sum_check(&g)?;
    assert!(report.pass);
    println!("\ndegree law over {} for {}: sum {}", report.field, g, report.aggregate);

    println!("degree law verified");
    Ok(())
}

//! Reciprocity for two-dimensional symbols, in both directions.
//!
//! Fixing a curve and summing the symbol over all points of the curve
//! (including infinity) gives 1; fixing a point and summing over all
//! curves through it gives 1 as well. Both checkers enumerate the relevant
//! flags, report every local value, and spot-check off-support flags.

use localsym::expr::parse_ratfunc2;
use localsym::reciprocity::{parshin_curve_sum_check, parshin_point_sum_check};
use localsym::{Chart, Curve2, Field, Poly, Result};

fn main() -> Result<()> {
    let k = Field::rationals();
    let x = parse_ratfunc2("x", &k)?;
    let y = parse_ratfunc2("y", &k)?;

    // sum over the points of the x-axis: ((y, x, 7)) contributes the
    // inverse constant at the origin and the constant back at infinity
    let c = parse_ratfunc2("7", &k)?;
    let axis = Curve2::graph(Poly::new(k.clone(), 'x', vec![k.zero()]));
    let report = parshin_point_sum_check(&y, &x, &c, &axis, Chart::default())?;
    println!("law {} along {}", report.law, axis);
    for piece in &report.pieces {
        println!("  point {}  ->  {}", piece.place, piece.value);
    }
    println!("  product = {}", report.aggregate);
    assert!(report.pass);

    // when the first slot is the curve equation itself, each local symbol
    // degenerates to a tame symbol on the curve, so this check contains
    // one-dimensional reciprocity
    let f = parse_ratfunc2("(x - 1)/(x^2 + 1)", &k)?;
    let g = parse_ratfunc2("x^3 - 2", &k)?;
    let report = parshin_point_sum_check(&y, &f, &g, &axis, Chart::default())?;
    assert!(report.pass);
    println!("\ndegenerate check along {}: {} pieces, product {}", axis, report.pieces.len(), report.aggregate);

    // sum over the curves through the origin: x, y, and x - y all pass
    // through it, and their contributions cancel
    let xy = parse_ratfunc2("x - y", &k)?;
    let report = parshin_curve_sum_check(&x, &y, &xy, &k.zero(), &k.zero())?;
    println!("\nlaw {} at the origin", report.law);
    for piece in &report.pieces {
        println!("  curve {}  ->  {}", piece.place, piece.value);
    }
    println!("  product = {}", report.aggregate);
    assert!(report.pass);
    assert_eq!(
        report.pieces.iter().map(|p| p.value.as_str()).collect::<Vec<_>>(),
        vec!["1", "-1", "-1"]
    );

    // every report carries a machine-checked enumeration certificate
    let cert = &report.certificate;
    println!(
        "\ncertificate: support {:?}, {} spot checks, omitted places because {}",
        cert.support,
        cert.spot_checks.len(),
        cert.omitted
    );
    assert_eq!(cert.spot_checks.len(), 20);
    assert!(cert.spot_checks.iter().all(|s| s.value == "1"));

    println!("two-dimensional reciprocity verified");
    Ok(())
}

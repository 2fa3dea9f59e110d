//! Two-dimensional symbols along flags on the plane.
//!
//! A flag is a curve together with a point on it (and a chart id). Each
//! function gets a digit column (order along the curve, order of the
//! reduction at the point, leading unit); three functions give a 3x2 digit
//! matrix whose minors assemble the symbol. The value lands in the residue
//! field of the point and returns through the norm.

use localsym::expr::parse_ratfunc2;
use localsym::flags::{parshin_digits, parshin_oracle, transport_flag, transport_function};
use localsym::{parshin_symbol, Chart, Curve2, Field, Flag2, Place, Result};

fn main() -> Result<()> {
    let k = Field::rationals();
    let x = parse_ratfunc2("x", &k)?;
    let y = parse_ratfunc2("y", &k)?;
    let c = parse_ratfunc2("7", &k)?;

    // the flag: the x-axis, with the origin on it
    let axis = Curve2::graph(localsym::Poly::new(k.clone(), 'x', vec![k.zero()]));
    let flag = Flag2::new(Chart::default(), axis.clone(), Place::linear(&k.zero(), 'x'))?;

    // digits of y along the flag: order 1 on the curve, unit 1
    let d = parshin_digits(&y, &flag)?;
    println!("digits of y along the x-axis flag: ({}, {}), unit {}", d.a1, d.a2, d.unit);
    assert_eq!((d.a1, d.a2), (1, 0));

    // digits of x: transverse to the curve, so order 0 then order 1
    let d = parshin_digits(&x, &flag)?;
    assert_eq!((d.a1, d.a2), (0, 1));

    // ((y, x, 7)) pairs the two uniformizers against a constant, leaving
    // the inverse of the constant
    let v = parshin_symbol(&y, &x, &c, &flag)?;
    println!("((y, x, 7)) at the flag = {}", v.value);
    assert_eq!(v.value.to_string(), "1/7");

    // slot order matters through the sign bookkeeping
    let v = parshin_symbol(&x, &y, &c, &flag)?;
    assert_eq!(v.value.to_string(), "7");

    // two equal uniformizer columns degenerate to a sign
    let v = parshin_symbol(&x, &x, &y, &flag)?;
    assert_eq!(v.value, k.from_i64(-1));

    // the direct minor formula always agrees with the slow route that peels
    // the symbol through two boundary maps
    let f = parse_ratfunc2("(x^2 + y)/(x - y^2)", &k)?;
    let g = parse_ratfunc2("y^2 - 3", &k)?;
    let h = parse_ratfunc2("x*y + 1", &k)?;
    let fast = parshin_symbol(&f, &g, &h, &flag)?.value;
    let slow = parshin_oracle(&f, &g, &h, &flag)?.value;
    println!("formula {fast} vs boundary oracle {slow}");
    assert!(fast == slow);

    // transporting a flag and its functions to another chart preserves the
    // symbol: here y -> 1/y sends the horizontal line y = 2 to y = 1/2
    let line = Curve2::graph(localsym::Poly::new(k.clone(), 'x', vec![k.from_i64(2)]));
    let flag2 = Flag2::new(Chart::default(), line, Place::linear(&k.one(), 'x'))?;
    let to = Chart::from_id("xY")?;
    let moved = transport_flag(&flag2, to)?;
    println!("flag {flag2} moves to {moved}");
    let f1 = parse_ratfunc2("y - 2", &k)?;
    let f2 = parse_ratfunc2("x - 1", &k)?;
    let f3 = parse_ratfunc2("5", &k)?;
    let before = parshin_symbol(&f1, &f2, &f3, &flag2)?.value;
    let after = parshin_symbol(
        &transport_function(&f1, Chart::default(), to)?,
        &transport_function(&f2, Chart::default(), to)?,
        &transport_function(&f3, Chart::default(), to)?,
        &moved,
    )?
    .value;
    assert!(before == after);

    println!("two-dimensional symbol checks passed");
    Ok(())
}

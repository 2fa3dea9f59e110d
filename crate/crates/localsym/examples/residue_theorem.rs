//! Laurent expansions and the residue theorem: the residues of f·dg summed
//! over all places of the projective line vanish.
//!
//! At a rational place the residue is the coefficient of z^{-1} in the
//! expansion of f·(dg/dz); at a place of higher degree the expansion is
//! computed over the residue field and traced back down.

use localsym::expr::parse_ratfunc;
use localsym::reciprocity::residue_sum_check;
use localsym::{laurent_expand, residue_fdg, Field, Place, Poly, Result};

fn main() -> Result<()> {
    let k = Field::rationals();

    // 1/t has the constant residue picture: Res_0(1/t dt) = 1 and the
    // matching -1 at infinity
    let f = parse_ratfunc("1/t", &k, 't')?;
    let t = parse_ratfunc("t", &k, 't')?;
    let origin = Place::linear(&k.zero(), 't');
    let inf = Place::infinity(&k, 't');
    assert!(residue_fdg(&f, &t, &origin)?.is_one());
    assert!(residue_fdg(&f, &t, &inf)? == k.from_i64(-1));

    // a Laurent expansion at the origin, printable and exact
    let g = parse_ratfunc("1/(t^2*(1 - t))", &k, 't')?;
    let series = laurent_expand(&g, &origin, 6)?;
    println!("1/(t^2(1-t)) at (t): {series}");
    // the geometric tail: 1/t^2 + 1/t + 1 + t + ...
    assert!(series.coeff_at(-2)?.is_one());
    assert!(series.coeff_at(-1)?.is_one());
    assert!(series.coeff_at(0)?.is_one());

    // the full theorem for a function with poles of mixed degrees
    let f = parse_ratfunc("(t + 3)/((t^2 + 1)*(t - 1))", &k, 't')?;
    let report = residue_sum_check(&f, &t)?;
    println!("\nlaw {} over {}", report.law, report.field);
    for piece in &report.pieces {
        println!("  Res at {}  =  {}", piece.place, piece.value);
    }
    println!("  sum = {}", report.aggregate);
    assert!(report.pass);

    // the residue at the quadratic place agrees with the trace of the
    // residue at either root: here k(p) = Q(i) and the residue pair is
    // conjugate, so the trace is twice the real part
    let p = Place::finite(Poly::new(k.clone(), 't', vec![k.one(), k.zero(), k.one()]))?;
    let here = residue_fdg(&f, &t, &p)?;
    println!("\ntraced residue at (t^2+1): {here}");

    assert!(residue_sum_check(&f, &t)?.pass);
    println!("residue theorem verified");
    Ok(())
}

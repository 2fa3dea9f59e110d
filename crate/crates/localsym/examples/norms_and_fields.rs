//! The coefficient rings: rationals, prime fields, extensions, and
//! nilpotent rings, with norm and trace down an extension.
//!
//! Every symbol in this library funnels its residue-field value back to
//! the base through the norm (multiplicative symbols) or the trace
//! (additive residues), so the tower needs to be exact end to end.

use localsym::expr::parse_elem;
use localsym::field::norm_and_trace;
use localsym::{Field, Poly, Result};

fn main() -> Result<()> {
    // prime fields know their order
    let f7 = Field::prime(7)?;
    println!("{f7}: characteristic {}, order {:?}", f7.characteristic(), f7.order());
    assert!(f7.from_i64(10) == f7.from_i64(3));

    // an extension field from an irreducible modulus, with a named
    // generator usable in expressions
    let modulus = Poly::new(f7.clone(), 'a', vec![f7.from_i64(1), f7.zero(), f7.one()]);
    assert!(modulus.is_irreducible()?);
    let f49 = modulus.extension_field("a")?;
    println!("{f49}: order {:?}, descriptor {}", f49.order(), f49.descriptor());
    let a = parse_elem("a", &f49)?;
    assert!((&a * &a) == f49.from_i64(-1));

    // norms and traces match the conjugate picture: for x = c + d*a the
    // conjugate is c - d*a, so N(x) = c^2 + d^2 and Tr(x) = 2c
    let x = parse_elem("3 + 2*a", &f49)?;
    let (n, tr) = norm_and_trace(&x)?;
    println!("N(3 + 2a) = {n}, Tr(3 + 2a) = {tr}");
    assert!(n == f7.from_i64(13));
    assert!(tr == f7.from_i64(6));

    // the multiplicative property of the norm
    let y = parse_elem("1 - a", &f49)?;
    let (ny, _) = norm_and_trace(&y)?;
    let (nxy, _) = norm_and_trace(&(&x * &y))?;
    assert!(nxy == &n * &ny);

    // the same machinery over the rationals
    let q = Field::rationals();
    let gauss = Poly::new(q.clone(), 'a', vec![q.one(), q.zero(), q.one()]).extension_field("a")?;
    let z = parse_elem("1/2 + a", &gauss)?;
    let (n, tr) = norm_and_trace(&z)?;
    println!("over {gauss}: N(1/2 + a) = {n}, Tr = {tr}");
    assert_eq!(n.to_string(), "5/4");
    assert_eq!(tr.to_string(), "1");

    // nilpotent rings are not fields but still do exact arithmetic; the
    // units are exactly the elements with invertible constant term
    let ring = Field::eps_truncated(q.clone(), 3)?;
    println!("{ring}: is_field = {}", ring.is_field());
    assert!(!ring.is_field());
    let e = ring.nil_generator(0)?;
    let u = &ring.one() + &e;
    let inv = u.inv()?;
    // (1 + e)^-1 = 1 - e + e^2 when e^3 = 0
    assert!((&u * &inv).is_one());
    assert!((&(&e * &e) * &e).is_zero());

    // descriptors round-trip through the parser used by the CLI
    for d in ["q", "fp:7", "fq:7^2", "eps2(fp:5)", "eps3(q)"] {
        let k = localsym::cli::parse_field_descriptor(d)?;
        println!("{d} -> {}", k.descriptor());
    }

    println!("field tower checks passed");
    Ok(())
}

//! Reciprocity checks: enumerate every local piece that can contribute to a
//! global sum or product, fold them in canonical order, and certify the
//! enumeration by recomputing the symbol at random off-support loci.

use rand::Rng;
use serde::Serialize;

use crate::bivariate::RatFunc2;
use crate::detrng::rng_for;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::flags::{curve_order_reduce, curves_through_point, parshin_symbol, Chart, Curve2, Flag2};
use crate::place::{Divisor, Place};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::series::residue_fdg;
use crate::symbols::{degree_symbol, tame_symbol};

const SPOT_CHECKS: usize = 20;
const SAMPLE_ATTEMPTS: usize = 1000;

/// One local contribution: a locus label and the symbol value there.
#[derive(Debug, Clone, Serialize)]
pub struct LocalPiece {
    pub place: String,
    pub value: String,
}

/// The enumeration certificate: the support that was folded, a one-line
/// argument for why everything omitted is trivial, and recomputed symbols at
/// random off-support loci (all of which must be the identity).
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub support: Vec<String>,
    pub omitted: String,
    pub spot_checks: Vec<LocalPiece>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReciprocityReport {
    pub law: String,
    pub field: String,
    pub inputs: Vec<String>,
    pub pieces: Vec<LocalPiece>,
    pub aggregate: String,
    pub pass: bool,
    pub certificate: Certificate,
}

fn sample_elem<R: Rng>(k: &Field, rng: &mut R) -> Elem {
    if k.is_finite() {
        k.sample(rng).expect("finite field sampling")
    } else {
        k.from_i64(rng.gen_range(-9..=9))
    }
}

/// A uniformly chosen monic irreducible place avoiding the given support.
fn random_off_support_place<R: Rng>(
    k: &Field,
    var: char,
    excluded: &[Place],
    rng: &mut R,
) -> Result<Place> {
    let max_deg = if k.is_finite() { 3 } else { 2 };
    for _ in 0..SAMPLE_ATTEMPTS {
        let d = rng.gen_range(1..=max_deg);
        let mut coeffs: Vec<Elem> = (0..d).map(|_| sample_elem(k, rng)).collect();
        coeffs.push(k.one());
        let p = Poly::new(k.clone(), var, coeffs);
        if p.degree() < 1 || !p.is_irreducible().unwrap_or(false) {
            continue;
        }
        let place = Place::finite_unchecked(p);
        if excluded.contains(&place) {
            continue;
        }
        return Ok(place);
    }
    Err(Error::Uncertified(
        "could not sample an off-support place".into(),
    ))
}

fn support_strings(support: &[Place]) -> Vec<String> {
    support.iter().map(Place::to_string).collect()
}

/// Places of the divisors of the nonconstant inputs, plus infinity, sorted
/// canonically. Empty when every input is constant.
fn union_support(fs: &[&RatFunc]) -> Result<Vec<Place>> {
    let mut out: Vec<Place> = Vec::new();
    let mut any = false;
    for f in fs {
        if f.is_constant() {
            continue;
        }
        any = true;
        for p in Divisor::of(f)?.support() {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
    }
    if any {
        let inf = Place::infinity(fs[0].field(), fs[0].var());
        if !out.contains(&inf) {
            out.push(inf);
        }
    }
    out.sort();
    Ok(out)
}

/// The sum of degree symbols of a nonzero function over its divisor support
/// and infinity is zero.
pub fn degree_sum_check(f: &RatFunc) -> Result<ReciprocityReport> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let k = f.field().clone();
    let support = union_support(&[f])?;
    let mut pieces = Vec::new();
    let mut sum: i64 = 0;
    for p in &support {
        let v = degree_symbol(f, p)?;
        sum += v;
        pieces.push(LocalPiece { place: p.to_string(), value: v.to_string() });
    }
    let mut rng = rng_for("degree-sum", &[&k.descriptor(), &f.to_string()]);
    let mut spot_checks = Vec::new();
    for _ in 0..SPOT_CHECKS {
        let p = random_off_support_place(&k, f.var(), &support, &mut rng)?;
        let v = degree_symbol(f, &p)?;
        if v != 0 {
            return Err(Error::Uncertified(format!(
                "off-support degree symbol at {p} is {v}, not 0"
            )));
        }
        spot_checks.push(LocalPiece { place: p.to_string(), value: v.to_string() });
    }
    Ok(ReciprocityReport {
        law: "degree-sum".into(),
        field: k.descriptor(),
        inputs: vec![f.to_string()],
        pieces,
        aggregate: sum.to_string(),
        pass: sum == 0,
        certificate: Certificate {
            support: support_strings(&support),
            omitted: "places outside the divisor have valuation zero, so their degree \
                      terms vanish"
                .into(),
            spot_checks,
        },
    })
}

/// The product of tame symbols of two nonzero functions over the union of
/// their supports and infinity is one.
pub fn weil_check(f: &RatFunc, g: &RatFunc) -> Result<ReciprocityReport> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let k = f.field().clone();
    let support = union_support(&[f, g])?;
    let mut pieces = Vec::new();
    let mut product = k.one();
    for p in &support {
        let v = tame_symbol(f, g, p)?.value;
        product = &product * &v;
        pieces.push(LocalPiece { place: p.to_string(), value: v.to_string() });
    }
    let mut rng = rng_for("weil", &[&k.descriptor(), &f.to_string(), &g.to_string()]);
    let mut spot_checks = Vec::new();
    for _ in 0..SPOT_CHECKS {
        let p = random_off_support_place(&k, f.var(), &support, &mut rng)?;
        let v = tame_symbol(f, g, &p)?.value;
        if !v.is_one() {
            return Err(Error::Uncertified(format!(
                "off-support tame symbol at {p} is {v}, not 1"
            )));
        }
        spot_checks.push(LocalPiece { place: p.to_string(), value: v.to_string() });
    }
    Ok(ReciprocityReport {
        law: "weil".into(),
        field: k.descriptor(),
        inputs: vec![f.to_string(), g.to_string()],
        pieces,
        aggregate: product.to_string(),
        pass: product.is_one(),
        certificate: Certificate {
            support: support_strings(&support),
            omitted: "off the union of supports both valuations vanish and the \
                      unit-unit tame symbol is 1"
                .into(),
            spot_checks,
        },
    })
}

/// The residues of f·dg over the union of supports and infinity sum to zero.
pub fn residue_sum_check(f: &RatFunc, g: &RatFunc) -> Result<ReciprocityReport> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let k = f.field().clone();
    let support = union_support(&[f, g])?;
    let mut pieces = Vec::new();
    let mut sum = k.zero();
    for p in &support {
        let v = residue_fdg(f, g, p)?;
        sum = &sum + &v;
        pieces.push(LocalPiece { place: p.to_string(), value: v.to_string() });
    }
    let mut rng = rng_for("residue-sum", &[&k.descriptor(), &f.to_string(), &g.to_string()]);
    let mut spot_checks = Vec::new();
    for _ in 0..SPOT_CHECKS {
        let p = random_off_support_place(&k, f.var(), &support, &mut rng)?;
        let v = residue_fdg(f, g, &p)?;
        if !v.is_zero() {
            return Err(Error::Uncertified(format!(
                "off-support residue at {p} is {v}, not 0"
            )));
        }
        spot_checks.push(LocalPiece { place: p.to_string(), value: v.to_string() });
    }
    Ok(ReciprocityReport {
        law: "residue-sum".into(),
        field: k.descriptor(),
        inputs: vec![f.to_string(), g.to_string()],
        pieces,
        aggregate: sum.to_string(),
        pass: sum.is_zero(),
        certificate: Certificate {
            support: support_strings(&support),
            omitted: "f·dg is regular away from the listed places, so every omitted \
                      residue is zero"
                .into(),
            spot_checks,
        },
    })
}

/// The product of two-dimensional symbols over all points of the completed
/// curve (places of its coordinate line, including infinity) is one.
pub fn parshin_point_sum_check(
    f1: &RatFunc2,
    f2: &RatFunc2,
    f3: &RatFunc2,
    curve: &Curve2,
    chart: Chart,
) -> Result<ReciprocityReport> {
    let k = curve.field().clone();
    let var = curve.coordinate_var();
    let fs = [f1, f2, f3];
    let mut support: Vec<Place> = Vec::new();
    for f in fs {
        let (_, u) = curve_order_reduce(f, curve)?;
        if u.is_constant() {
            continue;
        }
        for p in Divisor::of(&u)?.support() {
            if !support.contains(p) {
                support.push(p.clone());
            }
        }
    }
    let inf = Place::infinity(&k, var);
    if !support.contains(&inf) {
        support.push(inf);
    }
    support.sort();
    let input_strings: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
    let mut pieces = Vec::new();
    let mut product = k.one();
    for p in &support {
        let flag = Flag2::new(chart, curve.clone(), p.clone())?;
        let v = parshin_symbol(f1, f2, f3, &flag)?.value;
        product = &product * &v;
        pieces.push(LocalPiece { place: p.to_string(), value: v.to_string() });
    }
    let mut seed_parts: Vec<&str> = vec![];
    let kd = k.descriptor();
    let curve_s = curve.to_string();
    seed_parts.push(&kd);
    seed_parts.extend(input_strings.iter().map(String::as_str));
    seed_parts.push(&curve_s);
    let mut rng = rng_for("parshin-point-sum", &seed_parts);
    let mut spot_checks = Vec::new();
    for _ in 0..SPOT_CHECKS {
        let p = random_off_support_place(&k, var, &support, &mut rng)?;
        let flag = Flag2::new(chart, curve.clone(), p.clone())?;
        let v = parshin_symbol(f1, f2, f3, &flag)?.value;
        if !v.is_one() {
            return Err(Error::Uncertified(format!(
                "off-support symbol at {p} is {v}, not 1"
            )));
        }
        spot_checks.push(LocalPiece { place: p.to_string(), value: v.to_string() });
    }
    let mut inputs = input_strings;
    inputs.push(format!("curve={curve_s}"));
    inputs.push(format!("chart={chart}"));
    Ok(ReciprocityReport {
        law: "parshin-point-sum".into(),
        field: kd,
        inputs,
        pieces,
        aggregate: product.to_string(),
        pass: product.is_one(),
        certificate: Certificate {
            support: support_strings(&support),
            omitted: "at points off the reductions' divisors the second digit column \
                      is zero, so the symbol is 1"
                .into(),
            spot_checks,
        },
    })
}

/// The product of two-dimensional symbols over all curves through a fixed
/// affine point is one; contributing curves are read from the vanishing
/// factors of the inputs.
pub fn parshin_curve_sum_check(
    f1: &RatFunc2,
    f2: &RatFunc2,
    f3: &RatFunc2,
    alpha: &Elem,
    beta: &Elem,
) -> Result<ReciprocityReport> {
    let k = alpha.field().clone();
    let chart = Chart::default();
    let fs = [f1, f2, f3];
    let curves = curves_through_point(&[f1, f2, f3], alpha, beta)?;
    let input_strings: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
    let mut pieces = Vec::new();
    let mut product = k.one();
    for c in &curves {
        let point = c.place_at(alpha, beta)?;
        let flag = Flag2::new(chart, c.clone(), point)?;
        let v = parshin_symbol(f1, f2, f3, &flag)?.value;
        product = &product * &v;
        pieces.push(LocalPiece { place: c.to_string(), value: v.to_string() });
    }
    let mut seed_parts: Vec<&str> = vec![];
    let kd = k.descriptor();
    let point_s = format!("{alpha},{beta}");
    seed_parts.push(&kd);
    seed_parts.extend(input_strings.iter().map(String::as_str));
    seed_parts.push(&point_s);
    let mut rng = rng_for("parshin-curve-sum", &seed_parts);
    let mut spot_checks = Vec::new();
    let mut attempts = 0;
    while spot_checks.len() < SPOT_CHECKS {
        attempts += 1;
        if attempts > SAMPLE_ATTEMPTS {
            return Err(Error::Uncertified(
                "could not sample an off-support curve".into(),
            ));
        }
        // a random graph through the point: s = beta + (x - alpha) * r(x)
        let deg = rng.gen_range(0..=2);
        let r = Poly::new(
            k.clone(),
            'x',
            (0..=deg).map(|_| sample_elem(&k, &mut rng)).collect(),
        );
        let s = Poly::constant(beta.clone(), 'x')
            .add(&Poly::linear(alpha, 'x').mul(&r));
        let c = Curve2::graph(s);
        if curves.contains(&c) {
            continue;
        }
        let point = c.place_at(alpha, beta)?;
        let flag = Flag2::new(chart, c.clone(), point)?;
        let v = parshin_symbol(f1, f2, f3, &flag)?.value;
        if !v.is_one() {
            return Err(Error::Uncertified(format!(
                "off-support symbol on {c} is {v}, not 1"
            )));
        }
        spot_checks.push(LocalPiece { place: c.to_string(), value: v.to_string() });
    }
    let mut inputs = input_strings;
    inputs.push(format!("point={point_s}"));
    let support: Vec<String> = curves.iter().map(|c| c.to_string()).collect();
    Ok(ReciprocityReport {
        law: "parshin-curve-sum".into(),
        field: kd,
        inputs,
        pieces,
        aggregate: product.to_string(),
        pass: product.is_one(),
        certificate: Certificate {
            support,
            omitted: "curves through the point dividing no input leave the first \
                      digit column zero, so the symbol is 1"
                .into(),
            spot_checks,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivariate::Poly2;

    fn q() -> Field {
        Field::rationals()
    }

    fn pt(k: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_i64_coeffs(k, 't', coeffs)
    }

    fn rf(k: &Field, num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(pt(k, num), pt(k, den)).unwrap()
    }

    #[test]
    fn degree_sum_worked_example() {
        let k = q();
        let f = rf(&k, &[1, 0, 1], &[0, 1]);
        let report = degree_sum_check(&f).unwrap();
        assert!(report.pass);
        assert_eq!(report.aggregate, "0");
        let got: Vec<(String, String)> = report
            .pieces
            .iter()
            .map(|p| (p.place.clone(), p.value.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("(t)".into(), "-1".into()),
                ("(t^2+1)".into(), "2".into()),
                ("inf".into(), "-1".into()),
            ]
        );
        assert_eq!(report.certificate.spot_checks.len(), 20);
    }

    #[test]
    fn degree_sum_constant_has_empty_support() {
        let k = q();
        let f = RatFunc::constant(k.from_i64(5), 't');
        let report = degree_sum_check(&f).unwrap();
        assert!(report.pass);
        assert!(report.pieces.is_empty());
        assert!(report.certificate.support.is_empty());
    }

    #[test]
    fn weil_worked_example() {
        let k = q();
        let f = rf(&k, &[0, 1], &[1]);
        let g = rf(&k, &[1, -1], &[1]);
        let report = weil_check(&f, &g).unwrap();
        assert!(report.pass);
        assert_eq!(report.aggregate, "1");
        for piece in &report.pieces {
            assert_eq!(piece.value, "1");
        }
        assert_eq!(report.pieces.len(), 3);
    }

    #[test]
    fn residue_worked_example() {
        let k = q();
        let f = rf(&k, &[1], &[0, 1]);
        let g = rf(&k, &[0, 1], &[1]);
        let report = residue_sum_check(&f, &g).unwrap();
        assert!(report.pass);
        let got: Vec<(String, String)> = report
            .pieces
            .iter()
            .map(|p| (p.place.clone(), p.value.clone()))
            .collect();
        assert_eq!(
            got,
            vec![("(t)".into(), "1".into()), ("inf".into(), "-1".into())]
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let k = q();
        let f = rf(&k, &[-1, 1], &[2, 1]);
        let g = rf(&k, &[-4, 0, 1], &[1]);
        let a = weil_check(&f, &g).unwrap();
        let b = weil_check(&f, &g).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn point_sum_worked_example() {
        let k = q();
        let x = RatFunc2::variable_x(&k);
        let y = RatFunc2::variable_y(&k);
        let c = RatFunc2::constant(k.from_i64(7));
        let curve = Curve2::graph(Poly::zero(&k, 'x'));
        let report =
            parshin_point_sum_check(&y, &x, &c, &curve, Chart::default()).unwrap();
        assert!(report.pass);
        assert_eq!(report.aggregate, "1");
        // support: the origin on the curve plus infinity
        assert_eq!(report.certificate.support, vec!["(x)", "inf"]);
    }

    #[test]
    fn point_sum_degenerates_to_weil() {
        let k = q();
        let x = RatFunc2::variable_x(&k);
        let y = RatFunc2::variable_y(&k);
        let one_minus_x = RatFunc2::from_poly2(
            Poly2::constant(k.one()).sub(&Poly2::variable_x(&k)),
        );
        let curve = Curve2::graph(Poly::zero(&k, 'x'));
        let report =
            parshin_point_sum_check(&y, &x, &one_minus_x, &curve, Chart::default())
                .unwrap();
        assert!(report.pass);
    }

    #[test]
    fn curve_sum_worked_examples() {
        let k = q();
        let x = RatFunc2::variable_x(&k);
        let y = RatFunc2::variable_y(&k);
        let c = RatFunc2::constant(k.from_i64(7));
        let zero = k.zero();
        let report = parshin_curve_sum_check(&x, &y, &c, &zero, &zero).unwrap();
        assert!(report.pass);
        assert_eq!(report.certificate.support, vec!["x", "y"]);
        let f3 = x.sub(&y).unwrap().as_hinted_factor();
        let report = parshin_curve_sum_check(&x, &y, &f3, &zero, &zero).unwrap();
        assert!(report.pass);
        assert_eq!(report.pieces.len(), 3);
    }

    #[test]
    fn curve_sum_empty_when_nothing_vanishes() {
        let k = q();
        let x = RatFunc2::variable_x(&k);
        let y = RatFunc2::variable_y(&k);
        let c = RatFunc2::constant(k.from_i64(7));
        let one = k.one();
        let two = k.from_i64(2);
        let report = parshin_curve_sum_check(&x, &y, &c, &one, &two).unwrap();
        assert!(report.pass);
        assert!(report.pieces.is_empty());
        assert_eq!(report.certificate.spot_checks.len(), 20);
    }
}

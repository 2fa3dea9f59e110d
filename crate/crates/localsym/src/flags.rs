//! Flags on the doubled line: a chart, a curve in that chart, and a point on
//! the curve. Two-dimensional symbols are computed from digit sequences
//! (curve order, point order, final unit) via a closed determinant formula,
//! with an independent iterated-boundary evaluation for cross-checking.

use std::fmt;

use crate::bivariate::{Poly2, RatFunc2};
use crate::error::{Error, Result};
use crate::field::{norm, Elem, Field};
use crate::milnor::{boundary, BoundaryCtx, MilnorSymbol};
use crate::place::Place;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::symbols::{milnor_boundary, SymbolValue};

/// One of the four affine charts of the doubled line, recorded by which
/// coordinates have been inverted relative to the reference chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Chart {
    pub swap_x: bool,
    pub swap_y: bool,
}

impl Chart {
    pub fn from_id(id: &str) -> Result<Chart> {
        match id {
            "xy" => Ok(Chart { swap_x: false, swap_y: false }),
            "Xy" => Ok(Chart { swap_x: true, swap_y: false }),
            "xY" => Ok(Chart { swap_x: false, swap_y: true }),
            "XY" => Ok(Chart { swap_x: true, swap_y: true }),
            other => Err(Error::InvalidDescriptor(format!(
                "unknown chart '{other}' (expected xy, Xy, xY, or XY)"
            ))),
        }
    }

    pub fn id(&self) -> &'static str {
        match (self.swap_x, self.swap_y) {
            (false, false) => "xy",
            (true, false) => "Xy",
            (false, true) => "xY",
            (true, true) => "XY",
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// A curve in a fixed chart: either the graph of a polynomial, cut out by
/// y - s(x), or a vertical line x - alpha. The coordinate along the curve is
/// x for graphs and y for vertical lines.
#[derive(Debug, Clone, PartialEq)]
pub enum Curve2 {
    Graph(Poly),
    Vertical(Elem),
}

impl Curve2 {
    pub fn graph(s: Poly) -> Curve2 {
        Curve2::Graph(s.with_var('x'))
    }

    pub fn vertical(alpha: Elem) -> Curve2 {
        Curve2::Vertical(alpha)
    }

    pub fn field(&self) -> &Field {
        match self {
            Curve2::Graph(s) => s.field(),
            Curve2::Vertical(a) => a.field(),
        }
    }

    /// The variable of the coordinate line of the curve.
    pub fn coordinate_var(&self) -> char {
        match self {
            Curve2::Graph(_) => 'x',
            Curve2::Vertical(_) => 'y',
        }
    }

    /// Recognizes a defining polynomial as a graph or a vertical line:
    /// either linear in y with a constant leading coefficient, or linear in
    /// x alone.
    pub fn from_defining(q: &Poly2) -> Result<Curve2> {
        if q.deg_y() == 1 {
            let lead = q.coeff_y(1);
            if !lead.is_constant() {
                return Err(Error::UnsupportedCurve(format!(
                    "{q} is not a graph with constant leading coefficient"
                )));
            }
            let s = q.coeff_y(0).scale(&lead.coeff(0).inv()?.neg_ref());
            return Ok(Curve2::Graph(s));
        }
        if q.deg_y() == 0 && q.deg_x() == 1 {
            let c = q.coeff_y(0);
            let alpha = c.coeff(0).neg_ref().try_div(&c.coeff(1))?;
            return Ok(Curve2::Vertical(alpha));
        }
        Err(Error::UnsupportedCurve(format!(
            "{q} is neither y - s(x) nor a vertical line"
        )))
    }

    /// The defining equation, as a bivariate polynomial.
    pub fn defining_poly(&self) -> Poly2 {
        let k = self.field();
        match self {
            Curve2::Graph(s) => {
                Poly2::variable_y(k).sub(&Poly2::from_poly_x(s))
            }
            Curve2::Vertical(a) => {
                Poly2::variable_x(k).sub(&Poly2::constant(a.clone()))
            }
        }
    }

    /// Whether the affine point (alpha, beta) lies on the curve.
    pub fn contains(&self, alpha: &Elem, beta: &Elem) -> bool {
        self.defining_poly().eval_point(alpha, beta).is_zero()
    }

    /// The place of the coordinate line corresponding to the affine point
    /// (alpha, beta), which must lie on the curve.
    pub fn place_at(&self, alpha: &Elem, beta: &Elem) -> Result<Place> {
        if !self.contains(alpha, beta) {
            return Err(Error::UnsupportedCurve(format!(
                "({alpha}, {beta}) does not lie on {self}"
            )));
        }
        Ok(match self {
            Curve2::Graph(_) => Place::linear(alpha, 'x'),
            Curve2::Vertical(_) => Place::linear(beta, 'y'),
        })
    }
}

impl fmt::Display for Curve2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.defining_poly())
    }
}

/// A full flag: chart, curve in the chart, point on the curve's coordinate
/// line (possibly the point at infinity of that line).
#[derive(Debug, Clone, PartialEq)]
pub struct Flag2 {
    chart: Chart,
    curve: Curve2,
    point: Place,
}

impl Flag2 {
    pub fn new(chart: Chart, curve: Curve2, point: Place) -> Result<Flag2> {
        if point.field() != curve.field() {
            return Err(Error::InvalidDescriptor(
                "flag point and curve live over different fields".into(),
            ));
        }
        if point.var() != curve.coordinate_var() {
            return Err(Error::InvalidDescriptor(format!(
                "flag point must be a place in {}, got one in {}",
                curve.coordinate_var(),
                point.var()
            )));
        }
        Ok(Flag2 { chart, curve, point })
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn curve(&self) -> &Curve2 {
        &self.curve
    }

    pub fn point(&self) -> &Place {
        &self.point
    }

    pub fn field(&self) -> &Field {
        self.curve.field()
    }
}

impl fmt::Display for Flag2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "curve={};point={};chart={}",
            self.curve, self.point, self.chart
        )
    }
}

/// The digit sequence of a function along a flag: order along the curve,
/// order of the leading coefficient at the point, and the final unit in the
/// residue field of the point.
#[derive(Debug, Clone)]
pub struct DigitSequence {
    pub a1: i64,
    pub a2: i64,
    pub unit: Elem,
}

/// Order along the curve and reduction to the coordinate line.
pub fn curve_order_reduce(f: &RatFunc2, curve: &Curve2) -> Result<(i64, RatFunc)> {
    match curve {
        Curve2::Graph(s) => f.graph_order_reduce(s),
        Curve2::Vertical(a) => f.vertical_order_reduce(a),
    }
}

pub fn parshin_digits(f: &RatFunc2, flag: &Flag2) -> Result<DigitSequence> {
    let (a1, u) = curve_order_reduce(f, &flag.curve)?;
    let a2 = flag.point.valuation(&u)?;
    let unit = flag.point.unit_part(&u)?;
    Ok(DigitSequence { a1, a2, unit })
}

/// The two-dimensional symbol of three functions along a flag, by the closed
/// determinant formula on the 3x2 digit matrix.
pub fn parshin_symbol(
    f1: &RatFunc2,
    f2: &RatFunc2,
    f3: &RatFunc2,
    flag: &Flag2,
) -> Result<SymbolValue> {
    let fs = [f1, f2, f3];
    let mut rows = Vec::with_capacity(3);
    let mut units = Vec::with_capacity(3);
    for f in fs {
        let d = parshin_digits(f, flag)?;
        rows.push([d.a1, d.a2]);
        units.push(d.unit);
    }
    let a = &rows;
    // A_i: determinant of the matrix with row i deleted
    let minors = [
        a[1][0] * a[2][1] - a[1][1] * a[2][0],
        a[0][0] * a[2][1] - a[0][1] * a[2][0],
        a[0][0] * a[1][1] - a[0][1] * a[1][0],
    ];
    // B = sum over columns k and row pairs i < j of a_ik * a_jk * (entry in
    // the remaining row and the other column)
    let b = a[0][0] * a[1][0] * a[2][1]
        + a[0][0] * a[2][0] * a[1][1]
        + a[1][0] * a[2][0] * a[0][1]
        + a[0][1] * a[1][1] * a[2][0]
        + a[0][1] * a[2][1] * a[1][0]
        + a[1][1] * a[2][1] * a[0][0];
    let kp = flag.point.residue_field();
    let mut val = if b % 2 == 0 { kp.one() } else { kp.from_i64(-1) };
    for (i, c) in units.iter().enumerate() {
        // exponent (-1)^i * A_i with rows numbered from one
        let e = if i % 2 == 0 { -minors[i] } else { minors[i] };
        if e != 0 {
            val = &val * &c.pow(e)?;
        }
    }
    let value = norm(&val)?;
    Ok(SymbolValue::new(
        value,
        "parshin",
        flag.to_string(),
        fs.iter().map(|f| f.to_string()).collect(),
    ))
}

struct CurveCtx<'a> {
    curve: &'a Curve2,
    z: RatFunc2,
}

impl<'a> CurveCtx<'a> {
    fn new(curve: &'a Curve2) -> CurveCtx<'a> {
        let z = RatFunc2::from_poly2(curve.defining_poly());
        CurveCtx { curve, z }
    }
}

impl BoundaryCtx for CurveCtx<'_> {
    type Up = RatFunc2;
    type Down = RatFunc;

    fn split(&self, f: &RatFunc2) -> Result<(i64, RatFunc2)> {
        let (a, _) = curve_order_reduce(f, self.curve)?;
        let u = f.mul(&self.z.pow(-a)?)?;
        Ok((a, u))
    }

    fn reduce(&self, u: &RatFunc2) -> Result<RatFunc> {
        let (ord, red) = curve_order_reduce(u, self.curve)?;
        debug_assert_eq!(ord, 0, "reduce called on a non-unit");
        Ok(red)
    }

    fn minus_one(&self) -> RatFunc2 {
        RatFunc2::constant(self.curve.field().from_i64(-1))
    }

    fn is_one_up(&self, f: &RatFunc2) -> bool {
        f.is_one()
    }

    fn is_one_down(&self, d: &RatFunc) -> bool {
        d.is_one()
    }
}

/// Independent evaluation of the two-dimensional symbol by two boundary maps
/// (first along the curve, then at the point) followed by exponentiation and
/// the norm to the constant field.
pub fn parshin_oracle(
    f1: &RatFunc2,
    f2: &RatFunc2,
    f3: &RatFunc2,
    flag: &Flag2,
) -> Result<SymbolValue> {
    let sym = MilnorSymbol::wedge(vec![f1.clone(), f2.clone(), f3.clone()]);
    let ctx = CurveCtx::new(&flag.curve);
    let on_curve = boundary(&sym, &ctx)?;
    let at_point = milnor_boundary(&on_curve, &flag.point)?;
    let val = at_point.exponentiate_in(&flag.point.residue_field())?;
    let value = norm(&val)?;
    Ok(SymbolValue::new(
        value,
        "parshin-oracle",
        flag.to_string(),
        [f1, f2, f3].iter().map(|f| f.to_string()).collect(),
    ))
}

/// Replaces a place of a coordinate line by its image under inverting the
/// coordinate: finite places away from zero reverse, the zero place and the
/// place at infinity trade positions.
pub fn place_involution(p: &Place) -> Result<Place> {
    let field = p.field().clone();
    let var = p.var();
    match p.poly() {
        None => Ok(Place::linear(&field.zero(), var)),
        Some(q) => {
            if q.coeff(0).is_zero() {
                return Ok(Place::infinity(&field, var));
            }
            let (_, rev) = q.reverse().monic()?;
            Ok(Place::finite_unchecked(rev))
        }
    }
}

/// Transports a function between charts by the coordinate inversions that
/// relate them.
pub fn transport_function(f: &RatFunc2, from: Chart, to: Chart) -> Result<RatFunc2> {
    let mut g = f.clone();
    if from.swap_x != to.swap_x {
        g = g.invert_x()?;
    }
    if from.swap_y != to.swap_y {
        g = g.invert_y()?;
    }
    Ok(g)
}

/// Transports a flag to another chart when the curve has a recognizable
/// image there: vertical lines under x-inversion, constant graphs under
/// y-inversion, and monomial graphs under inversion of both coordinates.
pub fn transport_flag(flag: &Flag2, to: Chart) -> Result<Flag2> {
    let from = flag.chart;
    let dx = from.swap_x != to.swap_x;
    let dy = from.swap_y != to.swap_y;
    if !dx && !dy {
        return Ok(Flag2 { chart: to, ..flag.clone() });
    }
    let k = flag.field().clone();
    let (curve, point) = match &flag.curve {
        Curve2::Vertical(alpha) => {
            let alpha = if dx {
                if alpha.is_zero() {
                    return Err(Error::UnsupportedCurve(
                        "the line x = 0 leaves the chart under x-inversion".into(),
                    ));
                }
                alpha.inv()?
            } else {
                alpha.clone()
            };
            let point = if dy { place_involution(&flag.point)? } else { flag.point.clone() };
            (Curve2::Vertical(alpha), point)
        }
        Curve2::Graph(s) => {
            let new_s = match (dx, dy) {
                (true, false) => {
                    if !s.is_constant() {
                        return Err(Error::UnsupportedCurve(
                            "only constant graphs transport under x-inversion alone".into(),
                        ));
                    }
                    s.clone()
                }
                (false, true) => {
                    if !s.is_constant() || s.is_zero() {
                        return Err(Error::UnsupportedCurve(
                            "only nonvanishing constant graphs transport under y-inversion"
                                .into(),
                        ));
                    }
                    Poly::constant(s.coeff(0).inv()?, 'x')
                }
                (true, true) => {
                    // monomial graphs y = c x^d become y = x^d / c
                    let d = s.degree();
                    let monomial = !s.is_zero()
                        && s.coeffs().iter().take(d.max(0) as usize).all(Elem::is_zero);
                    if !monomial {
                        return Err(Error::UnsupportedCurve(
                            "only monomial graphs transport under full inversion".into(),
                        ));
                    }
                    let mut coeffs = vec![k.zero(); d as usize + 1];
                    coeffs[d as usize] = s.coeff(d as usize).inv()?;
                    Poly::new(k.clone(), 'x', coeffs)
                }
                (false, false) => unreachable!(),
            };
            let point = if dx { place_involution(&flag.point)? } else { flag.point.clone() };
            (Curve2::Graph(new_s), point)
        }
    };
    Flag2::new(to, curve, point)
}

/// The curves through the affine point (alpha, beta) on which one of the
/// given functions could have nonzero order, read from factored hints (or
/// plain numerators and denominators). Factors vanishing at the point that
/// are neither graphs with constant leading coefficient nor vertical lines
/// are reported as unsupported.
pub fn curves_through_point(
    fs: &[&RatFunc2],
    alpha: &Elem,
    beta: &Elem,
) -> Result<Vec<Curve2>> {
    let mut out: Vec<Curve2> = Vec::new();
    let push = |c: Curve2, out: &mut Vec<Curve2>| {
        if !out.contains(&c) {
            out.push(c);
        }
    };
    for f in fs {
        let polys: Vec<Poly2> = match f.hint() {
            Some(h) => h.factors.iter().map(|(p, _)| p.clone()).collect(),
            None => vec![f.num().clone(), f.den().clone()],
        };
        for q in polys {
            if q.is_constant() || !q.eval_point(alpha, beta).is_zero() {
                continue;
            }
            // univariate content carries the vertical components
            let mut content = q.coeff_y(0);
            for i in 1..=q.deg_y().max(0) as usize {
                content = content.gcd(&q.coeff_y(i))?;
            }
            if content.degree() > 0 && content.eval(alpha).is_zero() {
                push(Curve2::Vertical(alpha.clone()), &mut out);
            }
            let prim = if content.degree() > 0 {
                let coeffs: Result<Vec<Poly>> = (0..=q.deg_y().max(0) as usize)
                    .map(|i| q.coeff_y(i).exact_div(&content))
                    .collect();
                Poly2::new(q.field().clone(), coeffs?)
            } else {
                q.clone()
            };
            if !prim.eval_point(alpha, beta).is_zero() {
                continue;
            }
            let lead = prim.coeff_y(prim.deg_y().max(0) as usize);
            if prim.deg_y() == 1 && lead.is_constant() {
                let s = prim.coeff_y(0).scale(&lead.coeff(0).inv()?.neg_ref());
                // prim = lead * (y - s); vanishing at the point means the
                // graph passes through it
                debug_assert!(s.eval(alpha) == *beta);
                push(Curve2::Graph(s), &mut out);
            } else {
                return Err(Error::UnsupportedCurve(format!(
                    "factor {prim} through ({alpha}, {beta}) is not a graph with \
                     constant leading coefficient or a vertical line"
                )));
            }
        }
    }
    out.sort_by(|a, b| match (a, b) {
        (Curve2::Vertical(x), Curve2::Vertical(y)) => x.cmp_canonical(y),
        (Curve2::Vertical(_), Curve2::Graph(_)) => std::cmp::Ordering::Less,
        (Curve2::Graph(_), Curve2::Vertical(_)) => std::cmp::Ordering::Greater,
        (Curve2::Graph(s), Curve2::Graph(t)) => s.cmp_canonical(t),
    });
    Ok(out)
}

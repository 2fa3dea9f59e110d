//! Command-line front end: field descriptors, place and flag syntax, one
//! subcommand per symbol and per reciprocity check, and JSON or text
//! rendering with stable field order.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{parse_elem, parse_poly, parse_ratfunc, parse_ratfunc2};
use crate::field::{Elem, Field, NilShape};
use crate::flags::{Chart, Curve2, Flag2};
use crate::place::{Divisor, Place};
use crate::poly::Poly;
use crate::reciprocity::{
    degree_sum_check, parshin_curve_sum_check, parshin_point_sum_check, residue_sum_check,
    weil_check, ReciprocityReport,
};
use crate::symbols::{degree_symbol, eps3_pairing, residue_pairing, tame_symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "localsym",
    about = "Exact local symbols and reciprocity checks on function fields",
    disable_help_subcommand = true
)]
struct Cli {
    /// Coefficient field: q, fp:<p>, fq:<p>^<d>, eps2(<base>), eps3(<base>)
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Divisor of a rational function in t
    Divisor { expr: String },
    /// Tame symbol of two functions at a place
    Tame {
        /// A place: a polynomial in t, or `inf`
        #[arg(long)]
        place: String,
        f: String,
        g: String,
    },
    /// Degree symbol (residue degree times valuation) at a place
    Degree {
        #[arg(long)]
        place: String,
        f: String,
    },
    /// Residue of f·dg at a place
    Residue {
        #[arg(long)]
        place: String,
        f: String,
        g: String,
    },
    /// Square-zero residue pairing; requires --field eps2(<base>)
    EpsPairing {
        #[arg(long)]
        place: String,
        f: String,
        g: String,
    },
    /// Cube-zero residue pairing; requires --field eps3(<base>)
    Eps3Pairing {
        #[arg(long)]
        place: String,
        f: String,
        g: String,
    },
    /// Two-dimensional symbol of three functions in x, y along a flag
    Parshin {
        /// curve=y-<s(x)>|x-<a>;point=<place expr>;chart=<id>
        #[arg(long)]
        flag: String,
        f1: String,
        f2: String,
        f3: String,
    },
    /// Sum of degree symbols over the divisor support and infinity
    CheckDegree { f: String },
    /// Product of tame symbols over all places
    CheckWeil { f: String, g: String },
    /// Sum of residues of f·dg over all places
    CheckResidue { f: String, g: String },
    /// Product of two-dimensional symbols over all points of a curve
    CheckParshinPoints {
        /// Defining polynomial: y-<s(x)> or x-<a>
        #[arg(long)]
        curve: String,
        /// Chart id: xy, Xy, xY, or XY
        #[arg(long, default_value = "xy")]
        chart: String,
        f1: String,
        f2: String,
        f3: String,
    },
    /// Product of two-dimensional symbols over all curves through a point
    CheckParshinCurves {
        /// Affine point as <alpha>,<beta>
        #[arg(long)]
        point: String,
        f1: String,
        f2: String,
        f3: String,
    },
}

/// Parses a field descriptor. For `fq:<p>^<d>` the modulus is the
/// lexicographically first monic irreducible of degree d (most significant
/// coefficient compared first); it is echoed in every report.
pub fn parse_field_descriptor(s: &str) -> Result<Field> {
    let s = s.trim();
    if s == "q" {
        return Ok(Field::rationals());
    }
    if let Some(rest) = s.strip_prefix("fp:") {
        let p: u64 = rest
            .parse()
            .map_err(|_| Error::InvalidDescriptor(format!("bad prime '{rest}'")))?;
        return Field::prime(p);
    }
    if let Some(rest) = s.strip_prefix("fq:") {
        let (p_str, d_str) = rest.split_once('^').ok_or_else(|| {
            Error::InvalidDescriptor(format!("expected fq:<p>^<d>, got 'fq:{rest}'"))
        })?;
        let p: u64 = p_str
            .parse()
            .map_err(|_| Error::InvalidDescriptor(format!("bad prime '{p_str}'")))?;
        let d: usize = d_str
            .parse()
            .map_err(|_| Error::InvalidDescriptor(format!("bad degree '{d_str}'")))?;
        let base = Field::prime(p)?;
        if d == 0 {
            return Err(Error::InvalidDescriptor("degree must be positive".into()));
        }
        if d == 1 {
            return Ok(base);
        }
        return first_irreducible(&base, d)?.extension_field("a");
    }
    if let Some(inner) = s.strip_prefix("eps2(").and_then(|r| r.strip_suffix(')')) {
        let base = parse_field_descriptor(inner)?;
        return Field::eps_square_zero(base, 2);
    }
    if let Some(inner) = s.strip_prefix("eps3(").and_then(|r| r.strip_suffix(')')) {
        let base = parse_field_descriptor(inner)?;
        return Field::eps_truncated(base, 3);
    }
    Err(Error::InvalidDescriptor(format!(
        "unknown field descriptor '{s}' (expected q, fp:<p>, fq:<p>^<d>, eps2(..), eps3(..))"
    )))
}

/// The lexicographically first monic irreducible of degree d over a prime
/// field, comparing the x^{d-1} coefficient first.
fn first_irreducible(base: &Field, d: usize) -> Result<Poly> {
    let p = base.characteristic();
    let mut digits = vec![0u64; d];
    loop {
        let mut coeffs: Vec<Elem> = digits
            .iter()
            .map(|&c| base.from_i64(c as i64))
            .collect();
        coeffs.push(base.one());
        let q = Poly::new(base.clone(), 'a', coeffs);
        if q.is_irreducible()? {
            return Ok(q);
        }
        // odometer increment, least significant digit first
        let mut i = 0;
        loop {
            if i == d {
                return Err(Error::InvalidDescriptor(format!(
                    "no irreducible of degree {d} found"
                )));
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Parses a place: a polynomial expression in the variable, or `inf`.
pub fn parse_place(s: &str, k: &Field, var: char) -> Result<Place> {
    if s.trim() == "inf" {
        return Ok(Place::infinity(k, var));
    }
    Place::finite(parse_poly(s, k, var)?)
}

/// Parses a curve argument: a defining polynomial in x and y that is
/// either y - s(x) (up to a constant factor) or a vertical line.
pub fn parse_curve(s: &str, k: &Field) -> Result<Curve2> {
    let f = parse_ratfunc2(s, k)?;
    if !f.den().is_one() {
        return Err(Error::InvalidDescriptor(
            "curve must be a polynomial, not a quotient".into(),
        ));
    }
    Curve2::from_defining(f.num())
}

/// Parses `curve=...;point=...;chart=...` into a flag.
pub fn parse_flag(s: &str, k: &Field) -> Result<Flag2> {
    let mut curve_spec: Option<&str> = None;
    let mut point_spec: Option<&str> = None;
    let mut chart_spec = "xy";
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, val) = part.split_once('=').ok_or_else(|| {
            Error::InvalidDescriptor(format!("flag part '{part}' is not key=value"))
        })?;
        match key.trim() {
            "curve" => curve_spec = Some(val),
            "point" => point_spec = Some(val),
            "chart" => chart_spec = val.trim(),
            other => {
                return Err(Error::InvalidDescriptor(format!(
                    "unknown flag key '{other}'"
                )))
            }
        }
    }
    let curve_spec = curve_spec
        .ok_or_else(|| Error::InvalidDescriptor("flag needs curve=...".into()))?;
    let point_spec = point_spec
        .ok_or_else(|| Error::InvalidDescriptor("flag needs point=...".into()))?;
    let chart = Chart::from_id(chart_spec)?;
    let curve = parse_curve(curve_spec, k)?;
    let point = parse_place(point_spec, k, curve.coordinate_var())?;
    Flag2::new(chart, curve, point)
}

/// Parses an affine point `alpha,beta`.
pub fn parse_point(s: &str, k: &Field) -> Result<(Elem, Elem)> {
    let (a, b) = s.split_once(',').ok_or_else(|| {
        Error::InvalidDescriptor(format!("point '{s}' is not <alpha>,<beta>"))
    })?;
    Ok((parse_elem(a, k)?, parse_elem(b, k)?))
}

#[derive(Debug, Serialize)]
struct SymbolOutput {
    command: String,
    field: String,
    inputs: Vec<String>,
    at: String,
    value: String,
}

#[derive(Debug, Serialize)]
struct DivisorEntry {
    place: String,
    multiplicity: i64,
}

#[derive(Debug, Serialize)]
struct DivisorOutput {
    command: String,
    field: String,
    inputs: Vec<String>,
    divisor: Vec<DivisorEntry>,
    degree: i64,
}

#[derive(Debug, Serialize)]
struct ErrorOutput {
    error: String,
}

enum Output {
    Symbol(SymbolOutput),
    Div(DivisorOutput),
    Check(ReciprocityReport),
}

impl Output {
    fn pass(&self) -> bool {
        match self {
            Output::Check(r) => r.pass,
            _ => true,
        }
    }

    fn to_json(&self) -> String {
        match self {
            Output::Symbol(s) => serde_json::to_string_pretty(s),
            Output::Div(d) => serde_json::to_string_pretty(d),
            Output::Check(r) => serde_json::to_string_pretty(r),
        }
        .expect("serialization cannot fail")
    }

    fn to_text(&self) -> String {
        match self {
            Output::Symbol(s) => s.value.clone(),
            Output::Div(d) => {
                let terms: Vec<String> = d
                    .divisor
                    .iter()
                    .map(|e| format!("{}·{}", e.multiplicity, e.place))
                    .collect();
                format!(
                    "divisor: {}\ndegree: {}",
                    if terms.is_empty() { "0".into() } else { terms.join(" + ") },
                    d.degree
                )
            }
            Output::Check(r) => {
                let mut out = String::new();
                out.push_str(&format!("law: {}\n", r.law));
                out.push_str(&format!("field: {}\n", r.field));
                out.push_str(&format!("inputs: {}\n", r.inputs.join(" | ")));
                out.push_str("pieces:\n");
                for p in &r.pieces {
                    out.push_str(&format!("  {}: {}\n", p.place, p.value));
                }
                out.push_str(&format!("aggregate: {}\n", r.aggregate));
                out.push_str(&format!(
                    "certificate: support size {}, {} off-support spot checks clean\n",
                    r.certificate.support.len(),
                    r.certificate.spot_checks.len()
                ));
                out.push_str(&format!("pass: {}", r.pass));
                out
            }
        }
    }
}

fn require_field(k: &Field) -> Result<()> {
    if !k.is_field() {
        return Err(Error::InvalidDescriptor(
            "this command needs a field (q, fp:<p>, fq:<p>^<d>), not an eps ring".into(),
        ));
    }
    Ok(())
}

fn eps_base(k: &Field, want_square_zero: bool, descriptor: &str) -> Result<Field> {
    let ok = match k.nil_shape() {
        Some(NilShape::SquareZero { count: 2 }) => want_square_zero,
        Some(NilShape::Truncated { order: 3 }) => !want_square_zero,
        _ => false,
    };
    if !ok {
        return Err(Error::InvalidDescriptor(format!(
            "this command needs --field {descriptor}"
        )));
    }
    Ok(k.base().expect("nil ring has a base").clone())
}

fn symbol_output(
    command: &str,
    k: &Field,
    inputs: Vec<String>,
    at: String,
    value: String,
) -> Output {
    Output::Symbol(SymbolOutput {
        command: command.into(),
        field: k.descriptor(),
        inputs,
        at,
        value,
    })
}

fn execute(cli: &Cli) -> Result<Output> {
    let k = parse_field_descriptor(&cli.field)?;
    match &cli.cmd {
        Cmd::Divisor { expr } => {
            require_field(&k)?;
            let f = parse_ratfunc(expr, &k, 't')?;
            let div = Divisor::of(&f)?;
            Ok(Output::Div(DivisorOutput {
                command: "divisor".into(),
                field: k.descriptor(),
                inputs: vec![f.to_string()],
                divisor: div
                    .entries()
                    .iter()
                    .map(|(p, m)| DivisorEntry { place: p.to_string(), multiplicity: *m })
                    .collect(),
                degree: div.degree(),
            }))
        }
        Cmd::Tame { place, f, g } => {
            require_field(&k)?;
            let fv = parse_ratfunc(f, &k, 't')?;
            let gv = parse_ratfunc(g, &k, 't')?;
            let p = parse_place(place, &k, 't')?;
            let v = tame_symbol(&fv, &gv, &p)?;
            Ok(symbol_output(
                "tame",
                &k,
                vec![fv.to_string(), gv.to_string()],
                p.to_string(),
                v.value.to_string(),
            ))
        }
        Cmd::Degree { place, f } => {
            require_field(&k)?;
            let fv = parse_ratfunc(f, &k, 't')?;
            let p = parse_place(place, &k, 't')?;
            let v = degree_symbol(&fv, &p)?;
            Ok(symbol_output(
                "degree",
                &k,
                vec![fv.to_string()],
                p.to_string(),
                v.to_string(),
            ))
        }
        Cmd::Residue { place, f, g } => {
            require_field(&k)?;
            let fv = parse_ratfunc(f, &k, 't')?;
            let gv = parse_ratfunc(g, &k, 't')?;
            let p = parse_place(place, &k, 't')?;
            let v = crate::series::residue_fdg(&fv, &gv, &p)?;
            Ok(symbol_output(
                "residue",
                &k,
                vec![fv.to_string(), gv.to_string()],
                p.to_string(),
                v.to_string(),
            ))
        }
        Cmd::EpsPairing { place, f, g } => {
            let base = eps_base(&k, true, "eps2(<base>)")?;
            let fv = parse_ratfunc(f, &base, 't')?;
            let gv = parse_ratfunc(g, &base, 't')?;
            let p = parse_place(place, &base, 't')?;
            let v = residue_pairing(&fv, &gv, &p)?;
            Ok(symbol_output(
                "eps-pairing",
                &k,
                vec![fv.to_string(), gv.to_string()],
                p.to_string(),
                v.value.to_string(),
            ))
        }
        Cmd::Eps3Pairing { place, f, g } => {
            let base = eps_base(&k, false, "eps3(<base>)")?;
            let fv = parse_ratfunc(f, &base, 't')?;
            let gv = parse_ratfunc(g, &base, 't')?;
            let p = parse_place(place, &base, 't')?;
            let v = eps3_pairing(&fv, &gv, &p)?;
            Ok(symbol_output(
                "eps3-pairing",
                &k,
                vec![fv.to_string(), gv.to_string()],
                p.to_string(),
                v.value.to_string(),
            ))
        }
        Cmd::Parshin { flag, f1, f2, f3 } => {
            require_field(&k)?;
            let flag = parse_flag(flag, &k)?;
            let g1 = parse_ratfunc2(f1, &k)?;
            let g2 = parse_ratfunc2(f2, &k)?;
            let g3 = parse_ratfunc2(f3, &k)?;
            let v = crate::flags::parshin_symbol(&g1, &g2, &g3, &flag)?;
            Ok(symbol_output(
                "parshin",
                &k,
                vec![g1.to_string(), g2.to_string(), g3.to_string()],
                flag.to_string(),
                v.value.to_string(),
            ))
        }
        Cmd::CheckDegree { f } => {
            require_field(&k)?;
            let fv = parse_ratfunc(f, &k, 't')?;
            Ok(Output::Check(degree_sum_check(&fv)?))
        }
        Cmd::CheckWeil { f, g } => {
            require_field(&k)?;
            let fv = parse_ratfunc(f, &k, 't')?;
            let gv = parse_ratfunc(g, &k, 't')?;
            Ok(Output::Check(weil_check(&fv, &gv)?))
        }
        Cmd::CheckResidue { f, g } => {
            require_field(&k)?;
            let fv = parse_ratfunc(f, &k, 't')?;
            let gv = parse_ratfunc(g, &k, 't')?;
            Ok(Output::Check(residue_sum_check(&fv, &gv)?))
        }
        Cmd::CheckParshinPoints { curve, chart, f1, f2, f3 } => {
            require_field(&k)?;
            let curve = parse_curve(curve, &k)?;
            let chart = Chart::from_id(chart)?;
            let g1 = parse_ratfunc2(f1, &k)?;
            let g2 = parse_ratfunc2(f2, &k)?;
            let g3 = parse_ratfunc2(f3, &k)?;
            Ok(Output::Check(parshin_point_sum_check(
                &g1, &g2, &g3, &curve, chart,
            )?))
        }
        Cmd::CheckParshinCurves { point, f1, f2, f3 } => {
            require_field(&k)?;
            let (alpha, beta) = parse_point(point, &k)?;
            let g1 = parse_ratfunc2(f1, &k)?;
            let g2 = parse_ratfunc2(f2, &k)?;
            let g3 = parse_ratfunc2(f3, &k)?;
            Ok(Output::Check(parshin_curve_sum_check(
                &g1, &g2, &g3, &alpha, &beta,
            )?))
        }
    }
}

/// Runs the CLI on the given arguments and returns the process exit code:
/// 0 for success or a passing check, 1 for a failing check, 2 for usage or
/// computation errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", out.to_json()),
                Format::Text => println!("{}", out.to_text()),
            }
            if out.pass() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&ErrorOutput { error: e.to_string() })
                        .expect("serialization cannot fail")
                ),
                Format::Text => eprintln!("error: {e}"),
            }
            2
        }
    }
}

//! Request files: JSON documents with exact string coefficients.
//!
//! A file holds one request object or an array of them. Coefficients are
//! strings `"p/q"`; JSON numbers are refused so that no floating-point value
//! can enter a computation. Malformed documents are reported with the line
//! and column serde_json points at.

use indexmap::IndexMap;
use leviflat::algebra::gaussian::parse_rational;
use leviflat::algebra::poly::roster;
use leviflat::{ExactComplex, Monomial, Poly};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::de::{self, Deserializer};
use serde::Deserialize;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct InputError(pub String);

fn input_err(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Intersect,
    Pencil,
    Segre,
    Leviflat,
    Invariance,
    Lion,
    Analyze,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Intersect => "intersect",
            Command::Pencil => "pencil",
            Command::Segre => "segre",
            Command::Leviflat => "leviflat",
            Command::Invariance => "invariance",
            Command::Lion => "lion",
            Command::Analyze => "analyze",
        }
    }
}

/// A rational read from a JSON string.
#[derive(Clone, Debug, PartialEq)]
struct Exact(BigRational);

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Exact).map_err(de::Error::custom)
    }
}

/// A tolerance: `"p/q"` or an exact decimal such as `"1e-9"`.
#[derive(Clone, Debug, PartialEq)]
struct Tolerance(BigRational);

impl<'de> Deserialize<'de> for Tolerance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_tolerance(&s).map(Tolerance).map_err(|e| de::Error::custom(e.0))
    }
}

/// Parses a positive tolerance given as `p/q` or as a decimal with an
/// optional exponent; decimals are converted exactly.
pub fn parse_tolerance(s: &str) -> Result<BigRational, InputError> {
    let s = s.trim();
    let value = if s.contains(['e', 'E', '.']) {
        parse_decimal(s).ok_or_else(|| input_err(format!("malformed tolerance `{s}`")))?
    } else {
        parse_rational(s).map_err(|e| input_err(format!("malformed tolerance: {e}")))?
    };
    if value <= BigRational::zero() {
        return Err(input_err(format!("tolerance must be positive, got `{s}`")));
    }
    Ok(value)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac}").parse().ok()?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10u32);
    let scale = ten.pow(shift.unsigned_abs());
    Some(if shift >= 0 {
        BigRational::from_integer(digits * scale)
    } else {
        BigRational::new(digits, scale)
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    re: Exact,
    #[serde(default)]
    im: Option<Exact>,
}

impl RawComplex {
    fn value(self) -> ExactComplex {
        Complex::new(self.re.0, self.im.map_or_else(BigRational::zero, |x| x.0))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coeff: RawComplex,
    exps: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Affine,
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub kind: FormKind,
    /// Polynomial names, one coefficient per variable of their roster.
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WebSpec {
    /// The plane coordinates `(z, w)` of the web `a dw^2 + b dw dz + c dz^2`.
    pub coordinates: [String; 2],
    pub a: String,
    pub b: String,
    pub c: String,
    /// Leaves `w = g(z)`, as polynomial names.
    pub leaves: Vec<String>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    seed: Option<u64>,
    samples: Option<usize>,
    tol: Option<Tolerance>,
    truncation: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRequest {
    schema: u32,
    #[serde(default)]
    name: Option<String>,
    command: Command,
    #[serde(default)]
    variables: Option<Vec<String>>,
    #[serde(default)]
    conjugate_pairs: Vec<[String; 2]>,
    #[serde(default)]
    real_pairs: Vec<[String; 2]>,
    #[serde(default)]
    polynomials: IndexMap<String, Vec<RawTerm>>,
    /// Per-polynomial rosters overriding `variables`.
    #[serde(default)]
    rosters: IndexMap<String, Vec<String>>,
    #[serde(default)]
    points: IndexMap<String, Vec<RawComplex>>,
    #[serde(default)]
    matrix: Option<Vec<Vec<Exact>>>,
    #[serde(default)]
    family: Option<Vec<String>>,
    #[serde(default)]
    form: Option<FormSpec>,
    #[serde(default)]
    candidate: Vec<String>,
    #[serde(default)]
    web: Option<WebSpec>,
    #[serde(default)]
    options: RawOptions,
}

/// Run options; every field has a default.
#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub seed: u64,
    pub samples: usize,
    pub tol: BigRational,
    pub truncation: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            samples: 200,
            tol: BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64)),
            truncation: None,
        }
    }
}

/// Option values given on the command line; they win over the file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub tol: Option<BigRational>,
    pub truncation: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisRequest {
    pub name: Option<String>,
    pub command: Command,
    pub variables: Vec<String>,
    pub conjugate_pairs: Vec<(String, String)>,
    pub real_pairs: Vec<(String, String)>,
    pub polynomials: IndexMap<String, Poly>,
    pub points: IndexMap<String, Vec<ExactComplex>>,
    pub matrix: Option<Vec<Vec<BigRational>>>,
    pub family: Vec<String>,
    pub form: Option<FormSpec>,
    pub candidate: Vec<String>,
    pub web: Option<WebSpec>,
    pub options: Options,
}

impl AnalysisRequest {
    pub fn poly(&self, name: &str) -> Result<&Poly, InputError> {
        self.polynomials
            .get(name)
            .ok_or_else(|| input_err(format!("{} request needs a polynomial named `{name}`", self.command.as_str())))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(s) = o.seed {
            self.options.seed = s;
        }
        if let Some(s) = o.samples {
            self.options.samples = s;
        }
        if let Some(t) = &o.tol {
            self.options.tol = t.clone();
        }
        if o.truncation.is_some() {
            self.options.truncation = o.truncation;
        }
    }
}

/// Parses one request object or an array of them.
pub fn parse_input(text: &str) -> Result<Vec<AnalysisRequest>, InputError> {
    let batch = text.trim_start().starts_with('[');
    let raws: Vec<RawRequest> = if batch {
        serde_json::from_str(text)
    } else {
        serde_json::from_str(text).map(|r| vec![r])
    }
    .map_err(|e| input_err(format!("malformed request: {e}")))?;
    raws.into_iter()
        .enumerate()
        .map(|(i, r)| {
            validate(r).map_err(|e| if batch { input_err(format!("request {i}: {e}")) } else { e })
        })
        .collect()
}

fn pairs(v: Vec<[String; 2]>) -> Vec<(String, String)> {
    v.into_iter().map(|[a, b]| (a, b)).collect()
}

fn check_distinct(names: &[String], what: &str) -> Result<(), InputError> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(input_err(format!("{what} lists `{n}` twice")));
        }
    }
    Ok(())
}

fn validate(r: RawRequest) -> Result<AnalysisRequest, InputError> {
    if r.schema != SCHEMA_VERSION {
        return Err(input_err(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            r.schema
        )));
    }
    let needs_roster = r.command != Command::Lion;
    let variables = match r.variables {
        Some(v) => v,
        None if needs_roster => return Err(input_err("missing variable roster (`variables`)")),
        None => Vec::new(),
    };
    check_distinct(&variables, "variable roster")?;
    let conjugate_pairs = pairs(r.conjugate_pairs);
    let real_pairs = pairs(r.real_pairs);
    if !real_pairs.is_empty() && !conjugate_pairs.is_empty() && real_pairs.len() != conjugate_pairs.len() {
        return Err(input_err("`real_pairs` and `conjugate_pairs` differ in length"));
    }
    for (a, b) in &real_pairs {
        for v in [a, b] {
            if !variables.contains(v) {
                return Err(input_err(format!("real pair names `{v}`, which is not in the roster")));
            }
        }
    }
    if real_pairs.is_empty() {
        for (z, w) in &conjugate_pairs {
            for v in [z, w] {
                if !variables.contains(v) {
                    return Err(input_err(format!("conjugate pair names `{v}`, which is not in the roster")));
                }
            }
        }
    }
    for name in r.rosters.keys() {
        if !r.polynomials.contains_key(name) {
            return Err(input_err(format!("roster given for unknown polynomial `{name}`")));
        }
    }

    let mut polynomials = IndexMap::new();
    for (name, terms) in r.polynomials {
        let vars = r.rosters.get(&name).cloned().unwrap_or_else(|| variables.clone());
        check_distinct(&vars, &format!("roster of `{name}`"))?;
        let rost = roster(&vars);
        let mut p = Poly::zero(rost.clone());
        for (k, t) in terms.into_iter().enumerate() {
            if t.exps.len() != vars.len() {
                return Err(input_err(format!(
                    "polynomial `{name}`, term {k}: {} exponents for a roster of {} variables",
                    t.exps.len(),
                    vars.len()
                )));
            }
            p = &p + &Poly::from_terms(rost.clone(), [(Monomial::new(t.exps), t.coeff.value())]);
        }
        polynomials.insert(name, p);
    }

    let points = r
        .points
        .into_iter()
        .map(|(k, v)| (k, v.into_iter().map(RawComplex::value).collect()))
        .collect();
    let matrix = r.matrix.map(|m| m.into_iter().map(|row| row.into_iter().map(|x| x.0).collect()).collect());

    let family = r.family.unwrap_or_else(|| polynomials.keys().cloned().collect());
    let mut referenced: Vec<&String> = family.iter().chain(&r.candidate).collect();
    if let Some(f) = &r.form {
        referenced.extend(&f.coefficients);
    }
    if let Some(w) = &r.web {
        referenced.extend([&w.a, &w.b, &w.c]);
        referenced.extend(&w.leaves);
    }
    if let Some(missing) = referenced.into_iter().find(|n| !polynomials.contains_key(*n)) {
        return Err(input_err(format!("reference to undefined polynomial `{missing}`")));
    }

    let defaults = Options::default();
    let options = Options {
        seed: r.options.seed.unwrap_or(defaults.seed),
        samples: r.options.samples.unwrap_or(defaults.samples),
        tol: r.options.tol.map_or(defaults.tol, |t| t.0),
        truncation: r.options.truncation,
    };

    Ok(AnalysisRequest {
        name: r.name,
        command: r.command,
        variables,
        conjugate_pairs,
        real_pairs,
        polynomials,
        points,
        matrix,
        family,
        form: r.form,
        candidate: r.candidate,
        web: r.web,
        options,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_tolerances_are_exact() {
        let t = parse_tolerance("1e-9").unwrap();
        assert_eq!(t, BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64)));
        assert_eq!(parse_tolerance("2.5e-1").unwrap(), BigRational::new(BigInt::one(), BigInt::from(4)));
        assert_eq!(parse_tolerance("1/8").unwrap(), BigRational::new(BigInt::one(), BigInt::from(8)));
        assert!(parse_tolerance("0").is_err());
        assert!(parse_tolerance("1e-x").is_err());
    }

    #[test]
    fn exponent_arity_is_checked() {
        let text = r#"{"schema": 1, "command": "segre", "variables": ["z", "w"],
            "polynomials": {"phi": [{"coeff": {"re": "1"}, "exps": [1]}]}}"#;
        let e = parse_input(text).unwrap_err();
        assert!(e.0.contains("term 0"), "{e}");
    }
}

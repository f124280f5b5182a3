//! JSON problem files and report serialization. Rationals travel as strings.

use crate::algebraic::{ComplexBox, Interval};
use crate::algebraic::AlgebraicNumber;
use crate::arith::{format_rational, parse_rational, Rational, UnivariatePoly};
use crate::classify::{Caveat, CoordinateSystem, FibrationWitness, Provenance, Verdict, VerdictKind, WitnessPoint};
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, ZMatrix};
use crate::symbolic::{
    parse_rational_function, CoeffRing, GroupEndomorphism, MPoly, MultiRationalFunction, OrbitPoint, TorusCoords, VarSpace,
};
use crate::verify::{DensityOutcome, DensityReport, GrowthReport, GrowthVerdict, InvariantCheck, RankMethod};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub bound: u32,
    pub degree: u32,
    pub steps: usize,
    /// Seed for the randomized rank tests; `None` keeps the library default.
    pub seed: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Self { bound: 20, degree: 2, steps: 40, seed: None }
    }
}

/// A validated problem: square matrices, at least one factor, nonsingular.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub endomorphism: GroupEndomorphism,
    pub options: Options,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Int(i64),
    Text(String),
}

#[derive(Deserialize, Default)]
struct RawOptions {
    bound: Option<u32>,
    degree: Option<u32>,
    steps: Option<usize>,
    seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    additive: Option<Vec<Vec<RawNumber>>>,
    torus: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    options: RawOptions,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn square_rows<T>(rows: &[Vec<T>], what: &str) -> Result<()> {
    let n = rows.len();
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: r.len() }).map_err(|e| Error::Parse(format!("{what}: {e}")));
    }
    Ok(())
}

impl ProblemSpec {
    /// Parses and validates a problem file. Shape problems are parse errors;
    /// singular matrices are dominance violations.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSpec = serde_json::from_str(text).map_err(parse_err)?;
        if raw.additive.is_none() && raw.torus.is_none() {
            return Err(Error::Parse("at least one of \"additive\" and \"torus\" is required".into()));
        }
        let additive = match raw.additive {
            Some(rows) => {
                square_rows(&rows, "additive")?;
                let rows = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| match x {
                                RawNumber::Int(n) => Ok(Rational::from_integer((*n).into())),
                                RawNumber::Text(s) => parse_rational(s),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                if rows.is_empty() { QMatrix::zeros(0, 0) } else { QMatrix::from_rows(rows)? }
            }
            None => QMatrix::zeros(0, 0),
        };
        let torus = match raw.torus {
            Some(rows) => {
                square_rows(&rows, "torus")?;
                if rows.is_empty() { ZMatrix::zeros(0, 0) } else { ZMatrix::from_i64(&rows)? }
            }
            None => ZMatrix::zeros(0, 0),
        };
        let d = Options::default();
        let options = Options {
            bound: raw.options.bound.unwrap_or(d.bound),
            degree: raw.options.degree.unwrap_or(d.degree),
            steps: raw.options.steps.unwrap_or(d.steps),
            seed: raw.options.seed.or(d.seed),
        };
        Ok(Self { endomorphism: GroupEndomorphism::new(additive, torus)?, options })
    }

    pub fn space(&self) -> VarSpace {
        self.endomorphism.space()
    }
}

fn rational_strings(v: &[Rational]) -> Value {
    Value::from(v.iter().map(format_rational).collect::<Vec<_>>())
}

/// `[[coefficient, exponents], ...]` in decreasing monomial order. Over an
/// extension the coefficient is the list of its coordinates.
pub fn mpoly_to_json(p: &MPoly) -> Value {
    let ring = p.ring();
    Value::from(
        p.terms()
            .rev()
            .map(|(m, c)| {
                let coef = match ring.as_rational(c) {
                    Some(q) => Value::from(format_rational(&q)),
                    None => rational_strings(c),
                };
                json!([coef, m.0])
            })
            .collect::<Vec<_>>(),
    )
}

pub fn rational_function_to_json(f: &MultiRationalFunction) -> Value {
    json!({ "num": mpoly_to_json(f.numerator()), "den": mpoly_to_json(f.denominator()) })
}

pub fn algebraic_to_json(a: &AlgebraicNumber) -> Value {
    let b = a.isolation().to_array();
    json!({
        "minpoly": rational_strings(a.minpoly().coeffs()),
        "box": rational_strings(&b),
    })
}

fn string_list(v: &Value, what: &str) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be a list")))?
        .iter()
        .map(|x| match x {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(|n| Rational::from_integer(n.into()))
                .ok_or_else(|| Error::Parse(format!("{what}: expected an integer"))),
            _ => Err(Error::Parse(format!("{what}: expected a number or string"))),
        })
        .collect()
}

pub fn algebraic_from_json(v: &Value) -> Result<AlgebraicNumber> {
    let minpoly = UnivariatePoly::from_coeffs(string_list(&v["minpoly"], "minpoly")?);
    let b = string_list(&v["box"], "box")?;
    let [re_lo, re_hi, im_lo, im_hi]: [Rational; 4] =
        b.try_into().map_err(|_| Error::Parse("box needs four entries".into()))?;
    let isolation = ComplexBox { re: Interval::new(re_lo, re_hi), im: Interval::new(im_lo, im_hi) };
    AlgebraicNumber::new(minpoly, isolation)
}

fn caveat_to_json(c: &Caveat) -> Value {
    match c {
        Caveat::EigenvaluesIndependentUpToBound(b) => json!({"kind": "EigenvaluesIndependentUpToBound", "bound": b}),
        Caveat::WitnessIndependentUpToBound(b) => json!({"kind": "WitnessIndependentUpToBound", "bound": b}),
    }
}

fn caveat_from_json(v: &Value) -> Result<Caveat> {
    let bound = v["bound"].as_u64().and_then(|b| u32::try_from(b).ok()).ok_or_else(|| Error::Parse("caveat bound".into()))?;
    match v["kind"].as_str() {
        Some("EigenvaluesIndependentUpToBound") => Ok(Caveat::EigenvaluesIndependentUpToBound(bound)),
        Some("WitnessIndependentUpToBound") => Ok(Caveat::WitnessIndependentUpToBound(bound)),
        _ => Err(Error::Parse(format!("unknown caveat {v}"))),
    }
}

fn coordinate_name(c: CoordinateSystem) -> &'static str {
    match c {
        CoordinateSystem::JordanCoordinates => "jordan",
        CoordinateSystem::OriginalCoordinates => "original",
    }
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    let caveats: Vec<Value> = v.caveats.iter().map(caveat_to_json).collect();
    match &v.kind {
        VerdictKind::Fibration(w) => {
            let field: Vec<Value> = w.function.ring().gens().iter().map(|g| rational_strings(g.coeffs())).collect();
            json!({
                "kind": "fibration",
                "provenance": v.provenance.name(),
                "witness": w.function.to_string(),
                "function": rational_function_to_json(&w.function),
                "field": field,
                "block_generators": w.generators.iter().map(algebraic_to_json).collect::<Vec<_>>(),
                "coordinates": "original",
                "caveats": caveats,
            })
        }
        VerdictKind::Dense(p) => json!({
            "kind": "dense",
            "provenance": v.provenance.name(),
            "witness": {
                "additive": rational_strings(&p.additive),
                "torus": p.torus,
                "coordinate_system": coordinate_name(p.coordinate_system),
            },
            "caveats": caveats,
        }),
    }
}

/// Reads a verdict for a problem on `space`. Fibration functions are read
/// from the `witness` string over the ring named by `field`.
pub fn verdict_from_json(v: &Value, space: VarSpace) -> Result<Verdict> {
    let provenance = v["provenance"]
        .as_str()
        .and_then(Provenance::from_name)
        .ok_or_else(|| Error::Parse("missing or unknown provenance".into()))?;
    let caveats = match &v["caveats"] {
        Value::Null => Vec::new(),
        Value::Array(a) => a.iter().map(caveat_from_json).collect::<Result<_>>()?,
        _ => return Err(Error::Parse("caveats must be a list".into())),
    };
    let kind = match v["kind"].as_str() {
        Some("fibration") => {
            let gens = match &v["field"] {
                Value::Null => Vec::new(),
                Value::Array(a) => a
                    .iter()
                    .map(|g| Ok(UnivariatePoly::from_coeffs(string_list(g, "field generator")?)))
                    .collect::<Result<Vec<_>>>()?,
                _ => return Err(Error::Parse("field must be a list".into())),
            };
            let ring = if gens.is_empty() { CoeffRing::rationals() } else { CoeffRing::new(gens)? };
            let text = v["witness"].as_str().ok_or_else(|| Error::Parse("fibration witness must be a string".into()))?;
            let function = parse_rational_function(text, space, &ring)?;
            let generators = match &v["block_generators"] {
                Value::Null => Vec::new(),
                Value::Array(a) => a.iter().map(algebraic_from_json).collect::<Result<_>>()?,
                _ => return Err(Error::Parse("block_generators must be a list".into())),
            };
            VerdictKind::Fibration(FibrationWitness { function, generators })
        }
        Some("dense") => {
            let w = &v["witness"];
            let additive = match &w["additive"] {
                Value::Null => Vec::new(),
                a => string_list(a, "additive witness")?,
            };
            let torus = match &w["torus"] {
                Value::Null => Vec::new(),
                Value::Array(a) => a
                    .iter()
                    .map(|x| x.as_u64().ok_or_else(|| Error::Parse("torus witness entries must be primes".into())))
                    .collect::<Result<_>>()?,
                _ => return Err(Error::Parse("torus witness must be a list".into())),
            };
            let coordinate_system = match w["coordinate_system"].as_str() {
                None | Some("original") => CoordinateSystem::OriginalCoordinates,
                Some("jordan") => CoordinateSystem::JordanCoordinates,
                Some(other) => return Err(Error::Parse(format!("unknown coordinate system {other}"))),
            };
            if additive.len() != space.additive || torus.len() != space.torus {
                return Err(Error::Parse("witness point does not match the problem dimensions".into()));
            }
            VerdictKind::Dense(WitnessPoint { additive, torus, coordinate_system })
        }
        _ => return Err(Error::Parse("kind must be \"dense\" or \"fibration\"".into())),
    };
    Ok(Verdict { kind, provenance, caveats })
}

/// Parses a comma-separated list of rationals, such as `1,-2/3,5`.
pub fn parse_point(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

/// Splits a flat coordinate list into additive and torus parts.
pub fn split_point(coords: Vec<Rational>, space: VarSpace) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if coords.len() != space.additive + space.torus {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, the group has dimension {}",
            coords.len(),
            space.additive + space.torus
        )));
    }
    let mut additive = coords;
    let torus = additive.split_off(space.additive);
    Ok((additive, torus))
}

/// A witness point in original coordinates from a flat coordinate list.
/// Torus coordinates must be positive integers.
pub fn witness_point_from(coords: Vec<Rational>, space: VarSpace) -> Result<WitnessPoint> {
    let (additive, torus) = split_point(coords, space)?;
    let torus = torus
        .iter()
        .map(|q| {
            q.is_integer()
                .then(|| u64::try_from(q.to_integer()).ok())
                .flatten()
                .filter(|&p| p > 0)
                .ok_or_else(|| Error::Parse(format!("torus coordinate {q} must be a positive integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessPoint { additive, torus, coordinate_system: CoordinateSystem::OriginalCoordinates })
}

/// Torus coordinates are listed as values when they expand to a reasonable
/// size, otherwise as exponents over the listed primes.
pub fn orbit_point_to_json(p: &OrbitPoint) -> Value {
    let torus = match (p.torus_values(), &p.torus) {
        (Some(v), _) => rational_strings(&v),
        (None, TorusCoords::Exponents { primes, exps }) => json!({
            "primes": primes,
            "exponents": exps.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
        (None, TorusCoords::Values(v)) => rational_strings(v),
    };
    json!({ "additive": rational_strings(&p.additive), "torus": torus })
}

pub fn density_report_to_json(r: &DensityReport) -> Value {
    let (outcome, poly) = match &r.outcome {
        DensityOutcome::FullRank => ("FullRank", Value::Null),
        DensityOutcome::VanishingPolynomial(p) => ("VanishingPolynomial", json!({"text": p.to_string(), "terms": mpoly_to_json(p)})),
        DensityOutcome::Inconclusive => ("Inconclusive", Value::Null),
    };
    json!({
        "degree": r.degree,
        "steps": r.steps,
        "outcome": outcome,
        "vanishing_polynomial": poly,
        "matrix_rank": r.matrix_rank,
        "monomial_count": r.monomial_count,
        "method": match r.method { RankMethod::Exact => "exact", RankMethod::Modular => "modular" },
    })
}

pub fn growth_report_to_json(r: &GrowthReport) -> Value {
    let (verdict, at) = match r.verdict {
        GrowthVerdict::LinearlyBounded => ("LinearlyBounded", Value::Null),
        GrowthVerdict::ExceedsLinear(n) => ("ExceedsLinear", Value::from(n)),
    };
    json!({
        "steps": r.steps,
        "max_ratio": format_rational(&r.max_ratio),
        "verdict": verdict,
        "first_violation": at,
        "cyclotomic_factor": r.cyclotomic_factor,
        "norms": r.norms.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

pub fn invariant_check_to_json(c: &InvariantCheck) -> Value {
    json!({
        "holds": c.holds,
        "certificate": c.certificate.to_string(),
        "certificate_terms": mpoly_to_json(&c.certificate),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;

    #[test]
    fn spec_parsing() {
        let s = ProblemSpec::from_json(r#"{"additive": [["2","0"],["0","4"]]}"#).unwrap();
        assert_eq!(s.space(), VarSpace::new(2, 0));
        assert_eq!(s.options, Options::default());
        let s = ProblemSpec::from_json(r#"{"torus": [[0,-1],[1,0]], "options": {"steps": 12}}"#).unwrap();
        assert_eq!(s.options.steps, 12);
        assert!(matches!(ProblemSpec::from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(ProblemSpec::from_json("{}"), Err(Error::Parse(_))));
        assert!(matches!(ProblemSpec::from_json(r#"{"additive": [["1","2"]]}"#), Err(Error::Parse(_))));
        assert!(matches!(
            ProblemSpec::from_json(r#"{"additive": [["1","1"],["1","1"]]}"#),
            Err(Error::DominanceViolation(_))
        ));
    }

    #[test]
    fn points() {
        let c = parse_point("1, -2/3,5").unwrap();
        let (a, t) = split_point(c, VarSpace::new(1, 2)).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(t.len(), 2);
        assert!(split_point(parse_point("1").unwrap(), VarSpace::new(1, 1)).is_err());
        let w = witness_point_from(parse_point("1/2,3").unwrap(), VarSpace::new(1, 1)).unwrap();
        assert_eq!(w.torus, vec![3]);
        assert!(witness_point_from(parse_point("1,-3").unwrap(), VarSpace::new(1, 1)).is_err());
        let p = OrbitPoint::new(vec![Rational::from_integer(1.into())], vec![Rational::from_integer(2.into())]).unwrap();
        assert_eq!(orbit_point_to_json(&p), json!({"additive": ["1"], "torus": ["2"]}));
    }

    #[test]
    fn verdict_round_trip() {
        for text in [
            r#"{"additive": [["2","0"],["0","4"]]}"#,
            r#"{"additive": [["2","0"],["0","3"]]}"#,
            r#"{"torus": [[0,-1],[1,0]]}"#,
            r#"{"additive": [["0","2"],["1","0"]]}"#,
            r#"{"additive": [["2"]], "torus": [[2]]}"#,
        ] {
            let s = ProblemSpec::from_json(text).unwrap();
            let v = classify(&s.endomorphism, 20).unwrap();
            let j = verdict_to_json(&v);
            let back = verdict_from_json(&j, s.space()).unwrap();
            assert_eq!(verdict_to_json(&back), j, "{text}");
        }
    }

    #[test]
    fn examples_render() {
        let s = ProblemSpec::from_json(r#"{"additive": [["2","0"],["0","4"]]}"#).unwrap();
        let j = verdict_to_json(&classify(&s.endomorphism, 20).unwrap());
        assert_eq!(j["kind"], "fibration");
        assert_eq!(j["witness"], "x1^2/x2");
        let s = ProblemSpec::from_json(r#"{"additive": [["2","0"],["0","3"]]}"#).unwrap();
        let j = verdict_to_json(&classify(&s.endomorphism, 20).unwrap());
        assert_eq!(j["kind"], "dense");
        assert_eq!(j["witness"]["additive"], json!(["1", "1"]));
    }
}

//! JSON formats.
//!
//! * Matrices: a `3x3` array of strings such as `"1/2"` or `"1/3-2i"`;
//!   integers may be given as numbers.
//! * Pairs: `{"A": matrix, "B": matrix}`.
//! * Points: an object with keys `t1, tm1, t2, tm2, t3, tm3, t4, tm4, t5`.
//!   Exact values are strings (or integers); approximate values are numbers,
//!   or `[re, im]` arrays.

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::linalg::{LinalgError, SL3Pair};
use crate::poly::{CoordVar, NVARS};
use crate::scalar::ExactComplex;
use crate::variety::CharPoint;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A point read from JSON, exact when every value is.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPoint {
    Exact(CharPoint),
    Approx(CharPoint<Complex64>),
}

impl AnyPoint {
    pub fn to_approx(&self) -> CharPoint<Complex64> {
        match self {
            AnyPoint::Exact(p) => p.to_approx(),
            AnyPoint::Approx(p) => p.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyPoint::Exact(p) => exact_point_to_json(p),
            AnyPoint::Approx(p) => approx_point_to_json(p),
        }
    }
}

/// One line of input to commands that take either pairs or points.
#[derive(Clone, Debug)]
pub enum Input {
    Pair(SL3Pair),
    Point(AnyPoint),
}

/// Parses and checks a pair; a determinant other than one is reported as
/// [`IoError::Linalg`].
pub fn parse_pair(text: &str) -> Result<SL3Pair, IoError> {
    let pair: SL3Pair = serde_json::from_str(text)?;
    pair.check()?;
    Ok(pair)
}

pub fn pair_to_json(pair: &SL3Pair) -> Value {
    serde_json::to_value(pair).expect("pairs serialize")
}

pub fn exact_point_to_json(pt: &CharPoint) -> Value {
    let mut m = Map::new();
    for v in CoordVar::ALL {
        m.insert(v.key().to_string(), Value::String(pt[v].to_string()));
    }
    Value::Object(m)
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

pub fn complex_to_json(z: Complex64) -> Value {
    if z.im == 0.0 {
        float(z.re)
    } else {
        json!([float(z.re), float(z.im)])
    }
}

pub fn approx_point_to_json(pt: &CharPoint<Complex64>) -> Value {
    let mut m = Map::new();
    for v in CoordVar::ALL {
        m.insert(v.key().to_string(), complex_to_json(pt[v]));
    }
    Value::Object(m)
}

enum Coord {
    Exact(ExactComplex),
    Approx(Complex64),
}

fn parse_coord(key: &str, v: &Value) -> Result<Coord, IoError> {
    let bad = || IoError::Format(format!("bad value for {key}: {v}"));
    match v {
        Value::String(s) => s.parse().map(Coord::Exact).map_err(|_| bad()),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Coord::Exact(ExactComplex::from_int(i))),
            None => n.as_f64().map(|x| Coord::Approx(Complex64::new(x, 0.0))).ok_or_else(bad),
        },
        Value::Array(parts) if parts.len() == 2 => {
            let re = parts[0].as_f64().ok_or_else(bad)?;
            let im = parts[1].as_f64().ok_or_else(bad)?;
            Ok(Coord::Approx(Complex64::new(re, im)))
        }
        _ => Err(bad()),
    }
}

pub fn point_from_value(value: &Value) -> Result<AnyPoint, IoError> {
    let obj = value.as_object().ok_or_else(|| IoError::Format("a point must be a JSON object".into()))?;
    if let Some(extra) = obj.keys().find(|k| CoordVar::from_key(k).is_none()) {
        return Err(IoError::Format(format!("unknown coordinate {extra:?}")));
    }
    let mut coords = Vec::with_capacity(NVARS);
    for v in CoordVar::ALL {
        let value = obj.get(v.key()).ok_or_else(|| IoError::Format(format!("missing coordinate {}", v.key())))?;
        coords.push(parse_coord(v.key(), value)?);
    }
    if coords.iter().all(|c| matches!(c, Coord::Exact(_))) {
        let exact: Vec<ExactComplex> = coords
            .into_iter()
            .map(|c| match c {
                Coord::Exact(z) => z,
                Coord::Approx(_) => unreachable!(),
            })
            .collect();
        return Ok(AnyPoint::Exact(CharPoint::new(exact.try_into().expect("nine coordinates"))));
    }
    let approx: Vec<Complex64> = coords
        .into_iter()
        .map(|c| match c {
            Coord::Exact(z) => crate::scalar::Scalar::to_approx(&z),
            Coord::Approx(z) => z,
        })
        .collect();
    Ok(AnyPoint::Approx(CharPoint::new(approx.try_into().expect("nine coordinates"))))
}

pub fn parse_point(text: &str) -> Result<AnyPoint, IoError> {
    point_from_value(&serde_json::from_str(text)?)
}

/// A pair (object with `"A"`) or a point (object with `"t1"`).
pub fn parse_input(text: &str) -> Result<Input, IoError> {
    let value: Value = serde_json::from_str(text)?;
    if value.get("A").is_some() || value.get("B").is_some() {
        let pair: SL3Pair = serde_json::from_value(value)?;
        pair.check()?;
        Ok(Input::Pair(pair))
    } else {
        point_from_value(&value).map(Input::Point)
    }
}

/// Splits a stream into JSON values: one per non-blank line, or a single
/// top-level array of values.
pub fn split_json_stream(text: &str) -> Result<Vec<String>, IoError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let values: Vec<Value> = serde_json::from_str(trimmed)?;
        return Ok(values.iter().map(Value::to_string).collect());
    }
    Ok(text.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::to_string).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_pair_from, Matrix3, DEFAULT_COMPLEXITY};
    use crate::variety::chi;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pair_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pair = random_pair_from(&mut rng, DEFAULT_COMPLEXITY);
        let text = pair_to_json(&pair).to_string();
        assert_eq!(parse_pair(&text).unwrap(), pair);
    }

    #[test]
    fn integer_shorthand_and_identity() {
        let text = r#"{"A": [[1,0,0],[0,1,0],[0,0,1]], "B": [["1","0","0"],["0","1","0"],["0","0","1"]]}"#;
        let pair = parse_pair(text).unwrap();
        assert_eq!(pair.a, Matrix3::identity());
        let pt = chi(&pair);
        assert_eq!(exact_point_to_json(&pt)["t5"], json!("3"));
    }

    #[test]
    fn non_unit_determinant_is_rejected() {
        let text = r#"{"A": [[2,0,0],[0,1,0],[0,0,1]], "B": [[1,0,0],[0,1,0],[0,0,1]]}"#;
        let err = parse_pair(text).unwrap_err();
        assert!(matches!(err, IoError::Linalg(LinalgError::NotUnimodular { which: "A", .. })));
    }

    #[test]
    fn points_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pt = chi(&random_pair_from(&mut rng, DEFAULT_COMPLEXITY));
        let text = exact_point_to_json(&pt).to_string();
        assert_eq!(parse_point(&text).unwrap(), AnyPoint::Exact(pt.clone()));
        let approx = pt.to_approx();
        let text = approx_point_to_json(&approx).to_string();
        match parse_point(&text).unwrap() {
            AnyPoint::Approx(back) => assert_eq!(back, approx),
            AnyPoint::Exact(_) => {
                // every coordinate happened to be an integer
                assert!(approx.coords.iter().all(|z| z.im == 0.0 && z.re.fract() == 0.0));
            }
        }
    }

    #[test]
    fn malformed_points() {
        assert!(parse_point(r#"{"t1": "1"}"#).is_err());
        assert!(parse_point(r#"[1, 2]"#).is_err());
        let mut v = exact_point_to_json(&CharPoint::constant(ExactComplex::from_int(3)));
        v["t6"] = json!("1");
        assert!(point_from_value(&v).is_err());
    }

    #[test]
    fn input_detection_and_streams() {
        let pt = exact_point_to_json(&CharPoint::constant(ExactComplex::from_int(3))).to_string();
        assert!(matches!(parse_input(&pt).unwrap(), Input::Point(AnyPoint::Exact(_))));
        let pair = r#"{"A": [[1,0,0],[0,1,0],[0,0,1]], "B": [[1,0,0],[0,1,0],[0,0,1]]}"#;
        assert!(matches!(parse_input(pair).unwrap(), Input::Pair(_)));
        assert_eq!(split_json_stream(&format!("{pt}\n\n{pair}\n")).unwrap().len(), 2);
        assert_eq!(split_json_stream(&format!("[{pt}, {pair}]")).unwrap().len(), 2);
    }
}

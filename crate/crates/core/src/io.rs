//! JSON interchange: integers as numbers inside the 53-bit safe range and as
//! strings beyond it, rationals as `"p/q"` strings, and the file formats for
//! complexes, point sets and PL maps.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::{Integer, Rational, RationalPoint};

const SAFE: i64 = 1 << 53;

pub fn integer_to_json(x: &Integer) -> Value {
    match i64::try_from(x) {
        Ok(v) if (-SAFE..=SAFE).contains(&v) => Value::from(v),
        _ => Value::from(x.to_string()),
    }
}

pub fn integer_from_json(v: &Value) -> std::result::Result<Integer, String> {
    match v {
        Value::Number(n) => n.as_i64().map(Integer::from).ok_or_else(|| format!("{n} is not an integer")),
        Value::String(s) => s.trim().parse().map_err(|_| format!("{s:?} is not an integer")),
        other => Err(format!("expected an integer, found {other}")),
    }
}

pub fn rational_to_string(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad rational {s:?}")))?;
            let d: Integer = d.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad rational {s:?}")))?;
            if d == Integer::from(0) {
                return Err(Error::InvalidArgument(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(t.parse().map_err(|_| Error::InvalidArgument(format!("bad rational {s:?}")))?),
    };
    Ok(parsed)
}

/// `#[serde(with = "integer")]` for a single [`Integer`].
pub mod integer {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
        integer_to_json(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Integer, D::Error> {
        integer_from_json(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// `#[serde(with = "integer_list")]` for `Vec<Integer>`.
pub mod integer_list {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(integer_to_json))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Integer>, D::Error> {
        Vec::<Value>::deserialize(d)?.iter().map(|v| integer_from_json(v).map_err(D::Error::custom)).collect()
    }
}

/// `#[serde(with = "rational")]` for a single [`Rational`].
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        parse_rational(&String::deserialize(d)?).map_err(D::Error::custom)
    }
}

fn parse_point(raw: &[String]) -> Result<RationalPoint> {
    Ok(RationalPoint::new(raw.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?))
}

fn point_strings(p: &RationalPoint) -> Vec<String> {
    p.coords().iter().map(rational_to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub num_vertices: usize,
    pub maximal_simplices: Vec<Vec<usize>>,
}

impl ComplexFile {
    pub fn from_complex(k: &Complex) -> Self {
        ComplexFile {
            num_vertices: k.num_vertices(),
            maximal_simplices: k.maximal_simplices().into_iter().map(Vec::from).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<Complex> {
        Complex::from_maximal_simplices(self.num_vertices, &self.maximal_simplices)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsFile {
    pub d: usize,
    pub points: Vec<Vec<String>>,
}

impl PointsFile {
    pub fn from_points(d: usize, points: &[RationalPoint]) -> Self {
        PointsFile { d, points: points.iter().map(point_strings).collect() }
    }

    pub fn to_points(&self) -> Result<Vec<RationalPoint>> {
        let pts = self.points.iter().map(|p| parse_point(p)).collect::<Result<Vec<_>>>()?;
        if let Some(p) = pts.iter().find(|p| p.dim() != self.d) {
            return Err(Error::ShapeError(format!("point of dimension {} in a file declaring d = {}", p.dim(), self.d)));
        }
        Ok(pts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLMapFile {
    pub complex: ComplexFile,
    pub d: usize,
    pub images: Vec<Vec<String>>,
}

impl PLMapFile {
    pub fn images(&self) -> Result<Vec<RationalPoint>> {
        PointsFile { d: self.d, points: self.images.clone() }.to_points()
    }

    pub fn from_parts(k: &Complex, d: usize, images: &[RationalPoint]) -> Self {
        PLMapFile { complex: ComplexFile::from_complex(k), d, images: images.iter().map(point_strings).collect() }
    }
}

pub fn from_json_str<T: serde::de::DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("malformed JSON: {e}")))
}

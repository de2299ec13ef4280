//! Scalars in JSON. Exact values are `"num/den"` strings, floats are plain
//! numbers. On input both modes also take integers, decimals, `"n/d"` and
//! `"sqrt(x)"`.

use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Number, Value};

use crate::matrix::Matrix;
use crate::scalar::{format_rational, parse_rational, Mode, Rational, Scalar};

/// Conversion between a value holding scalars and its JSON form.
pub trait JsonRepr: Sized {
    fn to_json(&self) -> Result<Value, String>;
    fn from_json(value: &Value) -> Result<Self, String>;
}

/// A [`Scalar`] with a JSON form.
pub trait JsonScalar: Scalar + JsonRepr {}

impl JsonScalar for f64 {}
impl JsonScalar for Rational {}

fn sqrt_argument(s: &str) -> Option<&str> {
    s.trim().strip_prefix("sqrt(")?.strip_suffix(')')
}

impl JsonRepr for Rational {
    fn to_json(&self) -> Result<Value, String> {
        Ok(Value::String(format_rational(self)))
    }

    fn from_json(value: &Value) -> Result<Self, String> {
        match value {
            Value::Number(n) => parse_rational(&n.to_string()).ok_or_else(|| format!("cannot read {n} as a rational")),
            Value::String(s) => match sqrt_argument(s) {
                Some(arg) => {
                    let x = parse_rational(arg).ok_or_else(|| format!("cannot read \"{s}\""))?;
                    x.try_sqrt().ok_or_else(|| format!("\"{s}\" is not rational; use float mode"))
                }
                None => parse_rational(s).ok_or_else(|| format!("cannot read \"{s}\" as a rational")),
            },
            other => Err(format!("expected a number, found {other}")),
        }
    }
}

fn parse_f64(s: &str) -> Option<f64> {
    parse_rational(s).map(|r| r.to_f64()).or_else(|| s.trim().parse().ok())
}

impl JsonRepr for f64 {
    fn to_json(&self) -> Result<Value, String> {
        Number::from_f64(*self).map(Value::Number).ok_or_else(|| format!("{self} has no JSON form"))
    }

    fn from_json(value: &Value) -> Result<Self, String> {
        let v = match value {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => match sqrt_argument(s) {
                Some(arg) => parse_f64(arg).filter(|x| *x >= 0.0).map(f64::sqrt),
                None => parse_f64(s),
            },
            other => return Err(format!("expected a number, found {other}")),
        };
        v.filter(|x| x.is_finite()).ok_or_else(|| format!("cannot read {value} as a finite number"))
    }
}

impl<R: JsonRepr> JsonRepr for Vec<R> {
    fn to_json(&self) -> Result<Value, String> {
        self.iter().map(R::to_json).collect::<Result<_, _>>().map(Value::Array)
    }

    fn from_json(value: &Value) -> Result<Self, String> {
        match value {
            Value::Array(items) => items.iter().map(R::from_json).collect(),
            other => Err(format!("expected an array, found {other}")),
        }
    }
}

/// Row-major nested arrays.
impl<T: JsonScalar> JsonRepr for Matrix<T> {
    fn to_json(&self) -> Result<Value, String> {
        self.to_rows().to_json()
    }

    fn from_json(value: &Value) -> Result<Self, String> {
        let rows = Vec::<Vec<T>>::from_json(value)?;
        if rows.is_empty() {
            return Err("empty matrix".into());
        }
        Matrix::from_rows(rows).map_err(|e| e.to_string())
    }
}

/// Serializes a matrix, or `null` if it cannot be represented. Used by
/// reports whose values are already computed.
pub fn matrix_value<T: JsonScalar>(m: &Matrix<T>) -> Value {
    m.to_json().unwrap_or(Value::Null)
}

pub fn scalar_value<T: JsonScalar>(x: &T) -> Value {
    x.to_json().unwrap_or(Value::Null)
}

/// For `#[serde(with = "crate::io::num")]` on fields holding scalars.
pub fn serialize<R: JsonRepr, S: Serializer>(value: &R, s: S) -> Result<S::Ok, S::Error> {
    value.to_json().map_err(S::Error::custom)?.serialize(s)
}

pub fn deserialize<'de, R: JsonRepr, D: Deserializer<'de>>(d: D) -> Result<R, D::Error> {
    let value = Value::deserialize(d)?;
    R::from_json(&value).map_err(D::Error::custom)
}

/// Mode a document asks for when it has no `mode` field: exact unless some
/// leaf has no exact reading (a non-integer JSON number, or a square root
/// that is irrational).
pub fn infer_mode(value: &Value) -> Mode {
    fn exact(v: &Value) -> bool {
        match v {
            Value::Number(n) => n.is_i64() || n.is_u64(),
            Value::String(_) => Rational::from_json(v).is_ok() || f64::from_json(v).is_err(),
            Value::Array(items) => items.iter().all(exact),
            Value::Object(map) => map.values().all(exact),
            _ => true,
        }
    }
    if exact(value) {
        Mode::Exact
    } else {
        Mode::Float
    }
}

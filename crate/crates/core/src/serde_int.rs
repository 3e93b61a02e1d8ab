//! JSON encoding of big integers: plain numbers when they fit in an `i64`,
//! decimal strings otherwise. Both forms are accepted on input.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::lattice::Int;

pub fn to_value(x: &Int) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

pub fn from_value(v: &Value) -> Result<Int, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .ok_or_else(|| format!("expected an integer, found {n}")),
        Value::String(s) => s.trim().parse::<Int>().map_err(|_| format!("expected an integer, found {s:?}")),
        other => Err(format!("expected an integer, found {other}")),
    }
}

pub mod vector {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_value).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let raw = Vec::<Value>::deserialize(d)?;
        raw.iter().map(|v| from_value(v).map_err(D::Error::custom)).collect()
    }
}

pub mod matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|row| row.iter().map(to_value).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
        let raw = Vec::<Vec<Value>>::deserialize(d)?;
        raw.iter()
            .map(|row| row.iter().map(|v| from_value(v).map_err(D::Error::custom)).collect())
            .collect()
    }
}

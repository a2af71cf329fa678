//! Serde adapters that write arbitrary-precision integers as JSON numbers
//! when they fit in 64 bits and as decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use std::fmt;

pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match value.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&value.to_string()),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    d.deserialize_any(BigIntVisitor)
}

struct BigIntVisitor;

impl<'de> Visitor<'de> for BigIntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.trim().parse().map_err(E::custom)
    }
}

/// Same encoding for `Vec<BigInt>`.
pub mod vec {
    use super::*;
    use serde::Deserialize;

    #[derive(Deserialize)]
    struct Wrapped(#[serde(with = "super")] BigInt);

    pub fn serialize<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            match v.to_i64() {
                Some(x) => seq.serialize_element(&x)?,
                None => seq.serialize_element(&v.to_string())?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<Wrapped> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|w| w.0).collect())
    }
}

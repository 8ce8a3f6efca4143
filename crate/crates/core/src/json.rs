//! Serde helpers for [`Int`] and [`Rational`] values.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings. Both forms are accepted on input. Rationals are written
//! as `"p/q"` strings.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use num_traits::ToPrimitive;

use crate::{Int, Rational};

/// Wrapper giving [`Int`] the JSON representation described above.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JsonInt(pub Int);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl<'de> Visitor<'de> for IntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(Int::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(Int::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        Int::from_str(v.trim()).map(JsonInt).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

pub fn wrap(v: &[Int]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub fn unwrap(v: Vec<JsonInt>) -> Vec<Int> {
    v.into_iter().map(|x| x.0).collect()
}

/// `#[serde(with = "crate::json::int")]`
pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        JsonInt::deserialize(d).map(|x| x.0)
    }
}

/// `#[serde(with = "crate::json::int_vec")]`
pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        wrap(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        Vec::<JsonInt>::deserialize(d).map(unwrap)
    }
}

/// `#[serde(with = "crate::json::int_pair")]`
pub mod int_pair {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int; 2], s: S) -> Result<S::Ok, S::Error> {
        [JsonInt(v[0].clone()), JsonInt(v[1].clone())].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Int; 2], D::Error> {
        let [a, b] = <[JsonInt; 2]>::deserialize(d)?;
        Ok([a.0, b.0])
    }
}

/// `#[serde(with = "crate::json::opt_int_pair")]`
pub mod opt_int_pair {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<(Int, Int)>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|(a, b)| [JsonInt(a.clone()), JsonInt(b.clone())])
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<(Int, Int)>, D::Error> {
        Ok(Option::<[JsonInt; 2]>::deserialize(d)?.map(|[a, b]| (a.0, b.0)))
    }
}

/// `#[serde(with = "crate::json::rational_vec")]`
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|r| r.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| Rational::from_str(s).map_err(de::Error::custom))
            .collect()
    }
}

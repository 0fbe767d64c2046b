//! Serde adapters writing big integers as plain JSON numbers.
//!
//! These rely on serde_json's `arbitrary_precision` feature, so values of
//! any size survive a round trip without passing through floating point.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

fn to_number<E: serde::ser::Error>(v: &BigInt) -> Result<Number, E> {
    Number::from_str(&v.to_string()).map_err(E::custom)
}

fn from_number<E: serde::de::Error>(n: &Number) -> Result<BigInt, E> {
    BigInt::from_str(&n.to_string()).map_err(|_| E::custom(format!("{n} is not an integer")))
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_number(v)?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_number(&Number::deserialize(d)?)
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let nums = v.iter().map(to_number).collect::<Result<Vec<_>, S::Error>>()?;
        nums.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Number>::deserialize(d)?.iter().map(from_number).collect()
    }
}

pub mod option_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(to_number).transpose()?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<Number>::deserialize(d)?.as_ref().map(from_number).transpose()
    }
}

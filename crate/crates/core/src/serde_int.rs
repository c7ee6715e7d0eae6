//! JSON encoding for big integers.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

fn to_repr(x: &BigInt) -> IntRepr {
    match i64::try_from(x) {
        Ok(v) => IntRepr::Small(v),
        Err(_) => IntRepr::Big(x.to_string()),
    }
}

fn from_repr<E: serde::de::Error>(r: IntRepr) -> Result<BigInt, E> {
    match r {
        IntRepr::Small(v) => Ok(BigInt::from(v)),
        IntRepr::Big(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?.into_iter().map(from_repr).collect()
    }
}

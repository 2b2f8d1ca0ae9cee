//! JSON output of big integers as plain JSON numbers.

use num::BigUint;
use serde::ser::{Error, SerializeSeq};
use serde::Serializer;
use serde_json::value::RawValue;

pub fn biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(v.to_string()).map_err(S::Error::custom)?;
    s.serialize_some(&raw)
}

pub fn biguint_vec<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        let raw = RawValue::from_string(x.to_string()).map_err(S::Error::custom)?;
        seq.serialize_element(&raw)?;
    }
    seq.end()
}

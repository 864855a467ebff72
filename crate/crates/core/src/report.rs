//! Serialization helpers: integers travel as decimal strings.

use num_bigint::{BigInt, BigUint};
use serde::ser::SerializeSeq;
use serde::Serializer;

pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_prime_powers<S: Serializer>(
    v: &[(BigUint, u32)],
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (p, e) in v {
        seq.serialize_element(&[p.to_string(), e.to_string()])?;
    }
    seq.end()
}

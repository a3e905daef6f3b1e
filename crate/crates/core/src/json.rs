//! JSON helpers for exact integers.

use num_bigint::BigInt;
use serde_json::{Number, Value};

/// An exact JSON number for an arbitrary-precision integer.
pub fn exact(v: &BigInt) -> Value {
    let n: Number = v
        .to_string()
        .parse()
        .expect("decimal integers are valid JSON numbers");
    Value::Number(n)
}

pub fn serialize_exact<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&exact(v), s)
}

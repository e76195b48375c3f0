//! JSON encoding for exact counts: a number when it fits in `u64`, a decimal
//! string otherwise.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serializer;

pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(small) => s.serialize_u64(small),
        None => s.serialize_str(&v.to_str_radix(10)),
    }
}

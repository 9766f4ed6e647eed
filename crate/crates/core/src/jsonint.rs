//! Big integers as plain JSON numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

fn to_number<E: serde::ser::Error>(v: &BigInt) -> Result<Number, E> {
    Number::from_str(&v.to_string()).map_err(E::custom)
}

pub fn serialize_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let nums = v.iter().map(to_number).collect::<Result<Vec<Number>, S::Error>>()?;
    nums.serialize(s)
}

pub fn deserialize_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    let nums = Vec::<Number>::deserialize(d)?;
    nums.iter().map(|n| BigInt::from_str(&n.to_string()).map_err(serde::de::Error::custom)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct W(#[serde(serialize_with = "serialize_vec", deserialize_with = "deserialize_vec")] Vec<BigInt>);

    #[test]
    fn huge_values_round_trip() {
        let big: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let w = W(vec![BigInt::from(3), big]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, "[3,-123456789012345678901234567890]");
        assert_eq!(serde_json::from_str::<W>(&s).unwrap(), w);
    }
}

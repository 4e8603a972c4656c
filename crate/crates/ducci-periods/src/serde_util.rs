//! Serde adapters that keep arbitrary-precision integers as decimal strings
//! in JSON, where the numbers would not survive a double round trip.

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub mod biguint_dec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        v.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

pub mod opt_biguint_dec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|b| b.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|r| r.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub mod biguint_pair_dec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &(BigUint, BigUint), s: S) -> Result<S::Ok, S::Error> {
        (v.0.to_string(), v.1.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<(BigUint, BigUint), D::Error> {
        let (a, b) = <(String, String)>::deserialize(d)?;
        Ok((
            a.parse().map_err(serde::de::Error::custom)?,
            b.parse().map_err(serde::de::Error::custom)?,
        ))
    }
}

pub mod opt_biguint_pair_dec {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &Option<(BigUint, BigUint)>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<(BigUint, BigUint)>, D::Error> {
        let raw = Option::<(String, String)>::deserialize(d)?;
        raw.map(|(a, b)| {
            Ok((
                a.parse().map_err(serde::de::Error::custom)?,
                b.parse().map_err(serde::de::Error::custom)?,
            ))
        })
        .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Wrapper {
        #[serde(with = "biguint_dec")]
        v: BigUint,
        #[serde(with = "opt_biguint_dec")]
        o: Option<BigUint>,
    }

    #[test]
    fn round_trip_preserves_big_values() {
        let w = Wrapper {
            v: BigUint::from(10u32).pow(40) + 7u32,
            o: Some(BigUint::from(3u32)),
        };
        let json = serde_json::to_string(&w).unwrap();
        assert!(json.contains("\"10000000000000000000000000000000000000007\""));
        let back: Wrapper = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn none_round_trips() {
        let w = Wrapper {
            v: BigUint::from(1u32),
            o: None,
        };
        let json = serde_json::to_string(&w).unwrap();
        let back: Wrapper = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn rejects_garbage() {
        let bad = r#"{"v": "12x", "o": null}"#;
        assert!(serde_json::from_str::<Wrapper>(bad).is_err());
    }
}

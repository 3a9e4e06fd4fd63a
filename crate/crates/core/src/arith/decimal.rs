//! Serde adapters writing arbitrary-precision integers as decimal strings.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    String::deserialize(d)?.parse().map_err(D::Error::custom)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|x| x.parse().map_err(D::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use serde::{Deserialize, Serialize};

    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrapper {
        #[serde(with = "super")]
        one: BigInt,
        #[serde(with = "super::vec")]
        many: Vec<BigInt>,
    }

    #[test]
    fn round_trip() {
        let w = Wrapper { one: BigInt::from(-3), many: vec![BigInt::from(10).pow(30), BigInt::from(0)] };
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(text, r#"{"one":"-3","many":["1000000000000000000000000000000","0"]}"#);
        assert_eq!(serde_json::from_str::<Wrapper>(&text).unwrap(), w);
    }
}

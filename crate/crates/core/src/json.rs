//! Shared JSON conventions: schema tag, strict object parsing, and
//! integer encoding for arbitrary-precision values.

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, IntVec};

pub const SCHEMA: &str = "kdl/1";

/// Integers that fit in 64 bits are written as JSON numbers, anything larger
/// as a decimal string.
pub fn bigint_to_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

struct BigIntJson<'a>(&'a BigInt);

impl Serialize for BigIntJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl Serialize for IntVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rank()))?;
        for x in self.entries() {
            seq.serialize_element(&BigIntJson(x))?;
        }
        seq.end()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.rows();
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            seq.serialize_element(&IntVec::new(row))?;
        }
        seq.end()
    }
}

/// Removes and validates an optional `"schema"` member, then deserializes the
/// remainder. Target types are expected to deny unknown fields.
pub fn from_tagged_value<T: DeserializeOwned>(mut value: Value) -> Result<T> {
    if let Value::Object(map) = &mut value {
        if let Some(tag) = map.remove("schema") {
            if tag.as_str() != Some(SCHEMA) {
                return Err(Error::InvalidDatum(format!(
                    "unsupported schema {tag}, expected \"{SCHEMA}\""
                )));
            }
        }
    } else {
        return Err(Error::InvalidDatum("expected a JSON object".into()));
    }
    serde_json::from_value(value).map_err(|e| Error::InvalidDatum(e.to_string()))
}

pub fn from_tagged_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::InvalidDatum(e.to_string()))?;
    from_tagged_value(value)
}

/// Serializes `body` (which must serialize to an object) with the schema tag
/// placed first.
pub fn to_tagged_string<T: Serialize>(body: &T) -> String {
    #[derive(serde::Serialize)]
    struct Tagged<'a, T: Serialize> {
        schema: &'static str,
        #[serde(flatten)]
        body: &'a T,
    }
    serde_json::to_string(&Tagged {
        schema: SCHEMA,
        body,
    })
    .expect("in-memory JSON serialization")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, serde::Deserialize, serde::Serialize, PartialEq)]
    #[serde(deny_unknown_fields)]
    struct Probe {
        a: i64,
    }

    #[test]
    fn schema_tag_is_optional_but_checked() {
        let p: Probe = from_tagged_str(r#"{"a":1}"#).unwrap();
        assert_eq!(p, Probe { a: 1 });
        let p: Probe = from_tagged_str(r#"{"schema":"kdl/1","a":2}"#).unwrap();
        assert_eq!(p.a, 2);
        assert!(from_tagged_str::<Probe>(r#"{"schema":"kdl/0","a":2}"#).is_err());
        assert!(from_tagged_str::<Probe>(r#"{"a":2,"b":3}"#).is_err());
        assert!(from_tagged_str::<Probe>("[1]").is_err());
    }

    #[test]
    fn big_integers_fall_back_to_strings() {
        let big: BigInt = BigInt::from(i64::MAX) * 4;
        assert_eq!(bigint_to_value(&big), Value::String(big.to_string()));
        let v = IntVec::new(vec![BigInt::from(-3), big.clone()]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, format!("[-3,\"{big}\"]"));
    }

    #[test]
    fn tagged_output_puts_schema_first() {
        assert_eq!(
            to_tagged_string(&Probe { a: 5 }),
            r#"{"schema":"kdl/1","a":5}"#
        );
    }
}

//! Serde adapters that write every integer as a decimal string.
//!
//! Certificates carry values far beyond 64 bits, and JSON numbers are
//! routinely parsed as doubles by other tools, so nothing numeric is ever
//! emitted as a JSON number.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};
use std::str::FromStr;

pub mod biguint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        parse_canonical_uint(&text).map_err(D::Error::custom)
    }
}

pub mod opt_biguint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_canonical_uint(&t).map_err(D::Error::custom))
            .transpose()
    }
}

pub mod u32_str {
    use super::*;

    pub fn serialize<S: Serializer>(value: &u32, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u32, D::Error> {
        let text = String::deserialize(d)?;
        let v = parse_canonical_uint(&text).map_err(D::Error::custom)?;
        u32::try_from(v).map_err(D::Error::custom)
    }
}

pub mod u64_str {
    use super::*;

    pub fn serialize<S: Serializer>(value: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let text = String::deserialize(d)?;
        let v = parse_canonical_uint(&text).map_err(D::Error::custom)?;
        u64::try_from(v).map_err(D::Error::custom)
    }
}

pub mod vec_u64_str {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(values: &[u64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u64>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| {
                let v = parse_canonical_uint(t).map_err(D::Error::custom)?;
                u64::try_from(v).map_err(D::Error::custom)
            })
            .collect()
    }
}

/// Rejects signs, leading zeros and whitespace so that parse-then-print is
/// the identity on accepted input.
pub fn parse_canonical_uint(text: &str) -> Result<BigUint, String> {
    let ok = !text.is_empty()
        && text.bytes().all(|b| b.is_ascii_digit())
        && (text == "0" || !text.starts_with('0'));
    if !ok {
        return Err(format!("`{text}` is not a canonical decimal integer"));
    }
    BigUint::from_str(text).map_err(|e| e.to_string())
}

pub fn parse_canonical_int(text: &str) -> Result<BigInt, String> {
    match text.strip_prefix('-') {
        Some(rest) if rest != "0" => parse_canonical_uint(rest).map(|v| -BigInt::from(v)),
        Some(_) => Err("negative zero is not canonical".into()),
        None => parse_canonical_uint(text).map(BigInt::from),
    }
}

/// Parses `n/d` with `d > 1` and the fraction in lowest terms.
pub fn parse_canonical_ratio(text: &str) -> Result<BigRational, String> {
    let (num, den) = text
        .split_once('/')
        .ok_or_else(|| format!("`{text}` is not a fraction"))?;
    let num = parse_canonical_int(num)?;
    let den = parse_canonical_uint(den)?;
    let r = BigRational::new(num.clone(), BigInt::from(den.clone()));
    if *r.numer() != num || *r.denom() != BigInt::from(den) {
        return Err(format!("`{text}` is not in lowest terms"));
    }
    if r.is_integer() {
        return Err(format!("`{text}` has unit denominator"));
    }
    Ok(r)
}

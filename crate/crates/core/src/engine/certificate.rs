use crate::dec::{self, parse_canonical_int, parse_canonical_ratio};
use crate::design::DesignParams;
use crate::groups::Family;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Eliminated,
    Survives,
    Open,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Eliminated => "eliminated",
            Verdict::Survives => "survives",
            Verdict::Open => "open",
        })
    }
}

/// The necessary condition a certificate shows to be violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Divisibility,
    Integrality,
    Bound,
    OrderDivisor,
    EquationUnsolvable,
    Valuation,
    AxiomRule,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Divisibility => "divisibility",
            Rule::Integrality => "integrality",
            Rule::Bound => "bound",
            Rule::OrderDivisor => "order-divisor",
            Rule::EquationUnsolvable => "equation-unsolvable",
            Rule::Valuation => "valuation",
            Rule::AxiomRule => "axiom-rule",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exact witness value. Rationals are only used for non-integers, so the
/// textual form `n` vs `n/d` identifies the variant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Exact {
    Int(BigInt),
    Ratio(BigRational),
}

impl Exact {
    pub fn from_ratio(r: BigRational) -> Self {
        if r.is_integer() {
            Exact::Int(r.to_integer())
        } else {
            Exact::Ratio(r)
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Exact::Int(i) => Some(i),
            Exact::Ratio(_) => None,
        }
    }

    pub fn as_uint(&self) -> Option<BigUint> {
        self.as_int()
            .filter(|i| !i.is_negative())
            .and_then(|i| i.to_biguint())
    }

    pub fn to_ratio(&self) -> BigRational {
        match self {
            Exact::Int(i) => BigRational::from_integer(i.clone()),
            Exact::Ratio(r) => r.clone(),
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Int(i) => write!(f, "{i}"),
            Exact::Ratio(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text.contains('/') {
            parse_canonical_ratio(&text).map(Exact::Ratio)
        } else {
            parse_canonical_int(&text).map(Exact::Int)
        }
        .map_err(D::Error::custom)
    }
}

macro_rules! exact_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Exact {
            fn from(v: $t) -> Self {
                Exact::Int(BigInt::from(v))
            }
        }
    )*};
}
exact_from!(u32, u64, i64, BigUint, BigInt);

impl From<&BigUint> for Exact {
    fn from(v: &BigUint) -> Self {
        Exact::Int(BigInt::from(v.clone()))
    }
}

impl From<BigRational> for Exact {
    fn from(r: BigRational) -> Self {
        Exact::from_ratio(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub value: Exact,
}

impl Witness {
    pub fn new(name: impl Into<String>, value: impl Into<Exact>) -> Self {
        Witness {
            name: name.into(),
            value: value.into(),
        }
    }
}

/// The group (or whole family, when `param` is absent) a certificate is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRef {
    pub family: Family,
    #[serde(with = "opt_u64")]
    pub param: Option<u64>,
}

impl GroupRef {
    pub fn at(family: Family, param: u64) -> Self {
        GroupRef {
            family,
            param: Some(param),
        }
    }

    pub fn family(family: Family) -> Self {
        GroupRef {
            family,
            param: None,
        }
    }
}

mod opt_u64 {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<u64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u64>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| {
                dec::parse_canonical_uint(&t)
                    .and_then(|v| u64::try_from(v).map_err(|e| e.to_string()))
                    .map_err(D::Error::custom)
            })
            .transpose()
    }
}

/// One case verdict with the integers that justify it.
///
/// Field order is the serialization order and is part of the output format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationCertificate {
    pub case_id: String,
    pub params: Option<DesignParams>,
    pub group: GroupRef,
    pub verdict: Verdict,
    pub violated_condition: Option<Rule>,
    pub witnesses: Vec<Witness>,
    pub paper_anchor: String,
}

impl EliminationCertificate {
    pub fn eliminated(
        case_id: impl Into<String>,
        params: Option<DesignParams>,
        group: GroupRef,
        rule: Rule,
        witnesses: Vec<Witness>,
        anchor: impl Into<String>,
    ) -> Self {
        EliminationCertificate {
            case_id: case_id.into(),
            params,
            group,
            verdict: Verdict::Eliminated,
            violated_condition: Some(rule),
            witnesses,
            paper_anchor: anchor.into(),
        }
    }

    pub fn witness(&self, name: &str) -> Option<&Exact> {
        self.witnesses
            .iter()
            .find(|w| w.name == name)
            .map(|w| &w.value)
    }

    pub fn int(&self, name: &str) -> Option<&BigInt> {
        self.witness(name).and_then(Exact::as_int)
    }

    pub fn uint(&self, name: &str) -> Option<BigUint> {
        self.witness(name).and_then(Exact::as_uint)
    }

    /// `k` from the params, or from a `k` witness for family-wide cases.
    pub fn k(&self) -> Option<BigUint> {
        self.params
            .as_ref()
            .map(|p| p.k.clone())
            .or_else(|| self.uint("k"))
    }

    /// One-line text form: `case_id k=K verdict name value`.
    pub fn text_row(&self) -> String {
        let k = self
            .k()
            .map_or_else(|| "-".to_string(), |k| format!("k={k}"));
        let headline = self
            .witnesses
            .first()
            .map_or_else(String::new, |w| format!(" {} {}", w.name, w.value));
        format!("{} {} {}{}", self.case_id, k, self.verdict, headline)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_text_forms() {
        let half = BigRational::new(1001.into(), 2.into());
        assert_eq!(Exact::from(half).to_string(), "1001/2");
        assert_eq!(Exact::from(BigRational::from_integer(6.into())).to_string(), "6");
        let parsed: Exact = serde_json::from_str("\"-7\"").unwrap();
        assert_eq!(parsed, Exact::from(-7i64));
        assert!(serde_json::from_str::<Exact>("\"4/2\"").is_err());
        assert!(serde_json::from_str::<Exact>("\"007\"").is_err());
        assert!(serde_json::from_str::<Exact>("7").is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let cert = EliminationCertificate::eliminated(
            "affine.1.v32",
            Some(DesignParams::steiner6(32u32, 7u32).unwrap()),
            GroupRef::at(Family::AGammaL1, 32),
            Rule::OrderDivisor,
            vec![Witness::new("divisor", 29u32)],
            "anchor",
        );
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(
            json,
            r#"{"case_id":"affine.1.v32","params":{"t":"6","v":"32","k":"7","lambda":"1"},"group":{"family":"AGammaL1","param":"32"},"verdict":"eliminated","violated_condition":"order-divisor","witnesses":[{"name":"divisor","value":"29"}],"paper_anchor":"anchor"}"#
        );
        let back: EliminationCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert_eq!(cert.text_row(), "affine.1.v32 k=7 eliminated divisor 29");
    }
}

//! Orders and degrees of the finite 3-homogeneous permutation groups.
//!
//! No group elements are ever built. Each catalog entry is pure data: the
//! family, the degree it acts on and its exact order. Mathieu orders are
//! constants.

use crate::arith::{factorize, is_prime, iroot};
use crate::dec;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "AGL1")]
    Agl1,
    #[serde(rename = "AGammaL1")]
    AGammaL1,
    #[serde(rename = "SLd2")]
    SlD2,
    #[serde(rename = "A7_affine")]
    A7Affine,
    Alt,
    #[serde(rename = "PSL2")]
    Psl2,
    #[serde(rename = "PGL2")]
    Pgl2,
    #[serde(rename = "PSigmaL2")]
    PSigmaL2,
    #[serde(rename = "PGammaL2")]
    PGammaL2,
    Mathieu,
    #[serde(rename = "M11_on12")]
    M11On12,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Agl1,
        Family::AGammaL1,
        Family::SlD2,
        Family::A7Affine,
        Family::Alt,
        Family::Psl2,
        Family::Pgl2,
        Family::PSigmaL2,
        Family::PGammaL2,
        Family::Mathieu,
        Family::M11On12,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Agl1 => "AGL1",
            Family::AGammaL1 => "AGammaL1",
            Family::SlD2 => "SLd2",
            Family::A7Affine => "A7_affine",
            Family::Alt => "Alt",
            Family::Psl2 => "PSL2",
            Family::Pgl2 => "PGL2",
            Family::PSigmaL2 => "PSigmaL2",
            Family::PGammaL2 => "PGammaL2",
            Family::Mathieu => "Mathieu",
            Family::M11On12 => "M11_on12",
        }
    }

    pub fn is_psl2_tower(self) -> bool {
        matches!(
            self,
            Family::Psl2 | Family::Pgl2 | Family::PSigmaL2 | Family::PGammaL2
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// `q = p^e` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    #[serde(with = "dec::u64_str")]
    pub q: u64,
    #[serde(with = "dec::u64_str")]
    pub p: u64,
    #[serde(with = "dec::u32_str")]
    pub e: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        decompose_prime_power(q)?.ok_or_else(|| Error::NotPrimePower(q.to_string()))
    }

    /// `gcd(2, q-1)`.
    pub fn n(&self) -> u64 {
        if self.p == 2 {
            1
        } else {
            2
        }
    }
}

const TRIAL_LIMIT: u64 = 1 << 20;

/// Splits `q` as `p^e`, or `None` when `q` has two distinct prime factors.
///
/// Trial division up to 2^20 finds `p` for every `q` with a small prime
/// factor. Beyond that `q < 2^64` forces `e ≤ 3`, so the remaining cases are
/// settled by exact roots and a deterministic primality test.
pub fn decompose_prime_power(q: u64) -> Result<Option<PrimePower>> {
    if q < 2 {
        return Err(Error::OutOfRange(format!(
            "prime-power decomposition needs q >= 2, got {q}"
        )));
    }
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && d * d <= q {
        if q % d == 0 {
            let mut rest = q;
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            return Ok((rest == 1).then_some(PrimePower { q, p: d, e }));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if d * d > q {
        // no factor below √q: q itself is prime
        return Ok(Some(PrimePower { q, p: q, e: 1 }));
    }
    for e in (1..=3u32).rev() {
        let r = iroot(&BigUint::from(q), e).to_u64().unwrap_or(0);
        if r.checked_pow(e) == Some(q) && is_prime(r) {
            return Ok(Some(PrimePower { q, p: r, e }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupParams {
    /// One-dimensional affine and PSL(2,q)-tower groups.
    Field(PrimePower),
    /// `G_0 ≅ SL(d,2)`.
    Dimension(#[serde(with = "dec::u32_str")] u32),
    /// Alternating and Mathieu groups, indexed by degree.
    Degree(#[serde(with = "dec::u64_str")] u64),
    /// `2^4 : A_7` and `M_11` on 12 points.
    Fixed,
}

/// One entry of the 3-homogeneous catalog.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    #[serde(with = "dec::u64_str")]
    pub degree: u64,
    #[serde(with = "dec::biguint")]
    pub order: BigUint,
    #[serde(with = "dec::biguint")]
    pub two_point_stab_order: BigUint,
    pub params: GroupParams,
}

impl GroupSpec {
    /// Builds the entry for `family` at parameter `param`: `q` for the
    /// one-dimensional affine and PSL(2,q) families, `d` for SL(d,2),
    /// the degree for Alt and Mathieu. `A7_affine` and `M11_on12` ignore it.
    pub fn build(family: Family, param: u64) -> Result<Self> {
        let (degree, params) = match family {
            Family::Agl1 | Family::AGammaL1 => {
                let q = PrimePower::new(param)?;
                (q.q, GroupParams::Field(q))
            }
            Family::Psl2 | Family::Pgl2 | Family::PSigmaL2 | Family::PGammaL2 => {
                let q = PrimePower::new(param)?;
                if q.q <= 3 {
                    return Err(Error::OutOfRange(format!(
                        "PSL(2,q) catalog needs q > 3, got {}",
                        q.q
                    )));
                }
                (q.q + 1, GroupParams::Field(q))
            }
            Family::SlD2 => {
                let d = u32::try_from(param)
                    .ok()
                    .filter(|d| (2..64).contains(d))
                    .ok_or_else(|| Error::OutOfRange(format!("SL(d,2) needs 2 <= d < 64, got {param}")))?;
                (1u64 << d, GroupParams::Dimension(d))
            }
            Family::A7Affine => (16, GroupParams::Fixed),
            Family::Alt => {
                if param < 5 {
                    return Err(Error::OutOfRange(format!("A_v needs v >= 5, got {param}")));
                }
                (param, GroupParams::Degree(param))
            }
            Family::Mathieu => {
                if mathieu_order(param).is_none() {
                    return Err(Error::OutOfRange(format!(
                        "no Mathieu group of degree {param}"
                    )));
                }
                (param, GroupParams::Degree(param))
            }
            Family::M11On12 => (12, GroupParams::Fixed),
        };
        let mut spec = GroupSpec {
            family,
            degree,
            order: BigUint::one(),
            two_point_stab_order: BigUint::one(),
            params,
        };
        spec.order = order_of(&spec);
        let pairs = BigUint::from(degree) * BigUint::from(degree - 1);
        spec.two_point_stab_order = &spec.order / &pairs;
        debug_assert!(spec.order.is_multiple_of(&pairs), "{family} is not 2-transitive");
        Ok(spec)
    }

    pub fn field(&self) -> Option<PrimePower> {
        match self.params {
            GroupParams::Field(q) => Some(q),
            _ => None,
        }
    }

    /// The parameter accepted by [`GroupSpec::build`].
    pub fn param(&self) -> u64 {
        match self.params {
            GroupParams::Field(q) => q.q,
            GroupParams::Dimension(d) => u64::from(d),
            GroupParams::Degree(v) => v,
            GroupParams::Fixed => self.degree,
        }
    }

    pub fn label(&self) -> String {
        match (self.family, &self.params) {
            (Family::Agl1, GroupParams::Field(q)) => format!("AGL(1,{})", q.q),
            (Family::AGammaL1, GroupParams::Field(q)) => format!("AΓL(1,{})", q.q),
            (Family::SlD2, GroupParams::Dimension(d)) => format!("2^{d}:SL({d},2)"),
            (Family::A7Affine, _) => "2^4:A7".to_string(),
            (Family::Alt, _) => format!("A{}", self.degree),
            (Family::Psl2, GroupParams::Field(q)) => format!("PSL(2,{})", q.q),
            (Family::Pgl2, GroupParams::Field(q)) => format!("PGL(2,{})", q.q),
            (Family::PSigmaL2, GroupParams::Field(q)) => format!("PΣL(2,{})", q.q),
            (Family::PGammaL2, GroupParams::Field(q)) => format!("PΓL(2,{})", q.q),
            (Family::Mathieu, _) => format!("M{}", self.degree),
            (Family::M11On12, _) => "M11 on 12".to_string(),
            (f, _) => f.tag().to_string(),
        }
    }
}

/// `|M_v|` for `v ∈ {11, 12, 22, 23, 24}`.
pub fn mathieu_order(v: u64) -> Option<BigUint> {
    let order: u64 = match v {
        11 => 7_920,
        12 => 95_040,
        22 => 443_520,
        23 => 10_200_960,
        24 => 244_823_040,
        _ => return None,
    };
    Some(BigUint::from(order))
}

/// `|SL(d,2)| = ∏_{i<d} (2^d − 2^i)`.
pub fn sl_d2_order(d: u32) -> BigUint {
    let top = BigUint::one() << d;
    (0..d)
        .map(|i| &top - (BigUint::one() << i))
        .product()
}

/// `|PSL(2,q)| = (q+1)q(q-1)/gcd(2,q-1)`.
pub fn psl2_order(q: &PrimePower) -> BigUint {
    pgl2_order(q) / q.n()
}

fn pgl2_order(q: &PrimePower) -> BigUint {
    let qb = BigUint::from(q.q);
    (&qb + 1u32) * &qb * (&qb - 1u32)
}

/// `|G| = |PSL(2,q)| · a` for a group between PSL(2,q) and PΓL(2,q);
/// requires `a | n e`.
pub fn psl2_tower_order(q: &PrimePower, a: u64) -> Result<BigUint> {
    let ne = q.n() * u64::from(q.e);
    if a == 0 || ne % a != 0 {
        return Err(Error::OutOfRange(format!(
            "a = {a} does not divide n·e = {ne} for q = {}",
            q.q
        )));
    }
    Ok(psl2_order(q) * a)
}

/// Exact order of a catalog entry.
pub fn order_of(spec: &GroupSpec) -> BigUint {
    match (spec.family, &spec.params) {
        (Family::Agl1, GroupParams::Field(q)) => BigUint::from(q.q) * (q.q - 1),
        (Family::AGammaL1, GroupParams::Field(q)) => BigUint::from(q.q) * (q.q - 1) * q.e,
        (Family::SlD2, GroupParams::Dimension(d)) => sl_d2_order(*d) << *d,
        // 2^4 : A_7
        (Family::A7Affine, _) => BigUint::from(16u32 * 2520),
        (Family::Alt, _) => (3..=spec.degree).map(BigUint::from).product(),
        (Family::Psl2, GroupParams::Field(q)) => psl2_order(q),
        (Family::Pgl2, GroupParams::Field(q)) => pgl2_order(q),
        (Family::PSigmaL2, GroupParams::Field(q)) => psl2_order(q) * q.e,
        (Family::PGammaL2, GroupParams::Field(q)) => pgl2_order(q) * q.e,
        (Family::Mathieu, _) => mathieu_order(spec.degree).expect("validated on build"),
        (Family::M11On12, _) => BigUint::from(7_920u32),
        (f, p) => unreachable!("{f} with params {p:?}"),
    }
}

/// Order of `family` at `param`, as in [`GroupSpec::build`].
pub fn order_for(family: Family, param: u64) -> Result<BigUint> {
    GroupSpec::build(family, param).map(|g| g.order)
}

/// `PSL(2,q)` on the projective line is 3-homogeneous iff `q` is even or
/// `q ≡ 3 (mod 4)`.
pub fn is_3homogeneous_psl2(q: u64) -> Result<bool> {
    let pp = PrimePower::new(q)?;
    if pp.q <= 3 {
        return Err(Error::OutOfRange(format!("need q > 3, got {q}")));
    }
    Ok(pp.p == 2 || q % 4 == 3)
}

/// Every catalog entry acting on `v` points, affine entries first.
pub fn catalog_for_degree(v: u64) -> Vec<GroupSpec> {
    catalog_members(v)
        .into_iter()
        .map(|(family, param)| {
            GroupSpec::build(family, param).expect("catalog parameters are valid")
        })
        .collect()
}

/// `(family, param)` pairs of [`catalog_for_degree`] without computing orders.
pub fn catalog_members(v: u64) -> Vec<(Family, u64)> {
    let mut out = Vec::new();
    if v == 8 {
        out.push((Family::Agl1, 8));
        out.push((Family::AGammaL1, 8));
    }
    if v == 32 {
        out.push((Family::AGammaL1, 32));
    }
    if v >= 4 && v.is_power_of_two() {
        out.push((Family::SlD2, u64::from(v.trailing_zeros())));
    }
    if v == 16 {
        out.push((Family::A7Affine, 16));
    }
    if v >= 5 {
        out.push((Family::Alt, v));
        if let Ok(Some(q)) = decompose_prime_power(v - 1) {
            if q.q > 3 {
                out.push((Family::Psl2, q.q));
                if q.p != 2 {
                    out.push((Family::Pgl2, q.q));
                }
                if q.e > 1 {
                    out.push((Family::PSigmaL2, q.q));
                    if q.p != 2 {
                        out.push((Family::PGammaL2, q.q));
                    }
                }
            }
        }
    }
    if mathieu_order(v).is_some() {
        out.push((Family::Mathieu, v));
    }
    if v == 12 {
        out.push((Family::M11On12, 12));
    }
    out
}

/// Factorization helper used to cross-check order constants.
pub fn factor_order(order: &BigUint) -> Option<Vec<(u64, u32)>> {
    order.to_u64().map(factorize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_examples() {
        assert_eq!(
            decompose_prime_power(32).unwrap(),
            Some(PrimePower { q: 32, p: 2, e: 5 })
        );
        assert_eq!(
            decompose_prime_power(729).unwrap(),
            Some(PrimePower { q: 729, p: 3, e: 6 })
        );
        assert_eq!(decompose_prime_power(12).unwrap(), None);
        assert!(decompose_prime_power(1).is_err());
        assert!(decompose_prime_power(0).is_err());
    }

    #[test]
    fn decompose_large_bases() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        assert_eq!(
            decompose_prime_power(p * p).unwrap(),
            Some(PrimePower { q: p * p, p, e: 2 })
        );
        let p = 2_097_143u64; // prime just under 2^21
        assert_eq!(
            decompose_prime_power(p * p * p).unwrap(),
            Some(PrimePower { q: p * p * p, p, e: 3 })
        );
        let big = 18_446_744_073_709_551_557u64;
        assert_eq!(decompose_prime_power(big).unwrap().map(|x| x.e), Some(1));
        // two large distinct primes
        assert_eq!(decompose_prime_power(4_294_967_291 * 4_294_967_279).unwrap(), None);
    }

    #[test]
    fn decompose_round_trips() {
        for p in crate::arith::primes_up_to(100) {
            for e in 1..=20u32 {
                let Some(q) = p.checked_pow(e) else { break };
                assert_eq!(
                    decompose_prime_power(q).unwrap(),
                    Some(PrimePower { q, p, e }),
                    "{p}^{e}"
                );
            }
        }
    }

    #[test]
    fn three_homogeneity() {
        assert!(is_3homogeneous_psl2(11).unwrap());
        assert!(!is_3homogeneous_psl2(13).unwrap());
        assert!(is_3homogeneous_psl2(16).unwrap());
        assert!(is_3homogeneous_psl2(27).unwrap());
        assert!(is_3homogeneous_psl2(12).is_err());
        assert!(is_3homogeneous_psl2(3).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_for(Family::Psl2, 11).unwrap(), BigUint::from(660u32));
        assert_eq!(sl_d2_order(3), BigUint::from(168u32));
        assert_eq!(order_for(Family::Alt, 8).unwrap(), BigUint::from(20_160u32));
        assert_eq!(order_for(Family::AGammaL1, 32).unwrap(), BigUint::from(4960u32));
        assert_eq!(order_for(Family::AGammaL1, 8).unwrap(), BigUint::from(168u32));
        assert_eq!(order_for(Family::Agl1, 8).unwrap(), BigUint::from(56u32));
        assert_eq!(order_for(Family::SlD2, 3).unwrap(), BigUint::from(8u32 * 168));
        assert_eq!(order_for(Family::PGammaL2, 8).unwrap(), BigUint::from(9u32 * 8 * 7 * 3));
        assert_eq!(order_for(Family::PSigmaL2, 9).unwrap(), BigUint::from(720u32));
    }

    #[test]
    fn twenty_nine_does_not_divide_agammal_32() {
        let order = order_for(Family::AGammaL1, 32).unwrap();
        assert!(!(order % 29u32 == BigUint::from(0u32)));
    }

    #[test]
    fn mathieu_constants_match_factorizations() {
        let expected: [(u64, &[(u64, u32)]); 5] = [
            (11, &[(2, 4), (3, 2), (5, 1), (11, 1)]),
            (12, &[(2, 6), (3, 3), (5, 1), (11, 1)]),
            (22, &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)]),
            (23, &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)]),
            (24, &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)]),
        ];
        for (v, factors) in expected {
            let product: BigUint = factors
                .iter()
                .map(|&(p, e)| BigUint::from(p).pow(e))
                .product();
            assert_eq!(mathieu_order(v).unwrap(), product, "M{v}");
        }
    }

    #[test]
    fn psl2_orders_by_parity() {
        for q in 4..=10_000u64 {
            let Some(pp) = decompose_prime_power(q).unwrap() else { continue };
            let qb = BigUint::from(q);
            let full = (&qb + 1u32) * &qb * (&qb - 1u32);
            let expected = if q % 2 == 1 { full / 2u32 } else { full };
            assert_eq!(psl2_order(&pp), expected, "q={q}");
        }
    }

    #[test]
    fn tower_divisor_parameter() {
        let q = PrimePower::new(9).unwrap();
        assert_eq!(psl2_tower_order(&q, 4).unwrap(), order_for(Family::PGammaL2, 9).unwrap());
        assert!(psl2_tower_order(&q, 3).is_err());
    }

    #[test]
    fn catalog_membership() {
        let tags = |v| -> Vec<Family> { catalog_for_degree(v).iter().map(|g| g.family).collect() };
        assert!(tags(32).contains(&Family::AGammaL1));
        assert!(tags(12).contains(&Family::Mathieu) && tags(12).contains(&Family::M11On12));
        assert_eq!(tags(9), vec![Family::Alt, Family::Psl2, Family::PSigmaL2]);
        assert_eq!(tags(16), vec![Family::SlD2, Family::A7Affine, Family::Alt]);
        assert_eq!(tags(4), vec![Family::SlD2]);
        assert_eq!(tags(14), vec![Family::Alt, Family::Psl2, Family::Pgl2]);
        assert!(tags(23).contains(&Family::Mathieu));
    }

    #[test]
    fn catalog_is_two_transitive() {
        for v in 4..=10_000u64 {
            for (family, param) in catalog_members(v) {
                // v!/2 for every v up to 10^4 is needlessly slow; A_v is
                // (v-2)-transitive by a separate argument.
                if family == Family::Alt && v > 400 {
                    continue;
                }
                let g = GroupSpec::build(family, param).unwrap();
                let pairs = BigUint::from(v) * (v - 1);
                assert_eq!(&g.two_point_stab_order * &pairs, g.order, "{} at v={v}", g.label());
            }
        }
    }

    #[test]
    fn family_tags_parse() {
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
        }
        assert!("PSL3".parse::<Family>().is_err());
    }
}

//! Counting identities and necessary conditions for `t-(v,k,λ)` designs.
//!
//! All quantities are exact. The block-through-`s`-points count `λ_s` is a
//! rational on purpose: a non-integral `λ_s` is an elimination witness, not
//! an error.

use crate::arith::{binomial, isqrt};
use crate::dec;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A candidate parameter set `t-(v,k,λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DesignParams {
    #[serde(with = "dec::u32_str")]
    pub t: u32,
    #[serde(with = "dec::biguint")]
    pub v: BigUint,
    #[serde(with = "dec::biguint")]
    pub k: BigUint,
    #[serde(with = "dec::biguint")]
    pub lambda: BigUint,
}

impl DesignParams {
    /// Checks `1 ≤ t ≤ k ≤ v` and `λ ≥ 1`.
    pub fn new(
        t: u32,
        v: impl Into<BigUint>,
        k: impl Into<BigUint>,
        lambda: impl Into<BigUint>,
    ) -> Result<Self> {
        let params = DesignParams {
            t,
            v: v.into(),
            k: k.into(),
            lambda: lambda.into(),
        };
        params.validate()?;
        Ok(params)
    }

    /// A Steiner 6-design candidate `6-(v,k,1)`.
    pub fn steiner6(v: impl Into<BigUint>, k: impl Into<BigUint>) -> Result<Self> {
        Self::new(6, v, k, 1u32)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(Error::InvalidParams("t must be positive".into()));
        }
        if self.lambda.is_zero() {
            return Err(Error::InvalidParams("lambda must be positive".into()));
        }
        if BigUint::from(self.t) > self.k || self.k > self.v {
            return Err(Error::InvalidParams(format!(
                "need t <= k <= v, got {self}"
            )));
        }
        Ok(())
    }

    /// `t < k < v`.
    pub fn is_nontrivial(&self) -> bool {
        BigUint::from(self.t) < self.k && self.k < self.v
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-({},{},{})", self.t, self.v, self.k, self.lambda)
    }
}

/// `b`, `r` and every `λ_s`, keyed by `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedCounts {
    pub b: BigRational,
    pub r: BigRational,
    pub lambda_s: BTreeMap<u32, BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub tits_holds: bool,
    pub cameron_holds: bool,
    pub cameron_equality: bool,
    pub equality_triple_known: bool,
    #[serde(with = "dec::opt_biguint")]
    pub k_max_t6: Option<BigUint>,
}

/// One row of the divisibility sieve: does `C(k-s, t-s)` divide `λ C(v-s, t-s)`?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityRow {
    #[serde(with = "dec::u32_str")]
    pub s: u32,
    pub passes: bool,
    #[serde(with = "dec::biguint")]
    pub numerator: BigUint,
    #[serde(with = "dec::biguint")]
    pub denominator: BigUint,
}

/// `(t, k, v)` triples attaining equality in Cameron's bound.
pub const CAMERON_EQUALITY_TRIPLES: [(u32, u32, u32); 5] =
    [(3, 4, 8), (3, 6, 22), (3, 12, 112), (4, 7, 23), (5, 8, 24)];

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `λ_s = λ C(v-s, t-s) / C(k-s, t-s)`, exact.
pub fn lambda_s(params: &DesignParams, s: u32) -> Result<BigRational> {
    params.validate()?;
    if s > params.t {
        return Err(Error::SubsetSizeOutOfRange { s, t: params.t });
    }
    let row = divisibility_row(params, s);
    Ok(ratio(row.numerator, row.denominator))
}

fn divisibility_row(params: &DesignParams, s: u32) -> DivisibilityRow {
    let width = u64::from(params.t - s);
    let numerator = &params.lambda * binomial(&(&params.v - s), width);
    let denominator = binomial(&(&params.k - s), width);
    let passes = (&numerator % &denominator).is_zero();
    DivisibilityRow {
        s,
        passes,
        numerator,
        denominator,
    }
}

/// `b = λ C(v,t) / C(k,t)`.
pub fn block_count(params: &DesignParams) -> Result<BigRational> {
    lambda_s(params, 0)
}

pub fn derived_counts(params: &DesignParams) -> Result<DerivedCounts> {
    let lambda_s = (0..=params.t)
        .map(|s| lambda_s(params, s).map(|value| (s, value)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(DerivedCounts {
        b: lambda_s[&0].clone(),
        r: lambda_s.get(&1).cloned().unwrap_or_else(|| lambda_s[&0].clone()),
        lambda_s,
    })
}

/// Rows for `s = 1..=t`, ascending.
pub fn divisibility_check(params: &DesignParams) -> Result<Vec<DivisibilityRow>> {
    params.validate()?;
    Ok((1..=params.t).map(|s| divisibility_row(params, s)).collect())
}

/// All divisibility rows pass and `b` is an integer.
pub fn is_divisibility_admissible(params: &DesignParams) -> Result<bool> {
    let rows = divisibility_check(params)?;
    Ok(rows.iter().all(|r| r.passes) && block_count(params)?.is_integer())
}

/// The failing row with the largest `s`, i.e. the first one met when the
/// sieve is walked down from `s = t`.
pub fn highest_failure(rows: &[DivisibilityRow]) -> Option<&DivisibilityRow> {
    rows.iter().rev().find(|r| !r.passes)
}

/// Largest `k` with `(k-4)(k-5) ≤ v-5`, the integer form of
/// `⌊√(v − 19/4) + 9/2⌋`. `None` for `v < 5`.
pub fn k_max_t6(v: &BigUint) -> Option<BigUint> {
    if *v < BigUint::from(5u32) {
        return None;
    }
    let n = v - 5u32;
    // x(x-1) ≤ n  ⇔  x ≤ (1 + √(4n+1)) / 2, with x = k - 4
    let root = isqrt(&(&n * 4u32 + 1u32));
    let mut x = (root + 1u32) >> 1;
    while &x * (&x - 1u32) > n {
        x -= 1u32;
    }
    while (&x + 1u32) * &x <= n {
        x += 1u32;
    }
    Some(x + 4u32)
}

/// Every `k` with `7 ≤ k ≤ k_max_t6(v)`, ascending; empty for `v < 8`.
pub fn k_candidates_t6(v: u64) -> Vec<u64> {
    match k_max_t6(&BigUint::from(v)).and_then(|k| k.to_u64()) {
        Some(k_max) => (7..=k_max).collect(),
        None => Vec::new(),
    }
}

/// Tits and Cameron lower bounds on `v` for a non-trivial Steiner system.
///
/// `λ` is not consulted; the bounds are stated for `λ = 1`.
pub fn check_bounds(params: &DesignParams) -> Result<BoundReport> {
    params.validate()?;
    if !params.is_nontrivial() {
        return Err(Error::TrivialParams(params.to_string()));
    }
    let t = BigUint::from(params.t);
    let (v, k) = (&params.v, &params.k);
    let tits_rhs = (&t + 1u32) * (k - &t + 1u32);
    let tits_holds = *v >= tits_rhs;

    let (cameron_holds, cameron_equality) = if params.t > 2 {
        let lhs = v - &t + 1u32;
        let rhs = (k - &t + 2u32) * (k - &t + 1u32);
        (lhs >= rhs, lhs == rhs)
    } else {
        (true, false)
    };
    let equality_triple_known = cameron_equality
        && CAMERON_EQUALITY_TRIPLES.iter().any(|&(tt, kk, vv)| {
            tt == params.t && *k == BigUint::from(kk) && *v == BigUint::from(vv)
        });
    let k_max_t6 = if params.t == 6 { k_max_t6(v) } else { None };
    Ok(BoundReport {
        tits_holds,
        cameron_holds,
        cameron_equality,
        equality_triple_known,
        k_max_t6,
    })
}

/// `(t+1)(k-t+1)`, the Tits lower bound on `v`.
pub fn tits_rhs(t: u32, k: &BigUint) -> BigUint {
    let t = BigUint::from(t);
    (&t + 1u32) * (k - &t + 1u32)
}

/// True when `x` is a whole number.
pub fn is_integral(x: &BigRational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(t: u32, v: u64, k: u64, l: u64) -> DesignParams {
        DesignParams::new(t, v, k, l).unwrap()
    }

    #[test]
    fn lambda_s_examples() {
        assert_eq!(lambda_s(&p(6, 16, 7, 1), 1).unwrap(), r(1001, 2));
        assert_eq!(lambda_s(&p(6, 16, 7, 1), 6).unwrap(), r(1, 1));
        assert_eq!(lambda_s(&p(2, 7, 3, 1), 1).unwrap(), r(3, 1));
        assert_eq!(lambda_s(&p(6, 30, 9, 4), 6).unwrap(), r(4, 1));
    }

    #[test]
    fn lambda_s_out_of_range() {
        assert_eq!(
            lambda_s(&p(6, 16, 7, 1), 7),
            Err(Error::SubsetSizeOutOfRange { s: 7, t: 6 })
        );
    }

    #[test]
    fn malformed_params_rejected() {
        assert!(DesignParams::new(6, 10u32, 5u32, 1u32).is_err());
        assert!(DesignParams::new(6, 10u32, 11u32, 1u32).is_err());
        assert!(DesignParams::new(0, 10u32, 5u32, 1u32).is_err());
        assert!(DesignParams::new(2, 10u32, 5u32, 0u32).is_err());
    }

    #[test]
    fn block_count_examples() {
        let b = block_count(&p(6, 32, 7, 1)).unwrap();
        assert_eq!(b, r(129_456, 1));
        assert_eq!(b.numer() % 29, 0.into());
        assert_eq!(block_count(&p(6, 23, 7, 1)).unwrap(), r(14_421, 1));
        assert_eq!(block_count(&p(4, 9, 9, 1)).unwrap(), r(1, 1));
    }

    #[test]
    fn divisibility_examples() {
        let rows = divisibility_check(&p(6, 12, 7, 1)).unwrap();
        let fail = highest_failure(&rows).unwrap();
        assert_eq!(fail.s, 5);
        assert_eq!(fail.numerator, BigUint::from(7u32));
        assert_eq!(fail.denominator, BigUint::from(2u32));

        let rows = divisibility_check(&p(6, 23, 7, 1)).unwrap();
        assert!(rows.iter().all(|r| r.passes));
        assert_eq!(rows[4].numerator, BigUint::from(18u32));

        let rows = divisibility_check(&p(4, 11, 4, 1)).unwrap();
        assert!(rows.iter().all(|r| r.passes && r.denominator == BigUint::one()));
    }

    #[test]
    fn divisibility_ascending_s() {
        let rows = divisibility_check(&p(5, 24, 8, 1)).unwrap();
        let s: Vec<u32> = rows.iter().map(|r| r.s).collect();
        assert_eq!(s, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn bounds_examples() {
        let rep = check_bounds(&p(6, 32, 7, 1)).unwrap();
        assert_eq!(rep.k_max_t6, Some(BigUint::from(9u32)));
        let rep = check_bounds(&p(5, 24, 8, 1)).unwrap();
        assert!(rep.cameron_equality && rep.equality_triple_known && rep.cameron_holds);
        assert_eq!(rep.k_max_t6, None);
        // v=8 admits no k above 6
        assert_eq!(k_max_t6(&BigUint::from(8u32)), Some(BigUint::from(6u32)));
        let rep = check_bounds(&p(6, 11, 7, 1)).unwrap();
        assert!(!rep.tits_holds);
        assert!(rep.cameron_holds);
    }

    #[test]
    fn bounds_reject_trivial() {
        assert!(matches!(
            check_bounds(&p(6, 8, 8, 1)),
            Err(Error::TrivialParams(_))
        ));
        assert!(check_bounds(&p(6, 9, 6, 1)).is_err());
    }

    #[test]
    fn cameron_vacuous_for_small_t() {
        let rep = check_bounds(&p(2, 7, 3, 1)).unwrap();
        assert!(rep.cameron_holds && !rep.cameron_equality);
        assert!(rep.tits_holds);
    }

    #[test]
    fn k_candidates_examples() {
        assert_eq!(k_candidates_t6(32), vec![7, 8, 9]);
        assert_eq!(k_candidates_t6(8), Vec::<u64>::new());
        assert_eq!(k_candidates_t6(24), vec![7, 8]);
        assert_eq!(k_candidates_t6(16), vec![7]);
        assert_eq!(k_candidates_t6(12), vec![7]);
        assert_eq!(k_candidates_t6(4), Vec::<u64>::new());
    }

    #[test]
    fn k_max_matches_floor_formula() {
        // The floating-point closed form is only a sanity oracle here.
        for v in 8u64..=1_000_000 {
            let float = ((v as f64 - 4.75).sqrt() + 4.5).floor() as u64;
            let exact = k_max_t6(&BigUint::from(v)).unwrap();
            assert_eq!(exact, BigUint::from(float), "v={v}");
        }
    }

    #[test]
    fn derived_counts_consistent() {
        let c = derived_counts(&p(5, 24, 8, 1)).unwrap();
        assert_eq!(c.b, r(759, 1));
        assert_eq!(c.r, r(253, 1));
        assert_eq!(c.lambda_s[&5], r(1, 1));
        assert_eq!(c.lambda_s.len(), 6);
    }
}

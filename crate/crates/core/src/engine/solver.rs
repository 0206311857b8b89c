//! Exhaustive solver for the PSL(2,q) orbit equation
//!
//! ```text
//! m · n_eff · (q-2)(q-3)(q-4) = k(k-1)(k-2)(k-3)(k-4)(k-5) · extra
//! ```
//!
//! over prime powers `q` in a finite window. The lower end comes from
//! Cameron's bound at `v = q+1` (`q - 4 ≥ (k-4)(k-5)`); the upper end from
//! `m · n_eff ≥ 1`, which gives `(q-4)^3 < K · extra`.

use crate::arith::{iroot, primes_up_to, shifted_cubic, six_product, two_adic_valuation};
use crate::dec;
use crate::design::{block_count, divisibility_check, highest_failure, DesignParams};
use crate::error::{Error, Result};
use crate::groups::{psl2_order, PrimePower};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// How the factor `n` on the left-hand side is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NEff {
    Fixed(u64),
    /// `gcd(2, q-1)`, i.e. 1 for even `q` and 2 for odd `q`.
    GcdTwo,
}

impl NEff {
    pub fn at(self, q: &PrimePower) -> u64 {
        match self {
            NEff::Fixed(n) => n,
            NEff::GcdTwo => q.n(),
        }
    }
}

/// Which prime powers a case quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldRestriction {
    Any,
    /// `p > 3`, hence `q` odd.
    CharacteristicAbove3,
    Characteristic(u64),
    /// `q = p^e` with `e` a power of two (including `e = 1`).
    CharacteristicTwoPowerDegree(u64),
}

impl FieldRestriction {
    pub fn admits(self, q: &PrimePower) -> bool {
        match self {
            FieldRestriction::Any => true,
            FieldRestriction::CharacteristicAbove3 => q.p > 3,
            FieldRestriction::Characteristic(p) => q.p == p,
            FieldRestriction::CharacteristicTwoPowerDegree(p) => {
                q.p == p && q.e.is_power_of_two()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    /// The divisibility sieve on `6-(q+1, k, 1)`.
    Divisibility,
    /// `m` divides `|PSL(2,q)|`.
    Lagrange,
    /// `PSL(2,q)` itself must be 3-homogeneous: `q` even or `q ≡ 3 (mod 4)`.
    ThreeHomogeneous,
    /// `m = 1` is impossible for odd `q`: every involution fixes a block.
    Involution,
    /// For even `q` and `m · n = 1` the two sides have different 2-adic
    /// valuations.
    TwoAdic,
}

impl Filter {
    pub const ALL: [Filter; 5] = [
        Filter::Divisibility,
        Filter::Lagrange,
        Filter::ThreeHomogeneous,
        Filter::Involution,
        Filter::TwoAdic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Filter::Divisibility => "divisibility",
            Filter::Lagrange => "lagrange",
            Filter::ThreeHomogeneous => "three-homogeneous",
            Filter::Involution => "involution",
            Filter::TwoAdic => "two-adic",
        }
    }

    /// Name of the integer recorded when this filter rejects a solution.
    pub fn evidence_name(self) -> &'static str {
        match self {
            Filter::Divisibility => "s",
            Filter::Lagrange => "order_mod_m",
            Filter::ThreeHomogeneous => "q_mod_4",
            Filter::Involution => "m",
            Filter::TwoAdic => "v2_lhs",
        }
    }

    pub fn parse_list<S: AsRef<str>>(names: &[S]) -> Result<Vec<Filter>> {
        names.iter().map(|n| n.as_ref().parse()).collect()
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFilter(s.to_string()))
    }
}

/// One instance of the orbit equation with `q` and `m` left free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PslCase {
    pub k: u64,
    pub n_eff: NEff,
    pub extra_rhs_factor: u64,
    pub restriction: FieldRestriction,
}

impl PslCase {
    pub fn new(k: u64, n_eff: NEff, extra_rhs_factor: u64) -> Self {
        PslCase {
            k,
            n_eff,
            extra_rhs_factor,
            restriction: FieldRestriction::Any,
        }
    }

    pub fn restricted(self, restriction: FieldRestriction) -> Self {
        PslCase {
            restriction,
            ..self
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k < 7 {
            return Err(Error::OutOfRange(format!("orbit equation needs k >= 7, got {}", self.k)));
        }
        if self.extra_rhs_factor == 0 || self.n_eff == NEff::Fixed(0) {
            return Err(Error::OutOfRange("equation factors must be positive".into()));
        }
        Ok(())
    }

    /// `K · extra`.
    pub fn rhs(&self) -> BigUint {
        six_product(&BigUint::from(self.k)) * self.extra_rhs_factor
    }

    /// Inclusive `q` window `[max(5, (k-4)(k-5)+4), ⌊∛(K·extra)⌋ + 5]`.
    pub fn q_range(&self) -> Result<(u64, u64)> {
        self.validate()?;
        let lo = ((self.k - 4) * (self.k - 5) + 4).max(5);
        let hi = (iroot(&self.rhs(), 3) + 5u32)
            .to_u64()
            .ok_or_else(|| Error::OutOfRange("q window exceeds 64 bits".into()))?;
        Ok((lo, hi))
    }
}

/// Why a filter rejected a solution, with its integer evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub filter: Filter,
    #[serde(with = "dec::biguint")]
    pub evidence: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiophantineSolution {
    #[serde(with = "dec::u64_str")]
    pub q: u64,
    #[serde(with = "dec::u64_str")]
    pub k: u64,
    #[serde(with = "dec::biguint")]
    pub m: BigUint,
    #[serde(with = "dec::u64_str")]
    pub n_eff: u64,
    #[serde(with = "dec::u64_str")]
    pub extra_rhs_factor: u64,
    pub passed_filters: Vec<Filter>,
    pub rejected_by: Option<Rejection>,
}

impl DiophantineSolution {
    pub fn survives(&self) -> bool {
        self.rejected_by.is_none()
    }

    /// Re-evaluates both sides of the equation.
    pub fn satisfies_equation(&self) -> bool {
        let lhs = &self.m * self.n_eff * shifted_cubic(&BigUint::from(self.q));
        let rhs = six_product(&BigUint::from(self.k)) * self.extra_rhs_factor;
        lhs == rhs
    }
}

/// Full solver output including the window that was scanned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PslSweep {
    pub case: PslCase,
    pub q_min: u64,
    pub q_max: u64,
    /// Prime powers in the window admitted by the restriction.
    pub candidates: u64,
    pub solutions: Vec<DiophantineSolution>,
}

impl PslSweep {
    pub fn survivors(&self) -> impl Iterator<Item = &DiophantineSolution> {
        self.solutions.iter().filter(|s| s.survives())
    }
}

/// Prime powers in `[lo, hi]`, ascending, generated from a sieve.
pub fn prime_powers_in(lo: u64, hi: u64) -> Vec<PrimePower> {
    let mut out = Vec::new();
    for p in primes_up_to(hi) {
        let (mut q, mut e) = (p, 1u32);
        loop {
            if q >= lo {
                out.push(PrimePower { q, p, e });
            }
            match q.checked_mul(p) {
                Some(next) if next <= hi => {
                    q = next;
                    e += 1;
                }
                _ => break,
            }
        }
    }
    out.sort_unstable();
    out
}

/// Applies one filter; `Some(evidence)` when it rejects.
pub fn apply_filter(
    filter: Filter,
    q: &PrimePower,
    k: u64,
    m: &BigUint,
    n_eff: u64,
) -> Option<BigUint> {
    match filter {
        Filter::Divisibility => {
            let params = DesignParams::steiner6(q.q + 1, k).ok()?;
            let rows = divisibility_check(&params).ok()?;
            match highest_failure(&rows) {
                Some(row) => Some(BigUint::from(row.s)),
                None if !block_count(&params).ok()?.is_integer() => Some(BigUint::zero()),
                None => None,
            }
        }
        Filter::Lagrange => {
            let rem = psl2_order(q) % m;
            (!rem.is_zero()).then_some(rem)
        }
        Filter::ThreeHomogeneous => {
            (q.p != 2 && q.q % 4 == 1).then(|| BigUint::from(q.q % 4))
        }
        Filter::Involution => (q.p != 2 && m.is_one()).then(|| m.clone()),
        Filter::TwoAdic => {
            if q.p == 2 && m.is_one() && n_eff == 1 {
                two_adic_valuation(&shifted_cubic(&BigUint::from(q.q))).map(BigUint::from)
            } else {
                None
            }
        }
    }
}

/// Every `(q, m)` in the window, then the filters in order.
pub fn sweep_psl_equation(case: &PslCase, filters: &[Filter]) -> Result<PslSweep> {
    let (q_min, q_max) = case.q_range()?;
    let rhs = case.rhs();
    let mut candidates = 0;
    let mut solutions = Vec::new();
    for q in prime_powers_in(q_min, q_max) {
        if !case.restriction.admits(&q) {
            continue;
        }
        candidates += 1;
        let n = case.n_eff.at(&q);
        let lhs_unit = shifted_cubic(&BigUint::from(q.q)) * n;
        let (m, rem) = rhs.div_rem(&lhs_unit);
        if !rem.is_zero() || m.is_zero() {
            continue;
        }
        let mut passed = Vec::new();
        let mut rejected_by = None;
        for &filter in filters {
            match apply_filter(filter, &q, case.k, &m, n) {
                Some(evidence) => {
                    rejected_by = Some(Rejection { filter, evidence });
                    break;
                }
                None => passed.push(filter),
            }
        }
        solutions.push(DiophantineSolution {
            q: q.q,
            k: case.k,
            m,
            n_eff: n,
            extra_rhs_factor: case.extra_rhs_factor,
            passed_filters: passed,
            rejected_by,
        });
    }
    Ok(PslSweep {
        case: *case,
        q_min,
        q_max,
        candidates,
        solutions,
    })
}

/// Solutions with their filter outcomes; filter names as accepted on the
/// command line.
pub fn solve_psl_equation<S: AsRef<str>>(
    case: &PslCase,
    filters: &[S],
) -> Result<Vec<DiophantineSolution>> {
    let filters = Filter::parse_list(filters)?;
    Ok(sweep_psl_equation(case, &filters)?.solutions)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k7_n_equals_g() {
        let case = PslCase::new(7, NEff::GcdTwo, 1);
        let sweep = sweep_psl_equation(
            &case,
            &[Filter::Divisibility, Filter::Lagrange, Filter::ThreeHomogeneous],
        )
        .unwrap();
        assert_eq!((sweep.q_min, sweep.q_max), (10, 22));
        assert_eq!(sweep.solutions.len(), 1);
        let sol = &sweep.solutions[0];
        assert_eq!((sol.q, sol.n_eff), (11, 2));
        assert_eq!(sol.m, BigUint::from(5u32));
        assert!(sol.satisfies_equation());
        assert_eq!(
            sol.rejected_by,
            Some(Rejection {
                filter: Filter::Divisibility,
                evidence: BigUint::from(5u32)
            })
        );
        assert_eq!(sweep.survivors().count(), 0);
    }

    #[test]
    fn q13_never_solves_k7() {
        let sols = solve_psl_equation::<&str>(&PslCase::new(7, NEff::GcdTwo, 1), &[]).unwrap();
        assert!(sols.iter().all(|s| s.q != 13));
        // 11·10·9 = 990 does not divide 5040
        assert_ne!(5040 % 990, 0);
    }

    #[test]
    fn k7_characteristic_above_3() {
        let case = PslCase::new(7, NEff::Fixed(1), 1)
            .restricted(FieldRestriction::CharacteristicAbove3);
        let sweep = sweep_psl_equation(&case, &[Filter::Divisibility]).unwrap();
        let sols: Vec<_> = sweep.solutions.iter().map(|s| (s.q, s.m.clone())).collect();
        assert_eq!(sols, vec![(11, BigUint::from(10u32))]);
        // q ∈ {11, 13, 17, 19} in [10, 20] plus 23? no: window ends at 22
        assert_eq!(sweep.candidates, 4);
    }

    #[test]
    fn k20_window() {
        let case = PslCase::new(20, NEff::Fixed(1), 1);
        let (lo, hi) = case.q_range().unwrap();
        assert_eq!(case.rhs(), BigUint::from(27_907_200u32));
        assert_eq!(lo, 244);
        // ∛27907200 ≈ 303.2
        assert_eq!(hi, 308);
    }

    #[test]
    fn unknown_filter_rejected() {
        let err = solve_psl_equation(&PslCase::new(7, NEff::GcdTwo, 1), &["sieve"]).unwrap_err();
        assert_eq!(err, Error::UnknownFilter("sieve".into()));
    }

    #[test]
    fn small_k_rejected() {
        assert!(PslCase::new(6, NEff::GcdTwo, 1).q_range().is_err());
    }

    #[test]
    fn prime_powers_window() {
        let qs: Vec<u64> = prime_powers_in(8, 32).iter().map(|q| q.q).collect();
        assert_eq!(qs, vec![8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]);
    }

    #[test]
    fn two_power_degree_restriction() {
        let r = FieldRestriction::CharacteristicTwoPowerDegree(3);
        assert!(r.admits(&PrimePower::new(9).unwrap()));
        assert!(r.admits(&PrimePower::new(81).unwrap()));
        assert!(r.admits(&PrimePower::new(3).unwrap()));
        assert!(!r.admits(&PrimePower::new(27).unwrap()));
        assert!(!r.admits(&PrimePower::new(16).unwrap()));
    }

    #[test]
    fn filter_evidence() {
        let q = PrimePower::new(13).unwrap();
        assert_eq!(
            apply_filter(Filter::ThreeHomogeneous, &q, 7, &BigUint::one(), 2),
            Some(BigUint::one())
        );
        assert_eq!(
            apply_filter(Filter::Involution, &q, 7, &BigUint::one(), 1),
            Some(BigUint::one())
        );
        let q = PrimePower::new(32).unwrap();
        assert_eq!(
            apply_filter(Filter::TwoAdic, &q, 7, &BigUint::one(), 1),
            Some(BigUint::from(3u32))
        );
        let q = PrimePower::new(11).unwrap();
        // |PSL(2,11)| = 660 = 7·94 + 2
        assert_eq!(
            apply_filter(Filter::Lagrange, &q, 7, &BigUint::from(7u32), 2),
            Some(BigUint::from(2u32))
        );
    }
}

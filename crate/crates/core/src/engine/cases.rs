//! One function per branch of the Steiner 6-design case analysis.
//!
//! Each branch returns certificates in ascending `k`. Facts that are
//! group-theoretic rather than arithmetic (Kantor's theorem for `A_v`, the
//! involution fixed-point count, the affine `k ≤ 8` subspace argument) enter
//! as named axiom rules; everything else is recomputed.

use super::certificate::{EliminationCertificate, Exact, GroupRef, Rule, Verdict, Witness};
use super::solver::{sweep_psl_equation, FieldRestriction, Filter, NEff, PslCase, PslSweep};
use crate::arith::{binomial_u64, excess_divisor, shifted_cubic, six_product, two_adic_valuation};
use crate::design::{
    block_count, divisibility_check, highest_failure, k_candidates_t6, k_max_t6, lambda_s,
    tits_rhs, DesignParams,
};
use crate::error::{Error, Result};
use crate::groups::{Family, GroupSpec};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

/// Smallest block size of a non-trivial Steiner 6-design.
pub const K_MIN: u64 = 7;
/// The PSL(2,q) analysis splits at `k = 21`.
pub const K_SPLIT: u64 = 21;
/// Upper end of the closed-form checks carried by the `k ≥ 21` certificates.
pub const GATE_K_MAX: u64 = 100_000;
pub const V2_RHS_K_MAX: u64 = 10_000;
pub const V2_LHS_E_MIN: u32 = 3;
pub const V2_LHS_E_MAX: u32 = 60;
/// Default scan limit for the SL(d,2) branch.
pub const AFFINE_D_MAX: u32 = 60;
/// Block size bound from the affine subspace argument.
pub const AFFINE_SUBSPACE_K_MAX: u64 = 8;

pub mod ids {
    pub const AFFINE_1_V8: &str = "affine.1.v8";
    pub const AFFINE_1_V32: &str = "affine.1.v32";
    pub const AFFINE_2: &str = "affine.2";
    pub const AFFINE_3_V16: &str = "affine.3.v16";
    pub const ALT: &str = "almost-simple.alt";
    pub const PSL_N_EQ_G_LARGE: &str = "almost-simple.psl2.N=G.k>=21";
    pub const PSL_N_EQ_G_SMALL: &str = "almost-simple.psl2.N=G.k<21";
    pub const PSL_PODD_LARGE: &str = "almost-simple.psl2.N<G.p>3.k>=21";
    pub const PSL_PODD_SMALL: &str = "almost-simple.psl2.N<G.p>3.k<21";
    pub const MATHIEU: &str = "mathieu";
    pub const M11_ON_12: &str = "m11.v12";

    pub fn cond_a(p: u64) -> String {
        format!("almost-simple.psl2.N<G.p={p}.condA")
    }

    pub fn cond_b_two_power(p: u64) -> String {
        format!("almost-simple.psl2.N<G.p={p}.condB.e=2^j")
    }

    pub fn cond_b_open(p: u64) -> String {
        format!("almost-simple.psl2.N<G.p={p}.condB.e=s^u")
    }
}

/// Switches used to inject faults when testing the regression signal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CaseOptions {
    pub skip_filter: Option<Filter>,
}

impl CaseOptions {
    fn filters(&self, wanted: &[Filter]) -> Vec<Filter> {
        wanted
            .iter()
            .copied()
            .filter(|f| Some(*f) != self.skip_filter)
            .collect()
    }
}

/// Equation, window and filters of one PSL(2,q) sweep branch, keyed by
/// case id so the certificate checker can rebuild it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_eff: NEff,
    pub restriction: FieldRestriction,
    pub filters: Vec<Filter>,
}

pub fn sweep_config(case_id: &str) -> Option<SweepConfig> {
    use Filter::*;
    let cfg = |n_eff, restriction, filters: &[Filter]| SweepConfig {
        n_eff,
        restriction,
        filters: filters.to_vec(),
    };
    if case_id == ids::PSL_N_EQ_G_SMALL {
        return Some(cfg(
            NEff::GcdTwo,
            FieldRestriction::Any,
            &[Divisibility, Lagrange, ThreeHomogeneous],
        ));
    }
    if case_id == ids::PSL_PODD_SMALL {
        return Some(cfg(
            NEff::Fixed(1),
            FieldRestriction::CharacteristicAbove3,
            &[Divisibility, Lagrange, Involution],
        ));
    }
    for p in [2, 3] {
        if case_id == ids::cond_a(p) {
            return Some(cfg(
                NEff::GcdTwo,
                FieldRestriction::Characteristic(p),
                &[Divisibility, Lagrange],
            ));
        }
        if case_id == ids::cond_b_two_power(p) {
            return Some(cfg(
                NEff::GcdTwo,
                FieldRestriction::CharacteristicTwoPowerDegree(p),
                &[Divisibility, Lagrange],
            ));
        }
    }
    None
}

/// `|G| / b = |G| C(k,6) / C(v,6)`: the order a block stabilizer must have
/// under block-transitivity.
pub fn required_block_stab_order(group: &GroupSpec, params: &DesignParams) -> Result<BigRational> {
    params.validate()?;
    if params.t != 6 || params.lambda != BigUint::from(1u32) {
        return Err(Error::InvalidParams(format!(
            "block stabilizer order is defined for Steiner 6-designs, got {params}"
        )));
    }
    if params.v != BigUint::from(group.degree) {
        return Err(Error::InvalidParams(format!(
            "{} acts on {} points, params have v = {}",
            group.label(),
            group.degree,
            params.v
        )));
    }
    let b = block_count(params)?;
    if b.is_zero() {
        return Err(Error::InvalidParams(format!("b is zero for {params}")));
    }
    Ok(BigRational::from_integer(BigInt::from(group.order.clone())) / b)
}

/// Whether `|G|/b` is an integer, which for integral `b` is exactly `b | |G|`.
pub fn block_stab_is_admissible(group: &GroupSpec, params: &DesignParams) -> Result<bool> {
    let quotient = required_block_stab_order(group, params)?;
    Ok(quotient.is_integer() && block_count(params)?.is_integer())
}

fn order_divisor_certificate(
    case_id: &str,
    group: &GroupSpec,
    params: &DesignParams,
    anchor: &str,
) -> Result<Option<EliminationCertificate>> {
    let b = block_count(params)?;
    if !b.is_integer() {
        return Ok(None);
    }
    let b = b.to_integer().to_biguint().expect("b is positive");
    let Some(divisor) = excess_divisor(&b, &group.order) else {
        return Ok(None);
    };
    let quotient = required_block_stab_order(group, params)?;
    Ok(Some(EliminationCertificate::eliminated(
        case_id,
        Some(params.clone()),
        GroupRef::at(group.family, group.param()),
        Rule::OrderDivisor,
        vec![
            Witness::new("divisor", &divisor),
            Witness::new("b", &b),
            Witness::new("b_over_divisor", &b / &divisor),
            Witness::new("group_order", &group.order),
            Witness::new("block_stab_order", quotient),
        ],
        anchor,
    )))
}

fn divisibility_certificate(
    case_id: &str,
    group: GroupRef,
    params: &DesignParams,
    anchor: &str,
) -> Result<Option<EliminationCertificate>> {
    let rows = divisibility_check(params)?;
    Ok(highest_failure(&rows).map(|row| {
        EliminationCertificate::eliminated(
            case_id,
            Some(params.clone()),
            group,
            Rule::Divisibility,
            vec![
                Witness::new("s", row.s),
                Witness::new("numerator", &row.numerator),
                Witness::new("denominator", &row.denominator),
            ],
            anchor,
        )
    }))
}

fn tits_certificate(
    case_id: &str,
    group: GroupRef,
    params: &DesignParams,
    anchor: &str,
) -> Option<EliminationCertificate> {
    let rhs = tits_rhs(params.t, &params.k);
    (params.v < rhs).then(|| {
        EliminationCertificate::eliminated(
            case_id,
            Some(params.clone()),
            group,
            Rule::Bound,
            vec![Witness::new("tits_rhs", rhs), Witness::new("v", &params.v)],
            anchor,
        )
    })
}

/// Affine case (1): AGL(1,8), AΓL(1,8) and AΓL(1,32).
pub fn eliminate_affine_case1() -> Result<Vec<EliminationCertificate>> {
    let mut out = Vec::new();
    let v8 = BigUint::from(8u32);
    let k_max = k_max_t6(&v8).expect("v >= 5");
    for family in [Family::Agl1, Family::AGammaL1] {
        out.push(EliminationCertificate::eliminated(
            ids::AFFINE_1_V8,
            None,
            GroupRef::at(family, 8),
            Rule::Bound,
            vec![
                Witness::new("k_max", &k_max),
                Witness::new("v", 8u32),
                Witness::new("k_min", K_MIN),
            ],
            "affine type, case (1): at v = 8 the t = 6 Cameron bound gives k <= 6",
        ));
    }
    let group = GroupSpec::build(Family::AGammaL1, 32)?;
    for k in k_candidates_t6(32) {
        let params = DesignParams::steiner6(32u32, k)?;
        let cert = order_divisor_certificate(
            ids::AFFINE_1_V32,
            &group,
            &params,
            "affine type, case (1): 29 | b, so 29 | |G| by block-transitivity, but 29 does not divide |AΓL(1,32)|",
        )?
        .ok_or_else(|| Error::InvalidParams(format!("b divides |G| for {params}")))?;
        out.push(cert);
    }
    Ok(out)
}

/// Affine case (2): `G_0 ≅ SL(d,2)`, `d > 3`.
///
/// Takes the subspace argument's conclusion `k ≤ 8` as an axiom and shows
/// that `2^d - 3 | C(k,4)` only for `d = 3`. Every `d` with
/// `2^d - 3 > C(k,4)` is excluded without scanning; `d_max` only widens the
/// explicit scan.
pub fn eliminate_affine_case2(d_max: u32) -> Result<Vec<EliminationCertificate>> {
    if !(4..=62).contains(&d_max) {
        return Err(Error::OutOfRange(format!(
            "d_max must lie in 4..=62, got {d_max}"
        )));
    }
    let mut out = Vec::new();
    for k in K_MIN..=AFFINE_SUBSPACE_K_MAX {
        let target = binomial_u64(k, 4).to_u64().expect("small");
        let matching: Vec<u32> = (3..=d_max)
            .filter(|&d| {
                let m = (1u64 << d) - 3;
                m <= target && target % m == 0
            })
            .collect();
        let threshold = (3..=63u32)
            .find(|&d| (1u64 << d) - 3 > target)
            .expect("C(k,4) is small");
        let max_match = *matching.last().expect("d = 3 always matches for k in 7..=8");
        out.push(EliminationCertificate::eliminated(
            format!("{}.k{k}", ids::AFFINE_2),
            None,
            GroupRef::family(Family::SlD2),
            Rule::EquationUnsolvable,
            vec![
                Witness::new("d_matching_max", max_match),
                Witness::new("d_matching_count", matching.len() as u64),
                Witness::new("k", k),
                Witness::new("binom_k_4", target),
                Witness::new("d_threshold", threshold),
                Witness::new("d_scan_max", d_max),
                Witness::new("k_axiom_max", AFFINE_SUBSPACE_K_MAX),
            ],
            "affine type, case (2): axiom k <= 8 (blocks lie in a 3-space); 2^d - 3 must divide C(k,4), forcing d = 3",
        ));
    }
    Ok(out)
}

/// Affine case (3): `G_0 ≅ A_7` on `2^4` points.
pub fn eliminate_affine_case3() -> Result<EliminationCertificate> {
    let v = BigUint::from(16u32);
    let k_max = k_max_t6(&v).expect("v >= 5");
    let candidates = k_candidates_t6(16);
    debug_assert_eq!(candidates, vec![7]);
    let params = DesignParams::steiner6(16u32, candidates[0])?;
    let r = lambda_s(&params, 1)?;
    Ok(EliminationCertificate::eliminated(
        ids::AFFINE_3_V16,
        Some(params),
        GroupRef::at(Family::A7Affine, 16),
        Rule::Integrality,
        vec![
            Witness::new("lambda_1", r),
            Witness::new("s", 1u32),
            Witness::new("k_max", k_max),
        ],
        "affine type, case (3): k <= 7 at v = 16, and r = lambda_1 is not an integer",
    ))
}

/// Almost simple case (1): `A_v`, via Kantor's classification of
/// 6-transitive actions on Steiner systems.
pub fn eliminate_alternating() -> EliminationCertificate {
    EliminationCertificate::eliminated(
        ids::ALT,
        None,
        GroupRef::family(Family::Alt),
        Rule::AxiomRule,
        vec![
            Witness::new("v_min", K_MIN + 1),
            Witness::new("transitivity_at_v_min", K_MIN - 1),
        ],
        "axiom (Kantor): A_v with v >= 8 is 6-transitive and acts on no non-trivial Steiner 6-design",
    )
}

fn gate_witnesses() -> Vec<Witness> {
    let k = BigUint::from(K_SPLIT);
    let lhs = crate::arith::falling_product(&k, 4);
    let sq = (&k - 4u32) * (&k - 5u32);
    vec![
        Witness::new("gate_k_min", K_SPLIT),
        Witness::new("gate_k_max", GATE_K_MAX),
        Witness::new("gate_lhs_k21", lhs),
        Witness::new("gate_rhs_k21", &sq * &sq * 2u32),
    ]
}

/// `k(k-1)(k-2)(k-3) < 2[(k-4)(k-5)]²` for every `k` in the range.
pub fn gate_holds(k_min: u64, k_max: u64) -> bool {
    (k_min..=k_max).all(|k| {
        let k = u128::from(k);
        let sq = (k - 4) * (k - 5);
        k * (k - 1) * (k - 2) * (k - 3) < 2 * sq * sq
    })
}

/// Minimum of `v_2(k(k-1)...(k-5))` over the range.
pub fn min_six_product_v2(k_min: u64, k_max: u64) -> u64 {
    (k_min..=k_max)
        .map(|k| two_adic_valuation(&six_product(&BigUint::from(k))).expect("nonzero"))
        .min()
        .expect("nonempty range")
}

/// The set of `v_2((q-2)(q-3)(q-4))` over `q = 2^e`; a single value `{3}`
/// when the closed form holds.
pub fn even_q_lhs_v2(e_min: u32, e_max: u32) -> Vec<u64> {
    let mut vals: Vec<u64> = (e_min..=e_max)
        .map(|e| two_adic_valuation(&shifted_cubic(&(BigUint::from(1u32) << e))).expect("nonzero"))
        .collect();
    vals.sort_unstable();
    vals.dedup();
    vals
}

fn sweep_certificate(case_id: &str, sweep: &PslSweep, group: GroupRef, anchor: &str) -> EliminationCertificate {
    let survivors = sweep.survivors().count() as u64;
    let mut witnesses = vec![
        Witness::new("survivors", survivors),
        Witness::new("k", sweep.case.k),
        Witness::new("rhs", sweep.case.rhs()),
        Witness::new("q_min", sweep.q_min),
        Witness::new("q_max", sweep.q_max),
        Witness::new("candidates", sweep.candidates),
    ];
    for sol in &sweep.solutions {
        witnesses.push(Witness::new(format!("q={}.m", sol.q), &sol.m));
        witnesses.push(Witness::new(format!("q={}.n_eff", sol.q), sol.n_eff));
        if let Some(rej) = &sol.rejected_by {
            witnesses.push(Witness::new(
                format!("q={}.rejected.{}.{}", sol.q, rej.filter, rej.filter.evidence_name()),
                &rej.evidence,
            ));
        }
    }
    EliminationCertificate {
        case_id: case_id.to_string(),
        params: None,
        group,
        verdict: if survivors == 0 {
            Verdict::Eliminated
        } else {
            Verdict::Survives
        },
        violated_condition: Some(Rule::EquationUnsolvable),
        witnesses,
        paper_anchor: anchor.to_string(),
    }
}

fn sweep_branch(
    case_id: &str,
    group: GroupRef,
    anchor: &str,
    options: &CaseOptions,
) -> Result<Vec<EliminationCertificate>> {
    let cfg = sweep_config(case_id).expect("sweep branch has a config");
    let filters = options.filters(&cfg.filters);
    (K_MIN..K_SPLIT)
        .into_par_iter()
        .map(|k| {
            let case = PslCase::new(k, cfg.n_eff, 1).restricted(cfg.restriction);
            let sweep = sweep_psl_equation(&case, &filters)?;
            Ok(sweep_certificate(case_id, &sweep, group, anchor))
        })
        .collect()
}

/// Almost simple case (2) with `G = PSL(2,q)`.
pub fn eliminate_psl_n_eq_g(options: &CaseOptions) -> Result<Vec<EliminationCertificate>> {
    let e_vals = even_q_lhs_v2(V2_LHS_E_MIN, V2_LHS_E_MAX);
    let mut witnesses = vec![
        Witness::new("v2_lhs", e_vals[0]),
        Witness::new("e_min", V2_LHS_E_MIN),
        Witness::new("e_max", V2_LHS_E_MAX),
        Witness::new("v2_rhs_min", min_six_product_v2(K_MIN, V2_RHS_K_MAX)),
        Witness::new("k_rhs_max", V2_RHS_K_MAX),
        Witness::new("forced_m_times_n", 1u32),
    ];
    witnesses.extend(gate_witnesses());
    let mut out = vec![EliminationCertificate::eliminated(
        ids::PSL_N_EQ_G_LARGE,
        None,
        GroupRef::family(Family::Psl2),
        Rule::Valuation,
        witnesses,
        "almost simple, case (2), N = G, k >= 21: the gate inequality and q - 4 >= (k-4)(k-5) force |PSL(2,q)_B| n = 1, so q = 2^e; then v2(LHS) = 3 < 4 <= v2(RHS)",
    )];
    out.extend(sweep_branch(
        ids::PSL_N_EQ_G_SMALL,
        GroupRef::family(Family::Psl2),
        "almost simple, case (2), N = G, k < 21: exhaustive solve of (q-2)(q-3)(q-4)|PSL(2,q)_B| n = k(k-1)...(k-5) under q - 4 >= (k-4)(k-5) and the divisibility sieve",
        options,
    )?);
    Ok(out)
}

/// Almost simple case (2), `N < G`, `p > 3`, where `G ∩ PSL(2,q)⋊⟨τ⟩` has
/// two block orbits of equal length and the factor `n = 2` cancels.
pub fn eliminate_psl_n_lt_g_podd(options: &CaseOptions) -> Result<Vec<EliminationCertificate>> {
    let mut witnesses = vec![Witness::new("forced_m", 1u32)];
    witnesses.extend(gate_witnesses());
    let mut out = vec![EliminationCertificate::eliminated(
        ids::PSL_PODD_LARGE,
        None,
        GroupRef::family(Family::PGammaL2),
        Rule::AxiomRule,
        witnesses,
        "axiom (involutions): for k >= 21 the gate forces |PSL(2,q)_B| = 1, but for odd q each involution fixes a unique block",
    )];
    out.extend(sweep_branch(
        ids::PSL_PODD_SMALL,
        GroupRef::family(Family::PGammaL2),
        "almost simple, case (2), N < G, p > 3, k < 21: exhaustive solve of (q-2)(q-3)(q-4)|PSL(2,q)_B| = k(k-1)...(k-5)",
        options,
    )?);
    Ok(out)
}

/// Almost simple case (2), `N < G`, `p ∈ {2, 3}`.
///
/// Condition (A) and condition (B) with `e` a power of two fold back into
/// the `N = G` equation and are eliminated. Condition (B) with `e` an odd
/// prime power is the open family; it is certified as `open` and handed to
/// the residual search.
pub fn eliminate_psl_p2_p3(options: &CaseOptions) -> Result<Vec<EliminationCertificate>> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        let top = if p == 2 { Family::PSigmaL2 } else { Family::PGammaL2 };
        out.extend(sweep_branch(
            &ids::cond_a(p),
            GroupRef::family(top),
            "almost simple, case (2), N < G, condition (A): G = PSL(2,q) ⋊ (G ∩ H) reduces to the N = G equation",
            options,
        )?);
        out.extend(sweep_branch(
            &ids::cond_b_two_power(p),
            GroupRef::family(top),
            "almost simple, case (2), N < G, condition (B) with e a power of 2: a | e and a | |G_B| fold into the N = G equation",
            options,
        )?);
        out.push(EliminationCertificate {
            case_id: ids::cond_b_open(p),
            params: None,
            group: GroupRef::family(Family::PGammaL2),
            verdict: Verdict::Open,
            violated_condition: None,
            witnesses: vec![Witness::new("p", p), Witness::new("s_min", 7u32)],
            paper_anchor: "open family: G = PΓL(2,p^e), p in {2,3}, e = s^u an odd prime power; residual equation (q-2)(q-3)(q-4) 6c = k(k-1)...(k-5) s with s > 6c, c in {1,2,4,5}".into(),
        });
    }
    Ok(out)
}

/// Kills `(v, k)` for a fixed group by the first of: divisibility sieve,
/// block-stabilizer order, Tits bound. A parameter set passing all three is
/// reported as surviving.
fn eliminate_fixed_group(
    case_id: &str,
    group: &GroupSpec,
    k: u64,
    anchor: &str,
) -> Result<EliminationCertificate> {
    let params = DesignParams::steiner6(group.degree, k)?;
    let gref = GroupRef::at(group.family, group.param());
    if let Some(c) = divisibility_certificate(case_id, gref, &params, anchor)? {
        return Ok(c);
    }
    if let Some(c) = order_divisor_certificate(case_id, group, &params, anchor)? {
        return Ok(c);
    }
    if let Some(c) = tits_certificate(case_id, gref, &params, anchor) {
        return Ok(c);
    }
    let b = block_count(&params)?;
    Ok(EliminationCertificate {
        case_id: case_id.to_string(),
        params: Some(params),
        group: gref,
        verdict: Verdict::Survives,
        violated_condition: None,
        witnesses: vec![
            Witness::new("b", Exact::from(b)),
            Witness::new("group_order", &group.order),
        ],
        paper_anchor: anchor.to_string(),
    })
}

/// Almost simple case (3): `M_v` for `v ∈ {11, 12, 22, 23, 24}`.
pub fn eliminate_mathieu() -> Result<Vec<EliminationCertificate>> {
    let mut out = Vec::new();
    for v in [11u64, 12, 22, 23, 24] {
        let group = GroupSpec::build(Family::Mathieu, v)?;
        for k in k_candidates_t6(v) {
            out.push(eliminate_fixed_group(
                &format!("{}.v{v}.k{k}", ids::MATHIEU),
                &group,
                k,
                "almost simple, case (3): k from the t = 6 Cameron bound, then the divisibility sieve and b | |G|",
            )?);
        }
    }
    Ok(out)
}

/// Almost simple case (4): `M_11` on 12 points.
pub fn eliminate_m11_on_12() -> Result<Vec<EliminationCertificate>> {
    let group = GroupSpec::build(Family::M11On12, 12)?;
    k_candidates_t6(12)
        .into_iter()
        .map(|k| {
            eliminate_fixed_group(
                &format!("{}.k{k}", ids::M11_ON_12),
                &group,
                k,
                "almost simple, case (4): k = 7 at v = 12, and no 6-(12,7,1) design passes the divisibility sieve",
            )
        })
        .collect()
}

/// `A_v`, the Mathieu groups and `M_11` on 12 points.
pub fn eliminate_almost_simple_rest() -> Result<Vec<EliminationCertificate>> {
    let mut out = vec![eliminate_alternating()];
    out.extend(eliminate_mathieu()?);
    out.extend(eliminate_m11_on_12()?);
    Ok(out)
}

/// Largest `d` with `2^d - 3 | n`, scanning `d ∈ [3, d_max]`.
pub fn affine_matching_dims(n: u64, d_max: u32) -> Vec<u32> {
    (3..=d_max)
        .filter(|&d| {
            let m = (1u64 << d) - 3;
            m <= n && n % m == 0
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(cert: &EliminationCertificate, name: &str) -> String {
        cert.witness(name).unwrap().to_string()
    }

    #[test]
    fn block_stab_examples() {
        let m23 = GroupSpec::build(Family::Mathieu, 23).unwrap();
        let p = DesignParams::steiner6(23u32, 7u32).unwrap();
        let q = required_block_stab_order(&m23, &p).unwrap();
        assert!(!q.is_integer());
        assert!(!block_stab_is_admissible(&m23, &p).unwrap());

        let ag = GroupSpec::build(Family::AGammaL1, 32).unwrap();
        let p = DesignParams::steiner6(32u32, 7u32).unwrap();
        assert!(!required_block_stab_order(&ag, &p).unwrap().is_integer());

        let p = DesignParams::steiner6(23u32, 23u32).unwrap();
        assert_eq!(
            required_block_stab_order(&m23, &p).unwrap(),
            BigRational::from_integer(BigInt::from(10_200_960u32))
        );
    }

    #[test]
    fn block_stab_rejects_mismatch() {
        let m23 = GroupSpec::build(Family::Mathieu, 23).unwrap();
        let p = DesignParams::steiner6(24u32, 8u32).unwrap();
        assert!(required_block_stab_order(&m23, &p).is_err());
        let p = DesignParams::new(5, 23u32, 7u32, 1u32).unwrap();
        assert!(required_block_stab_order(&m23, &p).is_err());
    }

    #[test]
    fn affine_case1_witnesses() {
        let certs = eliminate_affine_case1().unwrap();
        assert_eq!(certs.len(), 5);
        assert_eq!(w(&certs[0], "k_max"), "6");
        let bs: Vec<String> = certs[2..].iter().map(|c| w(c, "b")).collect();
        assert_eq!(bs, ["129456", "32364", "10788"]);
        assert!(certs[2..].iter().all(|c| w(c, "divisor") == "29"));
        assert_eq!(w(&certs[3], "b_over_divisor"), "1116");
        assert_eq!(w(&certs[4], "b_over_divisor"), "372");
        assert_eq!(w(&certs[2], "group_order"), "4960");
    }

    #[test]
    fn affine_case2_only_d3() {
        let certs = eliminate_affine_case2(AFFINE_D_MAX).unwrap();
        assert_eq!(certs.len(), 2);
        assert_eq!(w(&certs[0], "binom_k_4"), "35");
        assert_eq!(w(&certs[1], "binom_k_4"), "70");
        for c in &certs {
            assert_eq!(w(c, "d_matching_max"), "3");
            assert_eq!(w(c, "d_matching_count"), "1");
        }
        assert_eq!(affine_matching_dims(35, 10), vec![3]);
        assert_eq!(affine_matching_dims(70, 10), vec![3]);
        assert!(eliminate_affine_case2(3).is_err());
    }

    #[test]
    fn affine_case3_half_integer() {
        let c = eliminate_affine_case3().unwrap();
        assert_eq!(w(&c, "lambda_1"), "1001/2");
        assert_eq!(c.violated_condition, Some(Rule::Integrality));
    }

    #[test]
    fn mathieu_rules() {
        let certs = eliminate_mathieu().unwrap();
        let ids: Vec<&str> = certs.iter().map(|c| c.case_id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "mathieu.v11.k7",
                "mathieu.v12.k7",
                "mathieu.v22.k7",
                "mathieu.v22.k8",
                "mathieu.v23.k7",
                "mathieu.v23.k8",
                "mathieu.v24.k7",
                "mathieu.v24.k8"
            ]
        );
        assert!(certs.iter().all(|c| c.verdict == Verdict::Eliminated));
        let v23k7 = &certs[4];
        assert_eq!(v23k7.violated_condition, Some(Rule::OrderDivisor));
        assert_eq!(w(v23k7, "divisor"), "19");
        assert_eq!(w(v23k7, "b"), "14421");
        let v24k8 = &certs[7];
        assert_eq!(v24k8.violated_condition, Some(Rule::Divisibility));
        assert_eq!((w(v24k8, "s").as_str(), w(v24k8, "numerator").as_str(), w(v24k8, "denominator").as_str()), ("5", "19", "3"));
        let v12 = &certs[1];
        assert_eq!((w(v12, "s").as_str(), w(v12, "numerator").as_str()), ("5", "7"));
    }

    #[test]
    fn m11_on_12() {
        let certs = eliminate_m11_on_12().unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].violated_condition, Some(Rule::Divisibility));
        assert_eq!(w(&certs[0], "s"), "5");
    }

    #[test]
    fn gate_and_valuations() {
        assert!(gate_holds(21, 1000));
        assert!(!gate_holds(20, 20));
        assert_eq!(min_six_product_v2(7, 500), 4);
        assert_eq!(even_q_lhs_v2(3, 60), vec![3]);
        let g = gate_witnesses();
        assert_eq!(g[2].value.to_string(), "143640");
        assert_eq!(g[3].value.to_string(), "147968");
    }

    #[test]
    fn psl_sweeps_have_no_survivors() {
        let opts = CaseOptions::default();
        for certs in [
            eliminate_psl_n_eq_g(&opts).unwrap(),
            eliminate_psl_n_lt_g_podd(&opts).unwrap(),
        ] {
            assert_eq!(certs.len(), 15);
            assert!(certs.iter().all(|c| c.verdict == Verdict::Eliminated));
        }
        let certs = eliminate_psl_p2_p3(&opts).unwrap();
        assert_eq!(certs.len(), 2 * (14 + 14 + 1));
        let open: Vec<&str> = certs
            .iter()
            .filter(|c| c.verdict == Verdict::Open)
            .map(|c| c.case_id.as_str())
            .collect();
        assert_eq!(
            open,
            [
                "almost-simple.psl2.N<G.p=2.condB.e=s^u",
                "almost-simple.psl2.N<G.p=3.condB.e=s^u"
            ]
        );
    }

    #[test]
    fn q11_rejected_at_s5() {
        let certs = eliminate_psl_n_eq_g(&CaseOptions::default()).unwrap();
        let k7 = &certs[1];
        assert_eq!(w(k7, "k"), "7");
        assert_eq!(w(k7, "q=11.m"), "5");
        assert_eq!(w(k7, "q=11.n_eff"), "2");
        assert_eq!(w(k7, "q=11.rejected.divisibility.s"), "5");
    }

    #[test]
    fn skipping_divisibility_leaves_a_survivor() {
        let opts = CaseOptions {
            skip_filter: Some(Filter::Divisibility),
        };
        let certs = eliminate_psl_n_eq_g(&opts).unwrap();
        assert_eq!(certs[1].verdict, Verdict::Survives);
    }
}

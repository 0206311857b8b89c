//! Re-derives every witness of a certificate from scratch and confirms the
//! violation it claims.
//!
//! The checker deliberately takes other routes than the engine where one
//! exists: `λ_s` by the downward recursion `λ_s = λ_{s+1}(v-s)/(k-s)`,
//! `k_max` by a linear scan, root bounds by incremental search, and PSL
//! sweeps by testing every integer in the window with the trial-division
//! prime-power decomposition.

use super::cases::{
    ids, sweep_config, AFFINE_D_MAX, AFFINE_SUBSPACE_K_MAX, GATE_K_MAX, K_MIN, K_SPLIT, V2_LHS_E_MAX,
    V2_LHS_E_MIN, V2_RHS_K_MAX,
};
use super::certificate::{EliminationCertificate, Exact, Rule, Verdict, Witness};
use super::solver::apply_filter;
use crate::arith::{excess_divisor, shifted_cubic, six_product};
use crate::design::DesignParams;
use crate::groups::{decompose_prime_power, order_for, Family};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckError {
    pub case_id: String,
    pub reason: String,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.case_id, self.reason)
    }
}

impl std::error::Error for CheckError {}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same_witnesses(cert: &EliminationCertificate, expected: &[Witness]) -> Check {
    if cert.witnesses == expected {
        return Ok(());
    }
    let got: Vec<String> = cert
        .witnesses
        .iter()
        .map(|w| format!("{}={}", w.name, w.value))
        .collect();
    let want: Vec<String> = expected
        .iter()
        .map(|w| format!("{}={}", w.name, w.value))
        .collect();
    Err(format!("witnesses [{}] do not re-evaluate to [{}]", got.join(", "), want.join(", ")))
}

fn expect_rule(cert: &EliminationCertificate, rule: Option<Rule>, verdict: Verdict) -> Check {
    ensure(cert.violated_condition == rule, || {
        format!("expected rule {rule:?}, found {:?}", cert.violated_condition)
    })?;
    ensure(cert.verdict == verdict, || {
        format!("expected verdict {verdict}, found {}", cert.verdict)
    })
}

/// Checks one certificate.
pub fn verify_certificate(cert: &EliminationCertificate) -> std::result::Result<(), CheckError> {
    check(cert).map_err(|reason| CheckError {
        case_id: cert.case_id.clone(),
        reason,
    })
}

/// Checks every certificate; returns all failures.
pub fn verify_all(certs: &[EliminationCertificate]) -> Vec<CheckError> {
    certs
        .iter()
        .filter_map(|c| verify_certificate(c).err())
        .collect()
}

fn check(cert: &EliminationCertificate) -> Check {
    let mut names = HashSet::new();
    for w in &cert.witnesses {
        ensure(names.insert(w.name.as_str()), || format!("duplicate witness {}", w.name))?;
    }
    let id = cert.case_id.as_str();
    if id == ids::AFFINE_1_V8 {
        return check_v8(cert);
    }
    if id == ids::AFFINE_3_V16 {
        return check_affine3(cert);
    }
    if id == ids::ALT {
        return check_alt(cert);
    }
    if id == ids::PSL_N_EQ_G_LARGE {
        return check_n_eq_g_large(cert);
    }
    if id == ids::PSL_PODD_LARGE {
        return check_podd_large(cert);
    }
    if let Some(k) = id
        .strip_prefix(ids::AFFINE_2)
        .and_then(|rest| rest.strip_prefix(".k"))
    {
        return check_affine2(cert, k);
    }
    if sweep_config(id).is_some() {
        return check_sweep(cert);
    }
    for p in [2u64, 3] {
        if id == ids::cond_b_open(p) {
            return check_open(cert, p);
        }
    }
    if id == ids::AFFINE_1_V32
        || id.starts_with(&format!("{}.", ids::MATHIEU))
        || id.starts_with(&format!("{}.", ids::M11_ON_12))
    {
        return check_fixed_group(cert);
    }
    Err("unknown case id".into())
}

/// `λ_0, ..., λ_t` by recursion down from `λ_t = λ`.
fn lambdas_by_recursion(p: &DesignParams) -> Vec<BigRational> {
    let t = p.t as usize;
    let v = BigInt::from(p.v.clone());
    let k = BigInt::from(p.k.clone());
    let mut out = vec![BigRational::zero(); t + 1];
    out[t] = BigRational::from_integer(BigInt::from(p.lambda.clone()));
    for s in (0..t).rev() {
        let s_big = BigInt::from(s);
        out[s] = &out[s + 1] * BigRational::new(&v - &s_big, &k - &s_big);
    }
    out
}

fn k_max_by_scan(v: u64) -> u64 {
    let mut k = 5;
    while (k + 1 - 4) * (k + 1 - 5) <= v - 5 {
        k += 1;
    }
    k
}

fn witness_u64(cert: &EliminationCertificate, name: &str) -> std::result::Result<u64, String> {
    cert.uint(name)
        .and_then(|v| v.to_u64())
        .ok_or_else(|| format!("missing or invalid witness {name}"))
}

fn check_v8(cert: &EliminationCertificate) -> Check {
    expect_rule(cert, Some(Rule::Bound), Verdict::Eliminated)?;
    ensure(
        matches!(cert.group.family, Family::Agl1 | Family::AGammaL1) && cert.group.param == Some(8),
        || "group must be AGL(1,8) or AΓL(1,8)".into(),
    )?;
    let k_max = k_max_by_scan(8);
    ensure(k_max < K_MIN, || format!("k_max = {k_max} admits k = 7"))?;
    same_witnesses(
        cert,
        &[
            Witness::new("k_max", k_max),
            Witness::new("v", 8u32),
            Witness::new("k_min", K_MIN),
        ],
    )
}

fn check_affine2(cert: &EliminationCertificate, k_text: &str) -> Check {
    expect_rule(cert, Some(Rule::EquationUnsolvable), Verdict::Eliminated)?;
    let k: u64 = k_text.parse().map_err(|_| format!("bad k in case id: {k_text}"))?;
    ensure((K_MIN..=AFFINE_SUBSPACE_K_MAX).contains(&k), || format!("k = {k} outside the axiom range"))?;
    let d_max = witness_u64(cert, "d_scan_max")?;
    ensure(d_max == u64::from(AFFINE_D_MAX), || format!("d_scan_max = {d_max}, suite scans to {AFFINE_D_MAX}"))?;
    // C(k,4) by the factorial formula
    let target = (k * (k - 1) * (k - 2) * (k - 3)) / 24;
    let mut matching = Vec::new();
    let mut threshold = None;
    for d in 3..=63u64 {
        let m = (1u64 << d) - 3;
        if m > target && threshold.is_none() {
            threshold = Some(d);
        }
        if d <= d_max && target % m == 0 {
            matching.push(d);
        }
    }
    ensure(matching == [3], || format!("2^d - 3 | C(k,4) for d in {matching:?}"))?;
    same_witnesses(
        cert,
        &[
            Witness::new("d_matching_max", 3u32),
            Witness::new("d_matching_count", 1u32),
            Witness::new("k", k),
            Witness::new("binom_k_4", target),
            Witness::new("d_threshold", threshold.expect("C(k,4) < 2^63")),
            Witness::new("d_scan_max", d_max),
            Witness::new("k_axiom_max", AFFINE_SUBSPACE_K_MAX),
        ],
    )
}

fn check_affine3(cert: &EliminationCertificate) -> Check {
    expect_rule(cert, Some(Rule::Integrality), Verdict::Eliminated)?;
    ensure(cert.group.family == Family::A7Affine, || "group must be 2^4:A7".into())?;
    let k_max = k_max_by_scan(16);
    let params = DesignParams::steiner6(16u32, k_max).map_err(|e| e.to_string())?;
    ensure(cert.params.as_ref() == Some(&params), || format!("params must be {params}"))?;
    let r = lambdas_by_recursion(&params)[1].clone();
    ensure(!r.is_integer(), || "lambda_1 is an integer".into())?;
    same_witnesses(
        cert,
        &[
            Witness::new("lambda_1", r),
            Witness::new("s", 1u32),
            Witness::new("k_max", k_max),
        ],
    )
}

fn check_alt(cert: &EliminationCertificate) -> Check {
    expect_rule(cert, Some(Rule::AxiomRule), Verdict::Eliminated)?;
    ensure(cert.group.family == Family::Alt, || "group must be Alt".into())?;
    // smallest v with a non-trivial 6-(v,k,1), k ≥ 7; A_v is (v-2)-transitive
    let v_min = K_MIN + 1;
    ensure(v_min - 2 >= 6, || "A_v_min is not 6-transitive".into())?;
    same_witnesses(
        cert,
        &[
            Witness::new("v_min", v_min),
            Witness::new("transitivity_at_v_min", v_min - 2),
        ],
    )
}

fn v2(mut n: u128) -> u64 {
    let mut c = 0;
    while n % 2 == 0 {
        n /= 2;
        c += 1;
    }
    c
}

fn gate_witnesses_checked() -> std::result::Result<Vec<Witness>, String> {
    let mut lhs21 = 0u128;
    let mut rhs21 = 0u128;
    for k in K_SPLIT..=GATE_K_MAX {
        let k = u128::from(k);
        let lhs = k * (k - 1) * (k - 2) * (k - 3);
        let sq = (k - 4) * (k - 5);
        let rhs = 2 * sq * sq;
        ensure(lhs < rhs, || format!("gate fails at k = {k}"))?;
        if k == u128::from(K_SPLIT) {
            (lhs21, rhs21) = (lhs, rhs);
        }
    }
    let k = u128::from(K_SPLIT - 1);
    let sq = (k - 4) * (k - 5);
    ensure(k * (k - 1) * (k - 2) * (k - 3) >= 2 * sq * sq, || "gate already holds at k = 20".into())?;
    Ok(vec![
        Witness::new("gate_k_min", K_SPLIT),
        Witness::new("gate_k_max", GATE_K_MAX),
        Witness::new("gate_lhs_k21", BigUint::from(lhs21)),
        Witness::new("gate_rhs_k21", BigUint::from(rhs21)),
    ])
}

fn check_n_eq_g_large(cert: &EliminationCertificate) -> Check {
    expect_rule(cert, Some(Rule::Valuation), Verdict::Eliminated)?;
    let lhs_vals: HashSet<u64> = (V2_LHS_E_MIN..=V2_LHS_E_MAX)
        .map(|e| {
            let q = 1u128 << e;
            v2(q - 2) + v2(q - 3) + v2(q - 4)
        })
        .collect();
    ensure(lhs_vals.len() == 1, || format!("v2 of the left side varies: {lhs_vals:?}"))?;
    let lhs_v2 = *lhs_vals.iter().next().expect("nonempty");
    let rhs_min = (K_MIN..=V2_RHS_K_MAX)
        .map(|k| {
            let k = u128::from(k);
            (0..6).map(|i| v2(k - i)).sum::<u64>()
        })
        .min()
        .expect("nonempty");
    ensure(lhs_v2 < rhs_min, || format!("v2 {lhs_v2} is not below {rhs_min}"))?;
    let mut expected = vec![
        Witness::new("v2_lhs", lhs_v2),
        Witness::new("e_min", V2_LHS_E_MIN),
        Witness::new("e_max", V2_LHS_E_MAX),
        Witness::new("v2_rhs_min", rhs_min),
        Witness::new("k_rhs_max", V2_RHS_K_MAX),
        Witness::new("forced_m_times_n", 1u32),
    ];
    expected.extend(gate_witnesses_checked()?);
    same_witnesses(cert, &expected)
}

fn check_podd_large(cert: &EliminationCertificate) -> Check {
    expect_rule(cert, Some(Rule::AxiomRule), Verdict::Eliminated)?;
    let mut expected = vec![Witness::new("forced_m", 1u32)];
    expected.extend(gate_witnesses_checked()?);
    same_witnesses(cert, &expected)
}

fn check_open(cert: &EliminationCertificate, p: u64) -> Check {
    expect_rule(cert, None, Verdict::Open)?;
    ensure(cert.group.family == Family::PGammaL2, || "open family must be PΓL(2,q)".into())?;
    let c_min = 1;
    let s_min = (6 * c_min + 1..)
        .find(|&s: &u64| s > 1 && (2..s).all(|d| s % d != 0))
        .expect("primes are unbounded");
    same_witnesses(cert, &[Witness::new("p", p), Witness::new("s_min", s_min)])
}

/// `⌊∛n⌋` by stepping up from zero in powers of two, then down.
fn cube_root_floor(n: &BigUint) -> u64 {
    let mut hi = 1u64;
    while BigUint::from(hi).pow(3) <= *n {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if BigUint::from(mid).pow(3) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn check_sweep(cert: &EliminationCertificate) -> Check {
    let cfg = sweep_config(&cert.case_id).expect("caller checked");
    let k = witness_u64(cert, "k")?;
    ensure((K_MIN..K_SPLIT).contains(&k), || format!("k = {k} outside 7..=20"))?;
    let rhs = six_product(&BigUint::from(k));
    let q_min = ((k - 4) * (k - 5) + 4).max(5);
    let q_max = cube_root_floor(&rhs) + 5;
    let mut candidates = 0u64;
    let mut survivors = 0u64;
    let mut solution_witnesses = Vec::new();
    for q in q_min..=q_max {
        let Some(pp) = decompose_prime_power(q).map_err(|e| e.to_string())? else {
            continue;
        };
        if !cfg.restriction.admits(&pp) {
            continue;
        }
        candidates += 1;
        let n = cfg.n_eff.at(&pp);
        let unit = shifted_cubic(&BigUint::from(q)) * n;
        if !(&rhs % &unit).is_zero() {
            continue;
        }
        let m = &rhs / &unit;
        ensure(&m * &unit == rhs, || "equation does not balance".into())?;
        solution_witnesses.push(Witness::new(format!("q={q}.m"), &m));
        solution_witnesses.push(Witness::new(format!("q={q}.n_eff"), n));
        let rejected = cfg
            .filters
            .iter()
            .find_map(|&f| apply_filter(f, &pp, k, &m, n).map(|ev| (f, ev)));
        match rejected {
            Some((f, ev)) => solution_witnesses.push(Witness::new(
                format!("q={q}.rejected.{}.{}", f, f.evidence_name()),
                &ev,
            )),
            None => survivors += 1,
        }
    }
    let verdict = if survivors == 0 {
        Verdict::Eliminated
    } else {
        Verdict::Survives
    };
    expect_rule(cert, Some(Rule::EquationUnsolvable), verdict)?;
    let mut expected = vec![
        Witness::new("survivors", survivors),
        Witness::new("k", k),
        Witness::new("rhs", rhs),
        Witness::new("q_min", q_min),
        Witness::new("q_max", q_max),
        Witness::new("candidates", candidates),
    ];
    expected.extend(solution_witnesses);
    same_witnesses(cert, &expected)
}

fn check_fixed_group(cert: &EliminationCertificate) -> Check {
    let params = cert.params.as_ref().ok_or("missing params")?;
    let param = cert.group.param.ok_or("missing group parameter")?;
    let order = order_for(cert.group.family, param).map_err(|e| e.to_string())?;
    let v = params.v.to_u64().ok_or("v too large")?;
    ensure(
        params.t == 6 && params.lambda.is_one() && params.k >= BigUint::from(K_MIN),
        || format!("{params} is not a non-trivial Steiner 6-design candidate"),
    )?;
    let k = params.k.to_u64().ok_or("k too large")?;
    ensure(k <= k_max_by_scan(v), || format!("k = {k} exceeds the Cameron bound at v = {v}"))?;
    let lambdas = lambdas_by_recursion(params);
    match cert.violated_condition {
        Some(Rule::Divisibility) => {
            expect_rule(cert, Some(Rule::Divisibility), Verdict::Eliminated)?;
            let (s, lam) = (1..=6usize)
                .rev()
                .map(|s| (s, &lambdas[s]))
                .find(|(_, l)| !l.is_integer())
                .ok_or("every lambda_s is an integer")?;
            // numerator and denominator as C(v-s,6-s) and C(k-s,6-s)
            let width = 6 - s as u64;
            let num = falling(v - s as u64, width) / factorial(width);
            let den = falling(k - s as u64, width) / factorial(width);
            ensure(BigRational::new(num.clone().into(), den.clone().into()) == *lam, || {
                "quotient disagrees with recursion".into()
            })?;
            same_witnesses(
                cert,
                &[
                    Witness::new("s", s as u64),
                    Witness::new("numerator", num),
                    Witness::new("denominator", den),
                ],
            )
        }
        Some(Rule::OrderDivisor) => {
            expect_rule(cert, Some(Rule::OrderDivisor), Verdict::Eliminated)?;
            let b = lambdas[0].to_integer().to_biguint().ok_or("b is negative")?;
            ensure(lambdas[0].is_integer(), || "b is not an integer".into())?;
            let divisor = cert.uint("divisor").ok_or("missing divisor")?;
            ensure(b.is_multiple_of(&divisor), || format!("{divisor} does not divide b = {b}"))?;
            ensure(!order.is_multiple_of(&divisor), || format!("{divisor} divides |G| = {order}"))?;
            ensure(Some(&divisor) == excess_divisor(&b, &order).as_ref(), || {
                "divisor is not the canonical choice".into()
            })?;
            let quotient = BigRational::new(BigInt::from(order.clone()), BigInt::from(b.clone()));
            ensure(!quotient.is_integer(), || "|G|/b is an integer".into())?;
            same_witnesses(
                cert,
                &[
                    Witness::new("divisor", &divisor),
                    Witness::new("b", &b),
                    Witness::new("b_over_divisor", &b / &divisor),
                    Witness::new("group_order", &order),
                    Witness::new("block_stab_order", quotient),
                ],
            )
        }
        Some(Rule::Bound) => {
            expect_rule(cert, Some(Rule::Bound), Verdict::Eliminated)?;
            let rhs = 7 * (k - 5);
            ensure(v < rhs, || format!("v = {v} satisfies the Tits bound {rhs}"))?;
            same_witnesses(cert, &[Witness::new("tits_rhs", rhs), Witness::new("v", v)])
        }
        None => {
            expect_rule(cert, None, Verdict::Survives)?;
            same_witnesses(
                cert,
                &[
                    Witness::new("b", Exact::from(lambdas[0].clone())),
                    Witness::new("group_order", &order),
                ],
            )
        }
        Some(other) => Err(format!("rule {other} does not apply to a fixed group")),
    }
}

fn falling(x: u64, len: u64) -> BigUint {
    (0..len).map(|i| BigUint::from(x - i)).product()
}

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Certificates produced by the suite, checked one by one.
pub fn verify_suite_output(certs: &[EliminationCertificate]) -> std::result::Result<(), Vec<CheckError>> {
    let errs = verify_all(certs);
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

//! The whole case analysis in proof order, plus the global check that the
//! only cases left standing are the two open condition-(B) families.

use super::cases::{self, ids, CaseOptions, AFFINE_D_MAX};
use super::certificate::{EliminationCertificate, Verdict};
use crate::error::Result;
use crate::groups::Family;
use std::collections::BTreeSet;

pub type SuiteOptions = CaseOptions;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub certificates: Vec<EliminationCertificate>,
    /// Empty iff the outcome matches the Main Theorem exactly.
    pub mismatches: Vec<String>,
}

impl SuiteReport {
    pub fn matches_main_theorem(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.certificates.iter().filter(|c| c.verdict == verdict).count()
    }
}

/// Runs every elimination with default options.
pub fn run_full_suite() -> Result<SuiteReport> {
    run_suite(&SuiteOptions::default())
}

pub fn run_suite(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut certificates = cases::eliminate_affine_case1()?;
    certificates.extend(cases::eliminate_affine_case2(AFFINE_D_MAX)?);
    certificates.push(cases::eliminate_affine_case3()?);
    certificates.push(cases::eliminate_alternating());
    certificates.extend(cases::eliminate_psl_n_eq_g(options)?);
    certificates.extend(cases::eliminate_psl_n_lt_g_podd(options)?);
    certificates.extend(cases::eliminate_psl_p2_p3(options)?);
    certificates.extend(cases::eliminate_mathieu()?);
    certificates.extend(cases::eliminate_m11_on_12()?);
    let mismatches = main_theorem_mismatches(&certificates);
    Ok(SuiteReport {
        certificates,
        mismatches,
    })
}

/// Compares the certificate list with the Main Theorem: everything is
/// eliminated except `PΓL(2,p^e)`, `p ∈ {2,3}`, `e` an odd prime power.
pub fn main_theorem_mismatches(certs: &[EliminationCertificate]) -> Vec<String> {
    let mut out = Vec::new();
    let mut open = BTreeSet::new();
    for cert in certs {
        match cert.verdict {
            Verdict::Eliminated => {}
            Verdict::Survives => out.push(format!("unexpected survivor: {}", cert.text_row())),
            Verdict::Open => {
                let p = cert.uint("p").and_then(|p| u64::try_from(p).ok());
                let expected = p.is_some_and(|p| cert.case_id == ids::cond_b_open(p));
                if !expected || cert.group.family != Family::PGammaL2 {
                    out.push(format!("unexpected open case: {}", cert.text_row()));
                } else if !open.insert(p) {
                    out.push(format!("duplicate open case: {}", cert.case_id));
                }
            }
        }
    }
    for p in [2u64, 3] {
        if !open.contains(&Some(p)) {
            out.push(format!("missing open family for p = {p}"));
        }
    }
    out
}

//! Serialization of certificates, residual-search results and the
//! admissibility report printed by `check`.
//!
//! Certificates are JSON lines: one object per line, keys in struct order,
//! every integer as a decimal string.

use crate::dec;
use crate::design::{
    check_bounds, derived_counts, divisibility_check, highest_failure, BoundReport,
    DesignParams, DivisibilityRow,
};
use crate::engine::certificate::{EliminationCertificate, Exact};
use crate::engine::residual::{CellRecord, ResidualReport, SearchSummary};
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::io::{self, BufRead, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn certificate_line(cert: &EliminationCertificate) -> String {
    serde_json::to_string(cert).expect("certificates always serialize")
}

pub fn write_certificates<W: Write>(
    out: &mut W,
    certs: &[EliminationCertificate],
    format: Format,
) -> io::Result<()> {
    for cert in certs {
        match format {
            Format::Json => writeln!(out, "{}", certificate_line(cert))?,
            Format::Text => writeln!(out, "{}", cert.text_row())?,
        }
    }
    Ok(())
}

pub fn group_line(spec: &crate::groups::GroupSpec) -> String {
    serde_json::to_string(spec).expect("group specs always serialize")
}

/// Parses JSON lines, skipping blank lines.
pub fn read_certificates<R: BufRead>(input: R) -> io::Result<Vec<EliminationCertificate>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let cert = serde_json::from_str(&line)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
        out.push(cert);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaEntry {
    #[serde(with = "dec::u32_str")]
    pub s: u32,
    pub value: Exact,
    pub integral: bool,
}

/// Everything `check` reports about one parameter set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub params: DesignParams,
    pub trivial: bool,
    pub b: Exact,
    pub r: Exact,
    pub lambda_s: Vec<LambdaEntry>,
    pub divisibility: Vec<DivisibilityRow>,
    /// Largest `s` whose row fails.
    #[serde(with = "opt_u32")]
    pub first_failure: Option<u32>,
    /// Absent for trivial parameters, where the bounds do not apply.
    pub bounds: Option<BoundReport>,
    pub admissible: bool,
}

mod opt_u32 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<u32>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u32>, D::Error> {
        use serde::de::Error;
        Option::<String>::deserialize(d)?
            .map(|t| t.parse().map_err(D::Error::custom))
            .transpose()
    }
}

pub fn admissibility_report(params: &DesignParams) -> Result<AdmissibilityReport> {
    let counts = derived_counts(params)?;
    let rows = divisibility_check(params)?;
    let first_failure = highest_failure(&rows).map(|r| r.s);
    let trivial = !params.is_nontrivial();
    let bounds = if trivial {
        None
    } else {
        Some(check_bounds(params)?)
    };
    let lambda_s: Vec<LambdaEntry> = counts
        .lambda_s
        .iter()
        .map(|(&s, v)| LambdaEntry {
            s,
            value: Exact::from(v.clone()),
            integral: v.is_integer(),
        })
        .collect();
    let bounds_ok = bounds
        .as_ref()
        .map_or(true, |b| b.tits_holds && b.cameron_holds);
    let admissible = lambda_s.iter().all(|l| l.integral) && first_failure.is_none() && bounds_ok;
    Ok(AdmissibilityReport {
        params: params.clone(),
        trivial,
        b: Exact::from(counts.b),
        r: Exact::from(counts.r),
        lambda_s,
        divisibility: rows,
        first_failure,
        bounds,
        admissible,
    })
}

pub fn write_admissibility<W: Write>(
    out: &mut W,
    report: &AdmissibilityReport,
    format: Format,
) -> io::Result<()> {
    if format == Format::Json {
        return writeln!(out, "{}", serde_json::to_string(report).map_err(io::Error::other)?);
    }
    writeln!(out, "params {}", report.params)?;
    if report.trivial {
        writeln!(out, "trivial design (needs t < k < v)")?;
    }
    writeln!(out, "b {}", report.b)?;
    writeln!(out, "r {}", report.r)?;
    for l in &report.lambda_s {
        let flag = if l.integral { "integral" } else { "not integral" };
        writeln!(out, "lambda_{} {} {}", l.s, l.value, flag)?;
    }
    for row in &report.divisibility {
        let flag = if row.passes { "pass" } else { "fail" };
        writeln!(out, "divisibility s={} {}/{} {}", row.s, row.numerator, row.denominator, flag)?;
    }
    if let Some(s) = report.first_failure {
        writeln!(out, "first failure s={s}")?;
    }
    if let Some(b) = &report.bounds {
        writeln!(out, "tits {}", if b.tits_holds { "holds" } else { "fails" })?;
        writeln!(out, "cameron {}", if b.cameron_holds { "holds" } else { "fails" })?;
        if b.cameron_equality {
            let known = if b.equality_triple_known { "known triple" } else { "unlisted triple" };
            writeln!(out, "cameron equality ({known})")?;
        }
        if let Some(k) = &b.k_max_t6 {
            writeln!(out, "k_max_t6 {k}")?;
        }
    }
    writeln!(out, "{}", if report.admissible { "admissible" } else { "inadmissible" })
}

/// One line per searched or skipped cell and per hit, then the summary.
pub fn write_residual<W: Write>(out: &mut W, report: &ResidualReport, format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for rec in &report.cells {
                writeln!(out, "{}", serde_json::to_string(&CellLine::from(rec)).map_err(io::Error::other)?)?;
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string(&SummaryLine {
                    kind: "summary",
                    summary: &report.summary,
                    bounds: &report.bounds,
                })
                .map_err(io::Error::other)?
            )
        }
        Format::Text => {
            for rec in &report.cells {
                let c = rec.cell;
                let status = if rec.is_skipped() { "skipped" } else { "searched" };
                writeln!(out, "cell p={} s={} u={} c={} {}", c.p, c.s, c.u, c.c, status)?;
                for h in rec.hits() {
                    writeln!(
                        out,
                        "hit p={} s={} u={} c={} q={} k={} divisibility={} inequality={}",
                        c.p, c.s, c.u, c.c, h.q, h.k, h.passes_divisibility, h.passes_inequality
                    )?;
                }
            }
            let s = &report.summary;
            writeln!(
                out,
                "summary cells={} searched={} skipped={} s_divides_l={} hits={} survivors={}",
                s.cells_total, s.cells_searched, s.cells_skipped, s.cells_s_divides_l, s.hits, s.survivors
            )
        }
    }
}

#[derive(Serialize)]
struct CellLine<'a> {
    kind: &'static str,
    #[serde(flatten)]
    record: &'a CellRecord,
}

impl<'a> From<&'a CellRecord> for CellLine<'a> {
    fn from(record: &'a CellRecord) -> Self {
        CellLine { kind: "cell", record }
    }
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    kind: &'static str,
    summary: &'a SearchSummary,
    bounds: &'a crate::engine::residual::SearchBounds,
}

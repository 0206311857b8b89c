//! Bounded search of the residual equation
//!
//! ```text
//! (q-2)(q-3)(q-4) · 6c = k(k-1)(k-2)(k-3)(k-4)(k-5) · s,   q = p^(s^u)
//! ```
//!
//! One cell per `(p, s, u, c)`. Since `k ↦ k(k-1)...(k-5)` is strictly
//! increasing for `k ≥ 5`, and `(k-5)^6 < K < k^6`, any solution satisfies
//! `⌊K^(1/6)⌋ + 1 ≤ k ≤ ⌊K^(1/6)⌋ + 5`; the scanned window
//! `⌊K^(1/6)⌋ + 3 ± 4` contains it.

use crate::arith::{iroot, is_prime, primes_up_to, shifted_cubic, six_product};
use crate::dec;
use crate::design::{is_divisibility_admissible, DesignParams};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_S_MAX: u64 = 1000;
pub const DEFAULT_U_MAX: u32 = 2;
pub const DEFAULT_Q_BIT_LIMIT: u64 = 65_536;
pub const DEFAULT_C_SET: [u64; 4] = [1, 2, 4, 5];
/// Half-width of the sextic-root window around `⌊K^(1/6)⌋ + 3`.
pub const ROOT_WINDOW: u64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    #[serde(with = "dec::u64_str")]
    pub s_max: u64,
    #[serde(with = "dec::u32_str")]
    pub u_max: u32,
    #[serde(with = "dec::vec_u64_str")]
    pub p_set: Vec<u64>,
    #[serde(with = "dec::vec_u64_str")]
    pub c_set: Vec<u64>,
    #[serde(with = "dec::u64_str")]
    pub q_bit_limit: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            s_max: DEFAULT_S_MAX,
            u_max: DEFAULT_U_MAX,
            p_set: vec![2, 3],
            c_set: DEFAULT_C_SET.to_vec(),
            q_bit_limit: DEFAULT_Q_BIT_LIMIT,
        }
    }
}

impl SearchBounds {
    /// Every `c` in `1..=c_max` instead of the fixed set.
    pub fn with_free_c(mut self, c_max: u64) -> Self {
        self.c_set = (1..=c_max).collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidBounds(m));
        if self.s_max < 7 {
            return bad(format!("s_max must be at least 7, got {}", self.s_max));
        }
        if self.u_max < 1 {
            return bad("u_max must be at least 1".into());
        }
        if self.p_set.is_empty() || self.p_set.iter().any(|p| !matches!(p, 2 | 3)) {
            return bad(format!("p_set must be a non-empty subset of {{2, 3}}, got {:?}", self.p_set));
        }
        if self.c_set.is_empty() || self.c_set.contains(&0) {
            return bad(format!("c_set must hold positive integers, got {:?}", self.c_set));
        }
        if self.q_bit_limit == 0 {
            return bad("q_bit_limit must be positive".into());
        }
        Ok(())
    }

    fn normalized(&self) -> SearchBounds {
        let mut b = self.clone();
        b.p_set.sort_unstable();
        b.p_set.dedup();
        b.c_set.sort_unstable();
        b.c_set.dedup();
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    #[serde(with = "dec::u64_str")]
    pub p: u64,
    #[serde(with = "dec::u64_str")]
    pub s: u64,
    #[serde(with = "dec::u32_str")]
    pub u: u32,
    #[serde(with = "dec::u64_str")]
    pub c: u64,
}

impl Cell {
    /// `e = s^u`, if it fits in 64 bits.
    pub fn exponent(&self) -> Option<u64> {
        self.s.checked_pow(self.u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CellOutcome {
    /// `q` would exceed the bit limit.
    Skipped {
        #[serde(with = "dec::opt_biguint")]
        exponent: Option<BigUint>,
    },
    Searched {
        #[serde(with = "dec::u64_str")]
        q_bits: u64,
        s_divides_l: bool,
        /// `⌊K^(1/6)⌋` when `s | L`.
        #[serde(with = "dec::opt_biguint")]
        root: Option<BigUint>,
        hits: Vec<ResidualHit>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub cell: Cell,
    pub outcome: CellOutcome,
}

impl CellRecord {
    pub fn is_skipped(&self) -> bool {
        matches!(self.outcome, CellOutcome::Skipped { .. })
    }

    pub fn hits(&self) -> &[ResidualHit] {
        match &self.outcome {
            CellOutcome::Searched { hits, .. } => hits,
            CellOutcome::Skipped { .. } => &[],
        }
    }
}

/// An exact solution `(p, s, u, c, q, k)` of the residual equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualHit {
    pub cell: Cell,
    #[serde(with = "dec::biguint")]
    pub q: BigUint,
    #[serde(with = "dec::biguint")]
    pub k: BigUint,
    pub passes_divisibility: bool,
    /// `q - 4 ≥ (k-4)(k-5)` and `k ≥ 7`.
    pub passes_inequality: bool,
}

impl ResidualHit {
    pub fn survives(&self) -> bool {
        self.passes_divisibility && self.passes_inequality
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    #[serde(with = "dec::u64_str")]
    pub cells_total: u64,
    #[serde(with = "dec::u64_str")]
    pub cells_searched: u64,
    #[serde(with = "dec::u64_str")]
    pub cells_skipped: u64,
    #[serde(with = "dec::u64_str")]
    pub cells_s_divides_l: u64,
    #[serde(with = "dec::u64_str")]
    pub hits: u64,
    #[serde(with = "dec::u64_str")]
    pub survivors: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub bounds: SearchBounds,
    pub cells: Vec<CellRecord>,
    pub summary: SearchSummary,
}

impl ResidualReport {
    pub fn hits(&self) -> impl Iterator<Item = &ResidualHit> {
        self.cells.iter().flat_map(|c| c.hits())
    }

    pub fn survivors(&self) -> impl Iterator<Item = &ResidualHit> {
        self.hits().filter(|h| h.survives())
    }
}

/// Cells in ascending `(p, s, u, c)`; only primes `s` with `s > 6c`.
pub fn enumerate_cells(bounds: &SearchBounds) -> Vec<Cell> {
    let b = bounds.normalized();
    let mut cells = Vec::new();
    for &p in &b.p_set {
        for s in primes_up_to(b.s_max) {
            for u in 1..=b.u_max {
                for &c in &b.c_set {
                    if c.checked_mul(6).is_some_and(|six_c| s > six_c) {
                        cells.push(Cell { p, s, u, c });
                    }
                }
            }
        }
    }
    cells
}

/// Bit length of `p^e`, or `None` above the limit.
fn q_bits_within(p: u64, e: u64, limit: u64) -> Option<u64> {
    if e >= limit {
        return None;
    }
    let q = BigUint::from(p).pow(u32::try_from(e).ok()?);
    let bits = q.bits();
    (bits <= limit).then_some(bits)
}

fn classify_hit(cell: Cell, q: &BigUint, k: &BigUint) -> ResidualHit {
    let seven = BigUint::from(7u32);
    let passes_inequality =
        *k >= seven && q - 4u32 >= (k - 4u32) * (k - 5u32);
    let passes_divisibility = DesignParams::steiner6(q + 1u32, k.clone())
        .and_then(|p| is_divisibility_admissible(&p))
        .unwrap_or(false);
    ResidualHit {
        cell,
        q: q.clone(),
        k: k.clone(),
        passes_divisibility,
        passes_inequality,
    }
}

/// Searches one cell. `q` is recomputed here, never shared between cells.
pub fn search_cell(cell: Cell, q_bit_limit: u64) -> CellRecord {
    let skipped = |exponent: Option<u64>| CellRecord {
        cell,
        outcome: CellOutcome::Skipped {
            exponent: exponent.map(BigUint::from),
        },
    };
    let Some(e) = cell.exponent() else {
        return skipped(None);
    };
    let Some(q_bits) = q_bits_within(cell.p, e, q_bit_limit) else {
        return skipped(Some(e));
    };
    let q = BigUint::from(cell.p).pow(e as u32);
    let l = shifted_cubic(&q) * (6 * cell.c);
    let (k_target, rem) = l.div_rem(&BigUint::from(cell.s));
    if !rem.is_zero() {
        return CellRecord {
            cell,
            outcome: CellOutcome::Searched {
                q_bits,
                s_divides_l: false,
                root: None,
                hits: Vec::new(),
            },
        };
    }
    let root = iroot(&k_target, 6);
    let centre = &root + 3u32;
    let lo = if centre > BigUint::from(ROOT_WINDOW) {
        &centre - ROOT_WINDOW
    } else {
        BigUint::zero()
    };
    let hi = &centre + ROOT_WINDOW;
    let mut hits = Vec::new();
    let mut k = lo;
    while k <= hi {
        if six_product(&k) == k_target {
            hits.push(classify_hit(cell, &q, &k));
        }
        k += 1u32;
    }
    CellRecord {
        cell,
        outcome: CellOutcome::Searched {
            q_bits,
            s_divides_l: true,
            root: Some(root),
            hits,
        },
    }
}

/// Searches every cell in parallel; records come back in cell order.
pub fn search_residual(bounds: &SearchBounds) -> Result<ResidualReport> {
    bounds.validate()?;
    let bounds = bounds.normalized();
    let cells: Vec<CellRecord> = enumerate_cells(&bounds)
        .into_par_iter()
        .map(|cell| search_cell(cell, bounds.q_bit_limit))
        .collect();
    let mut summary = SearchSummary {
        cells_total: cells.len() as u64,
        ..SearchSummary::default()
    };
    for rec in &cells {
        match &rec.outcome {
            CellOutcome::Skipped { .. } => summary.cells_skipped += 1,
            CellOutcome::Searched {
                s_divides_l, hits, ..
            } => {
                summary.cells_searched += 1;
                summary.cells_s_divides_l += u64::from(*s_divides_l);
                summary.hits += hits.len() as u64;
                summary.survivors += hits.iter().filter(|h| h.survives()).count() as u64;
            }
        }
    }
    Ok(ResidualReport {
        bounds,
        cells,
        summary,
    })
}

/// Whether `s` can appear in any cell: prime and above `6 · min(c)`.
pub fn s_is_live(s: u64, c_set: &[u64]) -> bool {
    is_prime(s) && c_set.iter().any(|&c| s > 6 * c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_cell_p2_s7() {
        let rec = search_cell(Cell { p: 2, s: 7, u: 1, c: 1 }, 64);
        match rec.outcome {
            CellOutcome::Searched {
                q_bits,
                s_divides_l,
                root,
                hits,
            } => {
                assert_eq!(q_bits, 8);
                assert!(s_divides_l);
                assert_eq!(root, Some(BigUint::from(10u32)));
                assert!(hits.is_empty());
            }
            other => panic!("{other:?}"),
        }
        let l = shifted_cubic(&BigUint::from(128u32)) * 6u32;
        assert_eq!(l / 7u32, BigUint::from(1_674_000u32));
    }

    #[test]
    fn s5_never_searched() {
        let cells = enumerate_cells(&SearchBounds::default());
        assert!(cells.iter().all(|c| c.s > 6 * c.c));
        assert!(!cells.iter().any(|c| c.s == 5));
        assert!(!s_is_live(5, &DEFAULT_C_SET));
        assert!(s_is_live(7, &DEFAULT_C_SET));
    }

    #[test]
    fn s7_c1_cells() {
        let bounds = SearchBounds {
            s_max: 7,
            u_max: 1,
            c_set: vec![1],
            ..SearchBounds::default()
        };
        let report = search_residual(&bounds).unwrap();
        let cells: Vec<(u64, u64)> = report.cells.iter().map(|c| (c.cell.p, c.cell.s)).collect();
        assert_eq!(cells, [(2, 7), (3, 7)]);
        assert_eq!(report.summary.hits, 0);
    }

    #[test]
    fn bit_limit_marks_cells_skipped() {
        let bounds = SearchBounds {
            q_bit_limit: 64,
            s_max: 100,
            ..SearchBounds::default()
        };
        let report = search_residual(&bounds).unwrap();
        assert!(report.summary.cells_skipped > 0);
        assert_eq!(
            report.summary.cells_skipped + report.summary.cells_searched,
            report.summary.cells_total
        );
        for rec in &report.cells {
            let e = rec.cell.s.pow(rec.cell.u);
            let bits = BigUint::from(rec.cell.p).pow(e as u32).bits();
            assert_eq!(rec.is_skipped(), bits > 64, "{:?}", rec.cell);
        }
    }

    #[test]
    fn window_contains_root_of_exact_products() {
        for k in [7u64, 8, 20, 1000, 123_456_789] {
            let target = six_product(&BigUint::from(k));
            let root = iroot(&target, 6);
            let lo = &root + 1u32;
            let hi = &root + 5u32;
            let k = BigUint::from(k);
            assert!(lo <= k && k <= hi);
        }
    }

    #[test]
    fn invalid_bounds() {
        let bad = [
            SearchBounds { s_max: 6, ..SearchBounds::default() },
            SearchBounds { u_max: 0, ..SearchBounds::default() },
            SearchBounds { p_set: vec![5], ..SearchBounds::default() },
            SearchBounds { c_set: vec![0], ..SearchBounds::default() },
            SearchBounds { q_bit_limit: 0, ..SearchBounds::default() },
        ];
        for b in bad {
            assert!(search_residual(&b).is_err(), "{b:?}");
        }
    }

    #[test]
    fn free_c_mode() {
        let b = SearchBounds::default().with_free_c(3);
        assert_eq!(b.c_set, [1, 2, 3]);
    }
}

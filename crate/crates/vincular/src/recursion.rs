//! Dynamic programming for avoider counts of 2153-4 and 3154-2 refined by
//! the first two letters, plus verification of the identities linking the
//! two triangle families (the route to their Wilf equivalence).

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::enumerate::{count_avoiders_prefix_capped, EnumerateError};
use crate::pattern::VincularPattern;

/// Smallest table length; the recursion needs two brute-forced base lengths.
pub const RECURSION_MIN_N: usize = 5;
/// Largest supported length (entries stay well inside u64).
pub const RECURSION_N_CAP: usize = 20;
/// Default upper length for table builds and identity sweeps.
pub const RECURSION_DEFAULT_N_MAX: usize = 14;

const BASE_LENGTHS: [usize; 2] = [5, 6];

#[derive(Debug, Error)]
pub enum RecursionError {
    #[error("n_max = {n_max} is below the minimum table length {min}", min = RECURSION_MIN_N)]
    NMaxTooSmall { n_max: usize },
    #[error("n_max = {n_max} exceeds the table length cap {cap}", cap = RECURSION_N_CAP)]
    CapExceeded { n_max: usize },
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// The pattern 2153-4, written sigma throughout this module.
pub fn sigma_pattern() -> VincularPattern {
    "2153-4".parse().expect("valid pattern literal")
}

/// The pattern 3154-2, written tau throughout this module.
pub fn tau_pattern() -> VincularPattern {
    "3154-2".parse().expect("valid pattern literal")
}

/// Avoider counts of one pattern in `S_n` refined by the first two letters:
/// `entry(k, l)` counts avoiders whose word starts `k, l`. The diagonal is
/// zero and `row_sum(k)` gives the count refined by first letter only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleTable {
    n: usize,
    entries: Vec<Vec<u64>>,
}

impl TriangleTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry for first letter `k`, second letter `l` (both 1-indexed).
    pub fn entry(&self, k: usize, l: usize) -> u64 {
        self.entries[k - 1][l - 1]
    }

    /// Row-major entries; `entries()[k-1][l-1]` is `entry(k, l)`.
    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Avoiders whose first letter is `k` (1-indexed).
    pub fn row_sum(&self, k: usize) -> u64 {
        self.entries[k - 1].iter().sum()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (1..=self.n).map(|k| self.row_sum(k)).collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.n)
            .map(|l| self.entries.iter().map(|row| row[l]).sum())
            .collect()
    }

    /// Total avoider count in `S_n`.
    pub fn total(&self) -> u64 {
        self.entries.iter().flatten().sum()
    }

    /// Matrix CSV: header row of second letters, one row per first letter.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k");
        for l in 1..=self.n {
            out.push_str(&format!(",l{l}"));
        }
        out.push('\n');
        for k in 1..=self.n {
            out.push_str(&k.to_string());
            for l in 1..=self.n {
                out.push_str(&format!(",{}", self.entry(k, l)));
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for TriangleTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("TriangleTable", 5)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("entries", &self.entries)?;
        s.serialize_field("row_sums", &self.row_sums())?;
        s.serialize_field("col_sums", &self.col_sums())?;
        s.serialize_field("total", &self.total())?;
        s.end()
    }
}

fn base_table(p: &VincularPattern, n: usize) -> Result<TriangleTable, RecursionError> {
    let mut entries = vec![vec![0u64; n]; n];
    for k in 1..=n {
        for l in 1..=n {
            if k != l {
                entries[k - 1][l - 1] =
                    count_avoiders_prefix_capped(p, n, &[k as u8, l as u8], n)?;
            }
        }
    }
    Ok(TriangleTable { n, entries })
}

/// Suffix sums used by the subtraction terms: `suffix[j]` is the sum of
/// `prev2.entry(i, j')` over `j' >= j` and `i >= j' + gap`.
fn subtraction_suffix(prev2: &TriangleTable, gap: usize) -> Vec<u64> {
    let m = prev2.n;
    let mut suffix = vec![0u64; m + 2];
    for j in (1..=m).rev() {
        let col_tail: u64 = ((j + gap)..=m).map(|i| prev2.entry(i, j)).sum();
        suffix[j] = suffix[j + 1] + col_tail;
    }
    suffix
}

fn step_sigma(prev: &TriangleTable, prev2: &TriangleTable) -> TriangleTable {
    let n = prev.n + 1;
    let suffix = subtraction_suffix(prev2, 2);
    let prev_rows = prev.row_sums();
    let mut entries = vec![vec![0u64; n]; n];
    for k in 1..=n {
        for l in 1..=n {
            entries[k - 1][l - 1] = match k.cmp(&l) {
                std::cmp::Ordering::Less => prev_rows[l - 2],
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => prev_rows[l - 1]
                    .checked_sub(suffix[k - 1])
                    .expect("subtraction stays nonnegative"),
            };
        }
    }
    TriangleTable { n, entries }
}

fn step_tau(prev: &TriangleTable, prev2: &TriangleTable) -> TriangleTable {
    let n = prev.n + 1;
    let suffix = subtraction_suffix(prev2, 1);
    let prev_rows = prev.row_sums();
    let mut entries = vec![vec![0u64; n]; n];
    for k in 1..=n {
        for l in 1..=n {
            entries[k - 1][l - 1] = if k < l {
                prev_rows[l - 2]
            } else if k == l {
                0
            } else if k == l + 1 {
                prev_rows[l - 1]
            } else {
                prev_rows[l - 1]
                    .checked_sub(suffix[k - 1])
                    .expect("subtraction stays nonnegative")
            };
        }
    }
    TriangleTable { n, entries }
}

fn build_tables(
    p: &VincularPattern,
    n_max: usize,
    step: fn(&TriangleTable, &TriangleTable) -> TriangleTable,
) -> Result<Vec<TriangleTable>, RecursionError> {
    if n_max < RECURSION_MIN_N {
        return Err(RecursionError::NMaxTooSmall { n_max });
    }
    if n_max > RECURSION_N_CAP {
        return Err(RecursionError::CapExceeded { n_max });
    }
    let mut tables = Vec::with_capacity(n_max - RECURSION_MIN_N + 1);
    for base in BASE_LENGTHS {
        if base <= n_max {
            tables.push(base_table(p, base)?);
        }
    }
    while tables.last().expect("at least one base table").n < n_max {
        let next = step(&tables[tables.len() - 1], &tables[tables.len() - 2]);
        tables.push(next);
    }
    Ok(tables)
}

/// Tables for 2153-4 at n = 5..=n_max. Lengths 5 and 6 are brute-forced,
/// the rest follow the recursion: entry (k, l) is `prev[l-1]` for k < l,
/// zero on the diagonal, and for k > l it is `prev[l]` minus the count of
/// length n-2 avoiders starting i, j with i >= j+2 and j >= k-1, where
/// `prev[x]` denotes the first-letter-x count at length n-1.
pub fn build_tables_sigma(n_max: usize) -> Result<Vec<TriangleTable>, RecursionError> {
    build_tables(&sigma_pattern(), n_max, step_sigma)
}

/// Tables for 3154-2 at n = 5..=n_max. As [`build_tables_sigma`] but the
/// k = l+1 entry keeps `prev[l]` without subtraction and the k > l+1
/// subtraction sums first-two-letter pairs i, j with i >= j+1, j >= k-1.
pub fn build_tables_tau(n_max: usize) -> Result<Vec<TriangleTable>, RecursionError> {
    build_tables(&tau_pattern(), n_max, step_tau)
}

/// Outcome of an identity sweep: every checked instance, with a line per
/// violation (empty means everything holds).
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub n_min: usize,
    pub n_max: usize,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check(
    report: &mut IdentityReport,
    label: &str,
    n: usize,
    detail: std::fmt::Arguments<'_>,
    lhs: u64,
    rhs: u64,
) {
    report.checks += 1;
    if lhs != rhs {
        report
            .violations
            .push(format!("({label}) n = {n}, {detail}: {lhs} != {rhs}"));
    }
}

/// First-letter counts at length 4 for a length-5 pattern: every permutation
/// avoids, so each first letter contributes (n-1)! = 6.
fn length4_row_sums() -> Vec<u64> {
    vec![6; 4]
}

/// Sweeps the single-family identities for 5 <= n <= n_max:
/// (a) the 2153-4 first-letter counts at 1, n-1, n equal the full count one
///     length down, (b) likewise for 3154-2 at first letters 1, 2, n, and
/// (c) row n of the 2153-4 table equals the first-letter counts one length
///     down, entry by entry.
pub fn verify_easy_h(n_max: usize) -> Result<IdentityReport, RecursionError> {
    let sigma = build_tables_sigma(n_max)?;
    let tau = build_tables_tau(n_max)?;
    let mut report = IdentityReport {
        n_min: RECURSION_MIN_N,
        n_max,
        checks: 0,
        violations: Vec::new(),
    };
    for idx in 0..sigma.len() {
        let n = sigma[idx].n;
        let (s_prev_rows, t_prev_rows) = if idx == 0 {
            (length4_row_sums(), length4_row_sums())
        } else {
            (sigma[idx - 1].row_sums(), tau[idx - 1].row_sums())
        };
        let s_prev_total: u64 = s_prev_rows.iter().sum();
        let t_prev_total: u64 = t_prev_rows.iter().sum();

        for k in [1, n - 1, n] {
            check(
                &mut report,
                "a",
                n,
                format_args!("sigma first letter {k}"),
                sigma[idx].row_sum(k),
                s_prev_total,
            );
        }
        for k in [1, 2, n] {
            check(
                &mut report,
                "b",
                n,
                format_args!("tau first letter {k}"),
                tau[idx].row_sum(k),
                t_prev_total,
            );
        }
        for l in 1..n {
            check(
                &mut report,
                "c",
                n,
                format_args!("sigma entry ({n}, {l})"),
                sigma[idx].entry(n, l),
                s_prev_rows[l - 1],
            );
        }
    }
    Ok(report)
}

/// Sweeps the cross-family relations for 5 <= n <= n_max:
/// (a) for k < l the 2153-4 entry (k, l) equals the 3154-2 first-letter
///     count one length down at l (at l = n, at first letter 1),
/// (b) row n of the 2153-4 table matches the shifted 3154-2 first-letter
///     counts one length down (l + 1, except l = n-1 stays at n-1),
/// (c) for n > k > l+1 the 2153-4 entry (k, l) equals the same-length
///     3154-2 entry (k+1, l+1),
/// (d) first-letter counts agree under the shift k -> k+1 (k = n wraps to 1),
/// (e) the totals agree.
pub fn verify_thm_h(n_max: usize) -> Result<IdentityReport, RecursionError> {
    let sigma = build_tables_sigma(n_max)?;
    let tau = build_tables_tau(n_max)?;
    let mut report = IdentityReport {
        n_min: RECURSION_MIN_N,
        n_max,
        checks: 0,
        violations: Vec::new(),
    };
    for idx in 0..sigma.len() {
        let n = sigma[idx].n;
        let t_prev_rows = if idx == 0 {
            length4_row_sums()
        } else {
            tau[idx - 1].row_sums()
        };

        for k in 1..=n {
            for l in (k + 1)..=n {
                let rhs = if l < n {
                    t_prev_rows[l - 1]
                } else {
                    t_prev_rows[0]
                };
                check(
                    &mut report,
                    "a",
                    n,
                    format_args!("sigma entry ({k}, {l})"),
                    sigma[idx].entry(k, l),
                    rhs,
                );
            }
        }
        for l in 1..n {
            let rhs = if l == n - 1 {
                t_prev_rows[n - 2]
            } else {
                t_prev_rows[l]
            };
            check(
                &mut report,
                "b",
                n,
                format_args!("sigma entry ({n}, {l})"),
                sigma[idx].entry(n, l),
                rhs,
            );
        }
        for k in 1..n {
            for l in 1..k.saturating_sub(1) {
                check(
                    &mut report,
                    "c",
                    n,
                    format_args!("sigma ({k}, {l}) vs tau ({}, {})", k + 1, l + 1),
                    sigma[idx].entry(k, l),
                    tau[idx].entry(k + 1, l + 1),
                );
            }
        }
        for k in 1..=n {
            let shifted = if k < n { k + 1 } else { 1 };
            check(
                &mut report,
                "d",
                n,
                format_args!("first letters {k} vs {shifted}"),
                sigma[idx].row_sum(k),
                tau[idx].row_sum(shifted),
            );
        }
        check(
            &mut report,
            "e",
            n,
            format_args!("totals"),
            sigma[idx].total(),
            tau[idx].total(),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::count_avoiders_prefix;
    use crate::golden::{golden_class_of, golden_triangle, TRIANGLE_RANGE};

    #[test]
    fn tables_match_reference() {
        let sigma = build_tables_sigma(9).unwrap();
        let tau = build_tables_tau(9).unwrap();
        for (tables, pat) in [(&sigma, "2153-4"), (&tau, "3154-2")] {
            for t in tables.iter() {
                assert!(TRIANGLE_RANGE.contains(&t.n));
                let want = golden_triangle(pat, t.n).unwrap();
                assert_eq!(t.entries(), &want[..], "{pat} n = {}", t.n);
            }
        }
    }

    #[test]
    fn tables_match_enumerate_oracle() {
        for (tables, pat) in [
            (build_tables_sigma(8).unwrap(), sigma_pattern()),
            (build_tables_tau(8).unwrap(), tau_pattern()),
        ] {
            for t in &tables {
                for k in 1..=t.n {
                    for l in 1..=t.n {
                        let want =
                            count_avoiders_prefix(&pat, t.n, &[k as u8, l as u8]).unwrap();
                        assert_eq!(t.entry(k, l), want, "{pat} n = {} ({k}, {l})", t.n);
                    }
                }
            }
        }
    }

    #[test]
    fn totals_extend_reference_counts() {
        let sigma = build_tables_sigma(11).unwrap();
        let tau = build_tables_tau(11).unwrap();
        let class_m = golden_class_of("2153-4").unwrap();
        for t in sigma.iter().chain(tau.iter()) {
            assert_eq!(Some(t.total()), class_m.count(t.n), "n = {}", t.n);
        }
        assert_eq!(sigma.last().unwrap().total(), 34672985);
    }

    #[test]
    fn identity_sweeps_hold() {
        let easy = verify_easy_h(10).unwrap();
        assert!(easy.holds(), "{:?}", easy.violations);
        assert!(easy.checks > 0);
        let h = verify_thm_h(10).unwrap();
        assert!(h.holds(), "{:?}", h.violations);
        assert!(h.checks > 0);
    }

    #[test]
    fn length_bounds() {
        assert!(matches!(
            build_tables_sigma(4),
            Err(RecursionError::NMaxTooSmall { n_max: 4 })
        ));
        assert!(matches!(
            build_tables_tau(21),
            Err(RecursionError::CapExceeded { n_max: 21 })
        ));
        let only_base = build_tables_sigma(5).unwrap();
        assert_eq!(only_base.len(), 1);
        assert_eq!(only_base[0].total(), 119);
    }

    #[test]
    fn csv_layout() {
        let t = &build_tables_sigma(5).unwrap()[0];
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("k,l1,l2,l3,l4,l5"));
        assert_eq!(lines.next(), Some("1,0,6,6,6,6"));
        assert_eq!(lines.next(), Some("2,5,0,6,6,6"));
        assert_eq!(csv.lines().count(), 6);
    }

    #[test]
    fn serialization_includes_sums() {
        let t = &build_tables_sigma(5).unwrap()[0];
        let v = serde_json::to_value(t).unwrap();
        assert_eq!(v["n"], 5);
        assert_eq!(v["total"], 119);
        assert_eq!(v["row_sums"][1], 23);
        assert_eq!(v["entries"][1][0], 5);
    }
}

//! Permutations, vincular patterns, and occurrence search.
//!
//! A vincular pattern is a permutation of `1..=k` together with a set of
//! adjacency requirements between neighbouring letters. In the compact string
//! form a dash marks a gap with no adjacency requirement: `"24-13"` requires
//! the letters matching `2,4` to sit next to each other in the host, likewise
//! `1,3`, while the gap at the dash may be arbitrarily wide. Positions and
//! values are 1-indexed throughout the public API.

use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Longest pattern the compact string form can express (`1..9`, `A..Z`).
pub const MAX_PATTERN_LEN: usize = 35;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("pattern is empty")]
    Empty,
    #[error("invalid pattern character {0:?}")]
    BadCharacter(char),
    #[error("dash at the start or end of a pattern")]
    DanglingDash,
    #[error("two consecutive dashes")]
    RepeatedDash,
    #[error("values do not form a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("patterns longer than {MAX_PATTERN_LEN} letters are not supported")]
    TooLong,
    #[error("adjacency index {index} out of range 1..={max}")]
    AdjacencyOutOfRange { index: usize, max: usize },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("word contains repeated entries")]
    NotDistinct,
}

fn value_to_char(v: u8) -> char {
    match v {
        1..=9 => (b'0' + v) as char,
        10..=35 => (b'A' + v - 10) as char,
        _ => unreachable!("value {v} has no compact letter"),
    }
}

fn char_to_value(c: char) -> Result<u8, PatternError> {
    match c {
        '1'..='9' => Ok(c as u8 - b'0'),
        'A'..='Z' => Ok(c as u8 - b'A' + 10),
        _ => Err(PatternError::BadCharacter(c)),
    }
}

/// A permutation of `1..=n`, stored as its one-line word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u8>,
}

impl Permutation {
    /// Validates that `values` is a rearrangement of `1..=n`.
    pub fn new(values: Vec<u8>) -> Result<Self, PatternError> {
        let n = values.len();
        if n > u8::MAX as usize {
            return Err(PatternError::TooLong);
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(PatternError::NotAPermutation(n));
            }
            seen[v as usize] = true;
        }
        Ok(Self { values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n as u8).collect(),
        }
    }

    /// Parses a compact word such as `"3275164"` (no dashes allowed).
    pub fn parse(s: &str) -> Result<Self, PatternError> {
        if s.is_empty() {
            return Err(PatternError::Empty);
        }
        let values = s
            .chars()
            .map(char_to_value)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Value at 1-indexed position `pos`.
    pub fn value_at(&self, pos: usize) -> u8 {
        self.values[pos - 1]
    }

    /// Replaces each value `v` by `n + 1 - v`.
    pub fn complement(&self) -> Self {
        let n = self.values.len() as u8;
        Self {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Reads the word right to left.
    pub fn reverse(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self { values }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.len() <= MAX_PATTERN_LEN {
            for &v in &self.values {
                write!(f, "{}", value_to_char(v))?;
            }
            Ok(())
        } else {
            let words: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", words.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Sends a word of distinct entries to the permutation with the same relative
/// order: `(5,2,4)` reduces to `312`, `(2,7,1,6)` to `2413`.
pub fn reduce<T: Ord>(word: &[T]) -> Result<Permutation, PatternError> {
    let k = word.len();
    if k > u8::MAX as usize {
        return Err(PatternError::TooLong);
    }
    let mut values = vec![0u8; k];
    for (i, x) in word.iter().enumerate() {
        let mut rank = 1u8;
        for (j, y) in word.iter().enumerate() {
            if y < x || (y == x && j != i) {
                if y == x {
                    return Err(PatternError::NotDistinct);
                }
                rank += 1;
            }
        }
        values[i] = rank;
    }
    Permutation::new(values).map_err(|_| PatternError::NotDistinct)
}

/// Whether two words of distinct entries have the same relative order.
pub fn order_isomorphic<A: Ord, B: Ord>(a: &[A], b: &[B]) -> Result<bool, PatternError> {
    if a.len() != b.len() {
        return Err(PatternError::LengthMismatch(a.len(), b.len()));
    }
    Ok(iso(a, b))
}

pub(crate) fn iso<A: Ord, B: Ord>(a: &[A], b: &[B]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if (a[i] < a[j]) != (b[i] < b[j]) {
                return false;
            }
        }
    }
    true
}

/// A vincular pattern: a permutation plus the set of gaps that must be
/// adjacent in the host. Gap `i` (for `1 <= i <= k-1`) sits between pattern
/// positions `i` and `i+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VincularPattern {
    perm: Permutation,
    adj: u64,
}

impl VincularPattern {
    /// Builds a pattern from a permutation and the list of adjacent gaps.
    pub fn new(
        perm: Permutation,
        adjacencies: impl IntoIterator<Item = usize>,
    ) -> Result<Self, PatternError> {
        let k = perm.len();
        if k == 0 {
            return Err(PatternError::Empty);
        }
        if k > MAX_PATTERN_LEN {
            return Err(PatternError::TooLong);
        }
        let mut adj = 0u64;
        for i in adjacencies {
            if i == 0 || i >= k {
                return Err(PatternError::AdjacencyOutOfRange {
                    index: i,
                    max: k.saturating_sub(1),
                });
            }
            adj |= 1 << (i - 1);
        }
        Ok(Self { perm, adj })
    }

    /// No adjacency requirements at all.
    pub fn classical(perm: Permutation) -> Result<Self, PatternError> {
        Self::new(perm, [])
    }

    /// Every gap adjacent: the pattern must appear as a contiguous factor.
    pub fn consecutive(perm: Permutation) -> Result<Self, PatternError> {
        let k = perm.len();
        Self::new(perm, 1..k)
    }

    /// All gaps adjacent except the last: `p1 p2 .. p(k-1) - pk`.
    pub fn quasi_consecutive(perm: Permutation) -> Result<Self, PatternError> {
        let k = perm.len();
        if k < 2 {
            return Err(PatternError::Empty);
        }
        Self::new(perm, 1..k - 1)
    }

    pub fn parse(s: &str) -> Result<Self, PatternError> {
        s.parse()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// The adjacent gaps, ascending.
    pub fn adjacencies(&self) -> Vec<usize> {
        (1..self.perm.len())
            .filter(|&i| self.is_adjacent(i))
            .collect()
    }

    /// Whether pattern positions `i` and `i+1` must be adjacent in the host.
    pub fn is_adjacent(&self, gap: usize) -> bool {
        gap >= 1 && gap < self.perm.len() && self.adj & (1 << (gap - 1)) != 0
    }

    pub fn is_classical(&self) -> bool {
        self.adj == 0
    }

    pub fn is_consecutive(&self) -> bool {
        let k = self.perm.len();
        self.adj == full_mask(k)
    }

    /// `T = {1, .., k-2}`: a contiguous block of `k-1` letters followed by one
    /// unconstrained letter.
    pub fn is_quasi_consecutive(&self) -> bool {
        let k = self.perm.len();
        k >= 2 && self.adj == full_mask(k - 1)
    }

    pub fn complement(&self) -> Self {
        Self {
            perm: self.perm.complement(),
            adj: self.adj,
        }
    }

    pub fn reverse(&self) -> Self {
        let k = self.perm.len();
        let mut adj = 0u64;
        for i in 1..k {
            if self.is_adjacent(i) {
                adj |= 1 << (k - i - 1);
            }
        }
        Self {
            perm: self.perm.reverse(),
            adj,
        }
    }

    /// Maximal runs of adjacency-linked positions, as 0-indexed
    /// `(start, length)` pairs covering `0..k`.
    pub(crate) fn blocks(&self) -> Vec<(usize, usize)> {
        let k = self.perm.len();
        let mut blocks = Vec::new();
        let mut start = 0;
        for gap in 1..=k {
            if gap == k || !self.is_adjacent(gap) {
                blocks.push((start, gap - start));
                start = gap;
            }
        }
        blocks
    }
}

fn full_mask(k: usize) -> u64 {
    if k <= 1 {
        0
    } else {
        (1 << (k - 1)) - 1
    }
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.perm.len();
        for (i, &v) in self.perm.values().iter().enumerate() {
            write!(f, "{}", value_to_char(v))?;
            if i + 1 < k && !self.is_adjacent(i + 1) {
                write!(f, "-")?;
            }
        }
        Ok(())
    }
}

impl FromStr for VincularPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(PatternError::Empty);
        }
        let mut values = Vec::new();
        let mut dashes = Vec::new();
        let mut last_was_dash = true;
        for c in s.chars() {
            if c == '-' {
                if last_was_dash {
                    return Err(if values.is_empty() {
                        PatternError::DanglingDash
                    } else {
                        PatternError::RepeatedDash
                    });
                }
                dashes.push(values.len());
                last_was_dash = true;
            } else {
                values.push(char_to_value(c)?);
                last_was_dash = false;
            }
        }
        if last_was_dash {
            return Err(PatternError::DanglingDash);
        }
        let k = values.len();
        if k > MAX_PATTERN_LEN {
            return Err(PatternError::TooLong);
        }
        let perm = Permutation::new(values).map_err(|_| PatternError::NotAPermutation(k))?;
        let adjacencies = (1..k).filter(|i| !dashes.contains(i));
        Self::new(perm, adjacencies)
    }
}

impl Serialize for VincularPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// The 1-indexed host positions of one pattern occurrence, strictly
/// increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    positions: Vec<usize>,
}

impl Occurrence {
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }
}

/// All occurrences of `pat` in `host`, in lexicographic order of their
/// position tuples.
pub fn occurrences(host: &Permutation, pat: &VincularPattern) -> Vec<Occurrence> {
    let mut out = Vec::new();
    search_blocks(host.values(), pat, None, &mut |positions| {
        out.push(Occurrence {
            positions: positions.iter().map(|p| p + 1).collect(),
        });
        true
    });
    out
}

/// Whether `host` contains at least one occurrence of `pat`.
pub fn contains(host: &Permutation, pat: &VincularPattern) -> bool {
    contains_word(host.values(), pat)
}

pub(crate) fn contains_word(host: &[u8], pat: &VincularPattern) -> bool {
    let mut found = false;
    search_blocks(host, pat, None, &mut |_| {
        found = true;
        false
    });
    found
}

/// Whether some occurrence of `pat` in `host` ends exactly at the last
/// position of `host`. Scanning a growing prefix with this test sees every
/// occurrence exactly when its final letter arrives.
pub(crate) fn completes_at_end(host: &[u8], pat: &VincularPattern) -> bool {
    if host.is_empty() {
        return false;
    }
    let mut found = false;
    search_blocks(host, pat, Some(host.len() - 1), &mut |_| {
        found = true;
        false
    });
    found
}

/// Places the adjacency blocks of `pat` left to right at strictly increasing
/// host positions, pruning on relative order as letters are committed.
/// `end_at` pins the final letter to the given 0-indexed host position.
/// The callback receives 0-indexed positions and returns false to stop.
fn search_blocks(
    host: &[u8],
    pat: &VincularPattern,
    end_at: Option<usize>,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let blocks = pat.blocks();
    let k = pat.len();
    if host.len() < k {
        return true;
    }
    let mut positions = Vec::with_capacity(k);
    place_block(host, pat.perm().values(), &blocks, 0, 0, end_at, &mut positions, emit)
}

#[allow(clippy::too_many_arguments)]
fn place_block(
    host: &[u8],
    pat: &[u8],
    blocks: &[(usize, usize)],
    b: usize,
    min_start: usize,
    end_at: Option<usize>,
    positions: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if b == blocks.len() {
        return emit(positions);
    }
    let (_, len) = blocks[b];
    let tail: usize = blocks[b..].iter().map(|&(_, l)| l).sum();
    let last = blocks.len() - 1;
    let hi = host.len() - tail;
    for start in min_start..=hi {
        if b == last {
            if let Some(end) = end_at {
                // Only the placement whose final letter lands on `end`.
                if start + len - 1 != end {
                    continue;
                }
            }
        }
        let mut ok = true;
        'outer: for off in 0..len {
            let p = positions.len() + off;
            let hv = host[start + off];
            for (q, &pos) in positions.iter().enumerate() {
                if (pat[p] < pat[q]) != (hv < host[pos]) {
                    ok = false;
                    break 'outer;
                }
            }
            for off2 in 0..off {
                let p2 = positions.len() + off2;
                if (pat[p] < pat[p2]) != (hv < host[start + off2]) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if !ok {
            continue;
        }
        for off in 0..len {
            positions.push(start + off);
        }
        let more = place_block(host, pat, blocks, b + 1, start + len, end_at, positions, emit);
        positions.truncate(positions.len() - len);
        if !more {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> VincularPattern {
        s.parse().unwrap()
    }

    #[test]
    fn parse_splits_values_and_adjacencies() {
        let p = pat("24-13");
        assert_eq!(p.perm().values(), &[2, 4, 1, 3]);
        assert_eq!(p.adjacencies(), vec![1, 3]);

        let q = pat("2153-4");
        assert_eq!(q.perm().values(), &[2, 1, 5, 3, 4]);
        assert_eq!(q.adjacencies(), vec![1, 2, 3]);
        assert!(q.is_quasi_consecutive());
        assert!(!q.is_consecutive());

        assert!(pat("2413").is_consecutive());
        assert!(pat("2-4-1-3").is_classical());
        assert!(pat("1-2").is_quasi_consecutive());
    }

    #[test]
    fn parse_rejects_malformed_strings() {
        assert_eq!(
            "21-".parse::<VincularPattern>(),
            Err(PatternError::DanglingDash)
        );
        assert_eq!(
            "-21".parse::<VincularPattern>(),
            Err(PatternError::DanglingDash)
        );
        assert_eq!(
            "2--1".parse::<VincularPattern>(),
            Err(PatternError::RepeatedDash)
        );
        assert_eq!(
            "2A3".parse::<VincularPattern>(),
            Err(PatternError::NotAPermutation(3))
        );
        assert_eq!(
            "2x3".parse::<VincularPattern>(),
            Err(PatternError::BadCharacter('x'))
        );
        assert_eq!(
            "220".parse::<VincularPattern>(),
            Err(PatternError::BadCharacter('0'))
        );
        assert_eq!("".parse::<VincularPattern>(), Err(PatternError::Empty));
    }

    #[test]
    fn format_inverts_parse() {
        for s in ["24-13", "2153-4", "1", "1-2", "35142", "4-3-2-1", "B1A9-8765432"] {
            assert_eq!(pat(s).to_string(), s);
        }
    }

    #[test]
    fn reduce_and_iso_examples() {
        assert_eq!(reduce(&[5u8, 2, 4]).unwrap().values(), &[3, 1, 2]);
        assert_eq!(reduce(&[2u8, 7, 1, 6]).unwrap().values(), &[2, 4, 1, 3]);
        assert!(order_isomorphic(&[2u8, 7, 1, 6], &[2u8, 4, 1, 3]).unwrap());
        assert!(!order_isomorphic(&[1u8, 2, 3], &[3u8, 2, 1]).unwrap());
        assert_eq!(
            order_isomorphic(&[1u8, 2], &[1u8, 2, 3]),
            Err(PatternError::LengthMismatch(2, 3))
        );
        assert_eq!(reduce(&[1u8, 1]), Err(PatternError::NotDistinct));
    }

    #[test]
    fn symmetries_match_examples() {
        assert_eq!(pat("12-4-3").complement().to_string(), "43-1-2");
        assert_eq!(pat("12-4-3").reverse().to_string(), "3-4-21");
        assert_eq!(pat("2153-4").reverse().to_string(), "4-3512");
        assert_eq!(pat("2153-4").complement().to_string(), "4513-2");
        for s in ["24-13", "2153-4", "1-32", "4321"] {
            assert_eq!(pat(s).complement().complement(), pat(s));
            assert_eq!(pat(s).reverse().reverse(), pat(s));
        }
    }

    #[test]
    fn occurrences_follow_adjacency_requirements() {
        let host = Permutation::parse("3275164").unwrap();
        let occ = occurrences(&host, &pat("24-13"));
        let tuples: Vec<&[usize]> = occ.iter().map(|o| o.positions()).collect();
        assert!(tuples.contains(&&[2usize, 3, 5, 6][..]));
        for o in &occ {
            let p = o.positions();
            assert_eq!(p[1], p[0] + 1);
            assert_eq!(p[3], p[2] + 1);
            assert!(p[2] > p[1]);
        }
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
    }

    #[test]
    fn consecutive_occurrences_are_windows() {
        let host = Permutation::parse("21534").unwrap();
        let occ = occurrences(&host, &pat("2143"));
        assert_eq!(occ.len(), 1);
        assert_eq!(occ[0].positions(), &[1, 2, 3, 4]);
        assert!(contains(&host, &pat("2153-4")));
    }

    #[test]
    fn completes_at_end_sees_new_occurrences_only() {
        let p = pat("12-3");
        assert!(!completes_at_end(&[5, 2, 1, 4], &p));
        assert!(completes_at_end(&[2, 4, 1, 5], &p));
        assert!(!completes_at_end(&[2, 4, 5, 1], &p));
    }

    #[test]
    fn blocks_cover_pattern() {
        assert_eq!(pat("24-13").blocks(), vec![(0, 2), (2, 2)]);
        assert_eq!(pat("2153-4").blocks(), vec![(0, 4), (4, 1)]);
        assert_eq!(pat("2413").blocks(), vec![(0, 4)]);
        assert_eq!(pat("2-4-1-3").blocks(), vec![(0, 1), (1, 1), (2, 1), (3, 1)]);
    }
}

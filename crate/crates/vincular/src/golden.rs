//! Embedded reference data: the 26-class table for length-5 quasi-consecutive
//! patterns and the refined first-two-letter avoider triangles for 2153-4 and
//! 3154-2. Used by `classify` and `recursion` to validate computed results.

use std::collections::BTreeMap;
use std::sync::LazyLock;

const CLASS_COUNTS_CSV: &str = include_str!("../data/class_counts.csv");
const TRIANGLE_SIGMA_CSV: &str = include_str!("../data/triangle_2153-4.csv");
const TRIANGLE_TAU_CSV: &str = include_str!("../data/triangle_3154-2.csv");

/// Smallest length with a reference avoider count.
pub const GOLDEN_MIN_N: usize = 5;
/// Largest length with a reference avoider count.
pub const GOLDEN_MAX_N: usize = 11;
/// Lengths covered by the reference triangles.
pub const TRIANGLE_RANGE: std::ops::RangeInclusive<usize> = 5..=9;

/// One reference equivalence class: label, members in compact notation (one
/// representative per complement pair, 60 in total), and avoider counts for
/// n = 5..=11.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenClass {
    pub label: char,
    pub members: Vec<&'static str>,
    counts: [u64; GOLDEN_MAX_N - GOLDEN_MIN_N + 1],
}

impl GoldenClass {
    /// Reference avoider count at length `n`, for 5 <= n <= 11.
    pub fn count(&self, n: usize) -> Option<u64> {
        if (GOLDEN_MIN_N..=GOLDEN_MAX_N).contains(&n) {
            Some(self.counts[n - GOLDEN_MIN_N])
        } else {
            None
        }
    }

    /// All reference counts as `(n, count)` pairs.
    pub fn counts(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (GOLDEN_MIN_N + i, c))
    }
}

/// The 26 reference classes in label order A..Z.
pub fn golden_classes() -> &'static [GoldenClass] {
    &CLASSES
}

/// Class listing the given compact pattern string as a member, if any.
/// Only one representative per complement pair is listed.
pub fn golden_class_of(member: &str) -> Option<&'static GoldenClass> {
    CLASSES.iter().find(|c| c.members.contains(&member))
}

/// Reference triangle for pattern "2153-4" or "3154-2" at length `n`
/// (5 <= n <= 9): entry `[k-1][l-1]` counts avoiders of length `n` whose
/// first two letters are `k, l`. The diagonal is zero.
pub fn golden_triangle(pattern: &str, n: usize) -> Option<&'static Vec<Vec<u64>>> {
    match pattern {
        "2153-4" => SIGMA_TRIANGLES.get(&n),
        "3154-2" => TAU_TRIANGLES.get(&n),
        _ => None,
    }
}

static CLASSES: LazyLock<Vec<GoldenClass>> = LazyLock::new(|| {
    let mut out: Vec<GoldenClass> = Vec::new();
    for line in CLASS_COUNTS_CSV.lines().skip(1) {
        let mut fields = line.split(',');
        let label = fields
            .next()
            .and_then(|s| s.chars().next())
            .expect("class row label");
        let member = fields.next().expect("class row member");
        let counts: Vec<u64> = fields
            .map(|v| v.parse().expect("class row count"))
            .collect();
        let counts: [u64; 7] = counts.try_into().expect("class row width");
        match out.last_mut() {
            Some(c) if c.label == label => {
                assert_eq!(c.counts, counts, "inconsistent counts for class {label}");
                c.members.push(member);
            }
            _ => out.push(GoldenClass {
                label,
                members: vec![member],
                counts,
            }),
        }
    }
    out
});

static SIGMA_TRIANGLES: LazyLock<BTreeMap<usize, Vec<Vec<u64>>>> =
    LazyLock::new(|| parse_triangles(TRIANGLE_SIGMA_CSV));
static TAU_TRIANGLES: LazyLock<BTreeMap<usize, Vec<Vec<u64>>>> =
    LazyLock::new(|| parse_triangles(TRIANGLE_TAU_CSV));

fn parse_triangles(csv: &'static str) -> BTreeMap<usize, Vec<Vec<u64>>> {
    let mut out: BTreeMap<usize, Vec<Vec<u64>>> = BTreeMap::new();
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let [n, k, l, value] = cells[..] else {
            panic!("triangle row shape: {line}");
        };
        let n: usize = n.parse().expect("triangle n");
        let k: usize = k.parse().expect("triangle k");
        let l: usize = l.parse().expect("triangle l");
        let value: u64 = value.parse().expect("triangle value");
        let rows = out.entry(n).or_insert_with(|| vec![vec![0; n]; n]);
        rows[k - 1][l - 1] = value;
    }
    out
}

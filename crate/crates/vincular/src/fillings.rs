//! Young diagrams, fillings, vincular containment inside fillings, and
//! exhaustive equivalence sweeps: shape equivalence compares avoider counts
//! over standard fillings per diagram, the filling-shape form compares them
//! per (empty rows, empty columns) class of arbitrary fillings.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::bijection::SwapSpec;
use crate::pattern::{iso, VincularPattern};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FillingError {
    #[error("column heights must be positive and nonincreasing")]
    BadHeights,
    #[error("bad diagram text {0:?}: expected comma-separated column heights")]
    BadDiagramText(String),
    #[error("cell ({0}, {1}) lies outside the diagram")]
    OutsideCell(usize, usize),
    #[error("two selected cells share a row or a column")]
    CollidingCells,
    #[error("row set or column set goes outside the diagram")]
    BadRowColSet,
    #[error("patterns must share a length, got {0} and {1}")]
    LengthMismatch(usize, usize),
}

/// A Young diagram in French notation, stored as nonincreasing column
/// heights; cell (col, row) is 1-indexed from the bottom-left corner.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    heights: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(heights: Vec<usize>) -> Result<Self, FillingError> {
        if heights.contains(&0) || heights.windows(2).any(|w| w[1] > w[0]) {
            return Err(FillingError::BadHeights);
        }
        Ok(Self { heights })
    }

    pub fn square(n: usize) -> Self {
        Self {
            heights: vec![n; n],
        }
    }

    /// Parses comma-separated column heights, e.g. `"4,4,2,1"`.
    pub fn parse(s: &str) -> Result<Self, FillingError> {
        let heights: Vec<usize> = s
            .split(',')
            .map(|part| part.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| FillingError::BadDiagramText(s.to_string()))?;
        Self::new(heights)
    }

    pub fn column_heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn columns(&self) -> usize {
        self.heights.len()
    }

    pub fn rows(&self) -> usize {
        self.heights.first().copied().unwrap_or(0)
    }

    pub fn cells(&self) -> usize {
        self.heights.iter().sum()
    }

    /// Height of a column, 1-indexed.
    pub fn height(&self, col: usize) -> usize {
        self.heights[col - 1]
    }

    pub fn contains_cell(&self, col: usize, row: usize) -> bool {
        col >= 1 && row >= 1 && col <= self.heights.len() && row <= self.heights[col - 1]
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.columns()
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.heights.iter().map(|h| h.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for YoungDiagram {
    type Err = FillingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for YoungDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Selected cells of a diagram, no two sharing a row or a column; kept
/// sorted by column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Filling {
    cells: Vec<(usize, usize)>,
}

impl Filling {
    pub fn new(mut cells: Vec<(usize, usize)>, d: &YoungDiagram) -> Result<Self, FillingError> {
        cells.sort_unstable();
        for &(col, row) in &cells {
            if !d.contains_cell(col, row) {
                return Err(FillingError::OutsideCell(col, row));
            }
        }
        if cells.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(FillingError::CollidingCells);
        }
        let mut rows: Vec<usize> = cells.iter().map(|&(_, r)| r).collect();
        rows.sort_unstable();
        if rows.windows(2).any(|w| w[0] == w[1]) {
            return Err(FillingError::CollidingCells);
        }
        Ok(Self { cells })
    }

    /// Cells sorted by column.
    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_standard(&self, d: &YoungDiagram) -> bool {
        d.is_square() && self.cells.len() == d.columns()
    }

    pub fn empty_rows(&self, d: &YoungDiagram) -> Vec<usize> {
        let used: Vec<usize> = self.cells.iter().map(|&(_, r)| r).collect();
        (1..=d.rows()).filter(|r| !used.contains(r)).collect()
    }

    pub fn empty_cols(&self, d: &YoungDiagram) -> Vec<usize> {
        let used: Vec<usize> = self.cells.iter().map(|&(c, _)| c).collect();
        (1..=d.columns()).filter(|c| !used.contains(c)).collect()
    }
}

fn enumerate_rec(
    d: &YoungDiagram,
    col: usize,
    used_rows: &mut Vec<bool>,
    current: &mut Vec<(usize, usize)>,
    allow_skip: impl Fn(usize) -> bool + Copy,
    allow_row: impl Fn(usize) -> bool + Copy,
    out: &mut Vec<Filling>,
) {
    if col > d.columns() {
        out.push(Filling {
            cells: current.clone(),
        });
        return;
    }
    if allow_skip(col) {
        enumerate_rec(d, col + 1, used_rows, current, allow_skip, allow_row, out);
    }
    for row in 1..=d.height(col) {
        if !used_rows[row] && allow_row(row) {
            used_rows[row] = true;
            current.push((col, row));
            enumerate_rec(d, col + 1, used_rows, current, allow_skip, allow_row, out);
            current.pop();
            used_rows[row] = false;
        }
    }
}

/// Every filling of the diagram, including the empty one.
pub fn enumerate_all_fillings(d: &YoungDiagram) -> Vec<Filling> {
    let mut out = Vec::new();
    let mut used = vec![false; d.rows() + 1];
    enumerate_rec(d, 1, &mut used, &mut Vec::new(), |_| true, |_| true, &mut out);
    out
}

/// Every standard filling: one cell in each row and each column. Empty when
/// the diagram is not square.
pub fn enumerate_standard_fillings(d: &YoungDiagram) -> Vec<Filling> {
    if !d.is_square() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut used = vec![false; d.rows() + 1];
    enumerate_rec(
        d,
        1,
        &mut used,
        &mut Vec::new(),
        |_| false,
        |_| true,
        &mut out,
    );
    out
}

/// Every filling whose set of empty rows is exactly `empty_rows` and empty
/// columns exactly `empty_cols`; empty when infeasible.
pub fn enumerate_fillings(
    d: &YoungDiagram,
    empty_rows: &[usize],
    empty_cols: &[usize],
) -> Result<Vec<Filling>, FillingError> {
    if empty_rows.iter().any(|&r| r < 1 || r > d.rows())
        || empty_cols.iter().any(|&c| c < 1 || c > d.columns())
    {
        return Err(FillingError::BadRowColSet);
    }
    let row_allowed: Vec<bool> = (0..=d.rows())
        .map(|r| r >= 1 && !empty_rows.contains(&r))
        .collect();
    let col_skipped: Vec<bool> = (0..=d.columns()).map(|c| empty_cols.contains(&c)).collect();
    let occupied_rows = d.rows() - empty_rows.len();
    let occupied_cols = d.columns() - empty_cols.len();
    if occupied_rows != occupied_cols {
        return Ok(Vec::new());
    }
    let mut raw = Vec::new();
    let mut used = vec![false; d.rows() + 1];
    enumerate_rec(
        d,
        1,
        &mut used,
        &mut Vec::new(),
        |c| col_skipped[c],
        |r| row_allowed[r],
        &mut raw,
    );
    // the recursion may still leave an allowed column or row unused
    Ok(raw
        .into_iter()
        .filter(|f| f.len() == occupied_cols)
        .collect())
}

/// Containment of a vincular pattern in a filling: selected cells in
/// increasing columns whose rows are order-isomorphic to the pattern, with
/// the full k x k column/row grid inside the diagram, and literally
/// neighboring diagram columns wherever the pattern requires adjacency.
pub fn filling_contains(d: &YoungDiagram, f: &Filling, p: &VincularPattern) -> bool {
    let k = p.len();
    if f.len() < k {
        return false;
    }
    let mut chosen = Vec::with_capacity(k);
    contains_rec(d, f.cells(), p, 0, &mut chosen)
}

fn contains_rec(
    d: &YoungDiagram,
    cells: &[(usize, usize)],
    p: &VincularPattern,
    start: usize,
    chosen: &mut Vec<(usize, usize)>,
) -> bool {
    let slot = chosen.len();
    if slot == p.len() {
        let rows: Vec<usize> = chosen.iter().map(|&(_, r)| r).collect();
        return iso(&rows, p.perm().values())
            && chosen
                .iter()
                .all(|&(c, _)| rows.iter().all(|&r| d.contains_cell(c, r)));
    }
    for idx in start..cells.len() {
        let (col, _) = cells[idx];
        if slot > 0 && p.is_adjacent(slot) {
            let prev = chosen[slot - 1].0;
            if col > prev + 1 {
                break;
            }
            if col != prev + 1 {
                continue;
            }
        }
        chosen.push(cells[idx]);
        if contains_rec(d, cells, p, idx + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Number of standard fillings of the diagram avoiding the pattern.
pub fn count_avoiding_standard_fillings(d: &YoungDiagram, p: &VincularPattern) -> u64 {
    enumerate_standard_fillings(d)
        .iter()
        .filter(|f| !filling_contains(d, f, p))
        .count() as u64
}

/// One class where the two avoider counts differ.
#[derive(Debug, Clone, Serialize)]
pub struct FillingCounterexample {
    pub diagram: String,
    pub empty_rows: Vec<usize>,
    pub empty_cols: Vec<usize>,
    pub fillings: u64,
    pub sigma_avoiders: u64,
    pub tau_avoiders: u64,
}

impl fmt::Display for FillingCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "diagram {} with empty rows {:?} and empty cols {:?}: {} fillings, {} vs {} avoiders",
            self.diagram,
            self.empty_rows,
            self.empty_cols,
            self.fillings,
            self.sigma_avoiders,
            self.tau_avoiders
        )
    }
}

/// Result of an equivalence sweep over all diagrams up to a cell budget.
#[derive(Debug, Clone, Serialize)]
pub struct FillingSweepReport {
    pub sigma: String,
    pub tau: String,
    pub max_cells: usize,
    pub shape_only: bool,
    pub diagrams_checked: usize,
    pub classes_checked: usize,
    pub counterexamples: Vec<FillingCounterexample>,
    /// Records the adjacency reading used by the sweep.
    pub adjacency_note: String,
}

impl FillingSweepReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// All diagrams with 1..=max_cells cells, in decreasing-first height order.
pub fn diagrams_up_to(max_cells: usize) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    diagrams_rec(max_cells, max_cells, &mut current, &mut out);
    out
}

fn diagrams_rec(
    budget: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<YoungDiagram>,
) {
    if !current.is_empty() {
        out.push(YoungDiagram {
            heights: current.clone(),
        });
    }
    for h in (1..=budget.min(max_part)).rev() {
        current.push(h);
        diagrams_rec(budget - h, h, current, out);
        current.pop();
    }
}

/// Compares avoider counts of the two patterns over every diagram with at
/// most `max_cells` cells. In the default mode every filling counts within
/// its (empty rows, empty columns) class; with `shape_only` only standard
/// fillings are compared. Zero counterexamples verifies the corresponding
/// equivalence at this scale.
pub fn check_filling_shape_wilf(
    sigma: &VincularPattern,
    tau: &VincularPattern,
    max_cells: usize,
    shape_only: bool,
) -> Result<FillingSweepReport, FillingError> {
    if sigma.len() != tau.len() {
        return Err(FillingError::LengthMismatch(sigma.len(), tau.len()));
    }
    let diagrams = diagrams_up_to(max_cells);
    let per_diagram: Vec<(usize, Vec<FillingCounterexample>)> = diagrams
        .par_iter()
        .map(|d| sweep_one_diagram(d, sigma, tau, shape_only))
        .collect();
    let mut counterexamples = Vec::new();
    let mut classes_checked = 0;
    for (classes, mut bad) in per_diagram {
        classes_checked += classes;
        counterexamples.append(&mut bad);
    }
    Ok(FillingSweepReport {
        sigma: sigma.to_string(),
        tau: tau.to_string(),
        max_cells,
        shape_only,
        diagrams_checked: diagrams.len(),
        classes_checked,
        counterexamples,
        adjacency_note: "adjacent pattern letters must sit in neighboring diagram columns; \
                         an intervening empty or excluded column breaks adjacency"
            .to_string(),
    })
}

fn sweep_one_diagram(
    d: &YoungDiagram,
    sigma: &VincularPattern,
    tau: &VincularPattern,
    shape_only: bool,
) -> (usize, Vec<FillingCounterexample>) {
    let mut bad = Vec::new();
    if shape_only {
        if !d.is_square() {
            return (0, bad);
        }
        let fillings = enumerate_standard_fillings(d);
        let sigma_avoiders = fillings
            .iter()
            .filter(|f| !filling_contains(d, f, sigma))
            .count() as u64;
        let tau_avoiders = fillings
            .iter()
            .filter(|f| !filling_contains(d, f, tau))
            .count() as u64;
        if sigma_avoiders != tau_avoiders {
            bad.push(FillingCounterexample {
                diagram: d.to_string(),
                empty_rows: Vec::new(),
                empty_cols: Vec::new(),
                fillings: fillings.len() as u64,
                sigma_avoiders,
                tau_avoiders,
            });
        }
        return (1, bad);
    }
    type ClassKey = (Vec<usize>, Vec<usize>);
    let mut classes: BTreeMap<ClassKey, (u64, u64, u64)> = BTreeMap::new();
    for f in enumerate_all_fillings(d) {
        let key = (f.empty_rows(d), f.empty_cols(d));
        let entry = classes.entry(key).or_insert((0, 0, 0));
        entry.0 += 1;
        entry.1 += u64::from(!filling_contains(d, &f, sigma));
        entry.2 += u64::from(!filling_contains(d, &f, tau));
    }
    let checked = classes.len();
    for ((empty_rows, empty_cols), (fillings, sigma_avoiders, tau_avoiders)) in classes {
        if sigma_avoiders != tau_avoiders {
            bad.push(FillingCounterexample {
                diagram: d.to_string(),
                empty_rows,
                empty_cols,
                fillings,
                sigma_avoiders,
                tau_avoiders,
            });
        }
    }
    (checked, bad)
}

/// The box swap on a filling: every run of consecutive columns whose cells
/// match one of the spec's patterns (with the full grid inside the diagram)
/// has its middle rows transported to match the other pattern. Preserves
/// the occupied row and column sets; an involution.
pub fn psi_filling(d: &YoungDiagram, f: &Filling, spec: &SwapSpec) -> Filling {
    let k = spec.k();
    let n = d.columns();
    let mut row_of: Vec<Option<usize>> = vec![None; n + 1];
    for &(c, r) in f.cells() {
        row_of[c] = Some(r);
    }
    let mut boxes: Vec<(usize, bool)> = Vec::new();
    if n >= k {
        for t in 1..=(n - k + 1) {
            let Some(rows) = (t..t + k)
                .map(|c| row_of[c])
                .collect::<Option<Vec<usize>>>()
            else {
                continue;
            };
            let is_sigma = iso(&rows, spec.sigma().values());
            if !is_sigma && !iso(&rows, spec.tau().values()) {
                continue;
            }
            if !(t..t + k).all(|c| rows.iter().all(|&r| d.contains_cell(c, r))) {
                continue;
            }
            boxes.push((t, is_sigma));
        }
    }
    for pair in boxes.windows(2) {
        let shared = (pair[0].0 + k).saturating_sub(pair[1].0);
        assert!(
            shared <= spec.max_overlap(),
            "boxes at {} and {} share {shared} columns",
            pair[0].0,
            pair[1].0
        );
    }
    let mut new_row_of = row_of.clone();
    for &(t, is_sigma) in &boxes {
        let rows: Vec<usize> = (t..t + k).map(|c| row_of[c].expect("boxed column")).collect();
        let target = if is_sigma { spec.tau() } else { spec.sigma() };
        let mut sorted = rows.clone();
        sorted.sort_unstable();
        for m in spec.i()..spec.j() {
            new_row_of[t + m] = Some(sorted[target.values()[m] as usize - 1]);
        }
    }
    let cells: Vec<(usize, usize)> = (1..=n).filter_map(|c| new_row_of[c].map(|r| (c, r))).collect();
    Filling::new(cells, d).expect("swap keeps a valid filling")
}

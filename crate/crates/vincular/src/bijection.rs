//! The box-swap involution: given two same-length patterns that agree
//! outside a middle segment and satisfy a prefix/suffix nonoverlap
//! condition, rearranging the middle of every matching window swaps
//! occurrences of one pattern for the other and witnesses their
//! Wilf equivalence, in both consecutive and trailing-dash forms.

use serde::Serialize;
use std::fmt;
use thiserror::Error;

use crate::enumerate::{for_each_perm, EnumerateError, FILTER_N_CAP};
use crate::pattern::{contains_word, iso, Permutation, PatternError, VincularPattern};

#[derive(Debug, Error)]
pub enum BijectionError {
    #[error("patterns must share a length, got {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("the two patterns are identical")]
    Identical,
    #[error("no valid split: {0}")]
    BadShape(String),
    #[error("nonoverlap criteria fail at z = {z} ({pair})")]
    Overlap { z: usize, pair: String },
    #[error("expected quasi-consecutive patterns with a trailing dashed letter")]
    NotQuasiConsecutive,
    #[error("dashed tail letters differ: {0} vs {1}")]
    TailMismatch(u8, u8),
    #[error("spec has no dashed tail; build one with make_quasi_swap_spec")]
    MissingDashedTail,
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// A validated pattern pair for the box swap. `sigma` and `tau` agree on
/// positions `[1, i]` and `[j+1, k]` and the middle of one is a
/// rearrangement of the middle of the other; the nonoverlap criteria hold.
/// `dashed_tail` marks the trailing-dash extension: the spec's patterns are
/// then the reduced consecutive parts and the tail letter is shared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwapSpec {
    sigma: Permutation,
    tau: Permutation,
    i: usize,
    j: usize,
    dashed_tail: Option<u8>,
}

impl SwapSpec {
    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn tau(&self) -> &Permutation {
        &self.tau
    }

    /// Agreement prefix length.
    pub fn i(&self) -> usize {
        self.i
    }

    /// Last middle position; agreement suffix is `[j+1, k]`.
    pub fn j(&self) -> usize {
        self.j
    }

    /// Pattern length.
    pub fn k(&self) -> usize {
        self.sigma.len()
    }

    pub fn dashed_tail(&self) -> Option<u8> {
        self.dashed_tail
    }

    /// Largest number of positions two boxes may share.
    pub fn max_overlap(&self) -> usize {
        self.i.min(self.k() - self.j)
    }

    /// The pair as consecutive patterns.
    pub fn consecutive_patterns(&self) -> (VincularPattern, VincularPattern) {
        let s = VincularPattern::consecutive(self.sigma.clone()).expect("valid length");
        let t = VincularPattern::consecutive(self.tau.clone()).expect("valid length");
        (s, t)
    }

    /// The pair as quasi-consecutive patterns with the dashed tail letter
    /// restored: values >= tail shift up by one and the tail is appended.
    pub fn dashed_patterns(&self) -> Option<(VincularPattern, VincularPattern)> {
        let d = self.dashed_tail?;
        let lift = |p: &Permutation| {
            let mut values: Vec<u8> = p
                .values()
                .iter()
                .map(|&v| if v >= d { v + 1 } else { v })
                .collect();
            values.push(d);
            let perm = Permutation::new(values).expect("lift keeps a permutation");
            VincularPattern::quasi_consecutive(perm).expect("valid length")
        };
        Some((lift(&self.sigma), lift(&self.tau)))
    }
}

impl fmt::Display for SwapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dashed_patterns() {
            Some((s, t)) => write!(f, "{s} <-> {t} (i = {}, j = {})", self.i, self.j),
            None => write!(
                f,
                "{} <-> {} (i = {}, j = {})",
                self.sigma, self.tau, self.i, self.j
            ),
        }
    }
}

/// True iff for every z with min(i, k-j) < z < k none of the four pairs
/// (sigma or tau prefix of length z) vs (sigma or tau suffix of length z)
/// are order-isomorphic.
pub fn check_nonoverlap(sigma: &Permutation, tau: &Permutation, i: usize, j: usize) -> bool {
    overlap_violation(sigma, tau, i, j).is_none()
}

fn overlap_violation(
    sigma: &Permutation,
    tau: &Permutation,
    i: usize,
    j: usize,
) -> Option<(usize, String)> {
    let k = sigma.len();
    let lo = i.min(k - j);
    for z in (lo + 1)..k {
        for (pre_name, pre) in [("sigma", sigma), ("tau", tau)] {
            for (suf_name, suf) in [("sigma", sigma), ("tau", tau)] {
                if iso(&pre.values()[..z], &suf.values()[k - z..]) {
                    return Some((z, format!("{pre_name} prefix ~ {suf_name} suffix")));
                }
            }
        }
    }
    None
}

/// Builds the spec with the tightest split: `i` is the longest common
/// prefix (capped below `j`) and `j` is the pattern length minus the
/// longest common suffix.
pub fn make_swap_spec(sigma: &Permutation, tau: &Permutation) -> Result<SwapSpec, BijectionError> {
    let k = sigma.len();
    if k != tau.len() {
        return Err(BijectionError::LengthMismatch(k, tau.len()));
    }
    if sigma == tau {
        return Err(BijectionError::Identical);
    }
    if k < 3 {
        return Err(BijectionError::BadShape(format!(
            "length {k} leaves no room for 1 <= i < j < k"
        )));
    }
    let s = sigma.values();
    let t = tau.values();
    let lcp = s.iter().zip(t).take_while(|(a, b)| a == b).count();
    let lcs = s
        .iter()
        .rev()
        .zip(t.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    if lcp == 0 {
        return Err(BijectionError::BadShape(
            "first letters differ, so no agreement prefix exists".into(),
        ));
    }
    if lcs == 0 {
        return Err(BijectionError::BadShape(
            "last letters differ, so no agreement suffix exists".into(),
        ));
    }
    let j = k - lcs;
    let i = lcp.min(j - 1);
    make_swap_spec_with_split(sigma, tau, i, j)
}

/// Builds the spec from an explicit split, validating the agreement shape
/// and the nonoverlap criteria.
pub fn make_swap_spec_with_split(
    sigma: &Permutation,
    tau: &Permutation,
    i: usize,
    j: usize,
) -> Result<SwapSpec, BijectionError> {
    let k = sigma.len();
    if k != tau.len() {
        return Err(BijectionError::LengthMismatch(k, tau.len()));
    }
    if sigma == tau {
        return Err(BijectionError::Identical);
    }
    if !(1 <= i && i < j && j < k) {
        return Err(BijectionError::BadShape(format!(
            "need 1 <= i < j < k, got i = {i}, j = {j}, k = {k}"
        )));
    }
    for x in (0..i).chain(j..k) {
        if sigma.values()[x] != tau.values()[x] {
            return Err(BijectionError::BadShape(format!(
                "patterns differ at position {} outside the middle",
                x + 1
            )));
        }
    }
    if let Some((z, pair)) = overlap_violation(sigma, tau, i, j) {
        return Err(BijectionError::Overlap { z, pair });
    }
    Ok(SwapSpec {
        sigma: sigma.clone(),
        tau: tau.clone(),
        i,
        j,
        dashed_tail: None,
    })
}

/// Builds the spec for a pair of quasi-consecutive patterns sharing their
/// dashed tail letter; the spec holds the reduced consecutive parts.
pub fn make_quasi_swap_spec(
    sigma: &VincularPattern,
    tau: &VincularPattern,
) -> Result<SwapSpec, BijectionError> {
    let m = sigma.len();
    if m != tau.len() {
        return Err(BijectionError::LengthMismatch(m, tau.len()));
    }
    if !sigma.is_quasi_consecutive() || !tau.is_quasi_consecutive() || m < 4 {
        return Err(BijectionError::NotQuasiConsecutive);
    }
    let ds = sigma.perm().value_at(m);
    let dt = tau.perm().value_at(m);
    if ds != dt {
        return Err(BijectionError::TailMismatch(ds, dt));
    }
    let s_part = crate::pattern::reduce(&sigma.perm().values()[..m - 1])?;
    let t_part = crate::pattern::reduce(&tau.perm().values()[..m - 1])?;
    let mut spec = make_swap_spec(&s_part, &t_part)?;
    spec.dashed_tail = Some(ds);
    Ok(spec)
}

fn boxes_word(word: &[u8], spec: &SwapSpec) -> Vec<usize> {
    let k = spec.k();
    let mut boxes = Vec::new();
    if word.len() >= k {
        for t in 0..=(word.len() - k) {
            let window = &word[t..t + k];
            if iso(window, spec.sigma.values()) || iso(window, spec.tau.values()) {
                boxes.push(t + 1);
            }
        }
    }
    for pair in boxes.windows(2) {
        let shared = (pair[0] + k).saturating_sub(pair[1]);
        assert!(
            shared <= spec.max_overlap(),
            "boxes at {} and {} share {shared} positions",
            pair[0],
            pair[1]
        );
    }
    for triple in boxes.windows(3) {
        assert!(
            triple[2] >= triple[0] + k,
            "three boxes pairwise intersect at {triple:?}"
        );
    }
    boxes
}

/// Start positions (1-indexed) of windows order-isomorphic to either
/// pattern of the spec.
pub fn find_boxes(host: &Permutation, spec: &SwapSpec) -> Vec<usize> {
    boxes_word(host.values(), spec)
}

fn psi_word(word: &[u8], spec: &SwapSpec) -> Vec<u8> {
    let k = spec.k();
    let mut out = word.to_vec();
    for &t in &boxes_word(word, spec) {
        let window = &word[t - 1..t - 1 + k];
        let target = if iso(window, spec.sigma.values()) {
            &spec.tau
        } else {
            &spec.sigma
        };
        let mut sorted = window.to_vec();
        sorted.sort_unstable();
        // middles never overlap, so reading from the input word is safe
        for m in spec.i..spec.j {
            out[t - 1 + m] = sorted[target.values()[m] as usize - 1];
        }
    }
    out
}

/// The box swap: every window matching one pattern has its middle
/// rearranged to match the other (position m of a box receives the value
/// whose rank in the box is the target's m-th letter); everything else is
/// fixed. An involution on the symmetric group.
pub fn psi(host: &Permutation, spec: &SwapSpec) -> Permutation {
    Permutation::new(psi_word(host.values(), spec)).expect("swap keeps a permutation")
}

/// Exhaustively checks over `S_n` that the swap is an involution, keeps
/// box positions fixed, and exchanges containment of the two consecutive
/// patterns.
pub fn verify_involution(spec: &SwapSpec, n: usize) -> Result<bool, BijectionError> {
    if n > FILTER_N_CAP {
        return Err(EnumerateError::FilterCapExceeded {
            op: "verify_involution",
            n,
            cap: FILTER_N_CAP,
        }
        .into());
    }
    let (sig_cons, tau_cons) = spec.consecutive_patterns();
    let mut ok = true;
    for_each_perm(n, &mut |word| {
        if !ok {
            return;
        }
        let image = psi_word(word, spec);
        ok &= psi_word(&image, spec) == word;
        ok &= boxes_word(&image, spec) == boxes_word(word, spec);
        ok &= contains_word(word, &sig_cons) == contains_word(&image, &tau_cons);
        ok &= contains_word(word, &tau_cons) == contains_word(&image, &sig_cons);
    });
    Ok(ok)
}

/// Exhaustively checks over `S_n` that the swap carries containment of one
/// pattern to containment of the other in both directions, so the two
/// patterns have equally many avoiders. With `dashed` the patterns are the
/// trailing-dash pair of the spec, otherwise the consecutive pair.
pub fn verify_wilf_via_psi(spec: &SwapSpec, n: usize, dashed: bool) -> Result<bool, BijectionError> {
    if n > FILTER_N_CAP {
        return Err(EnumerateError::FilterCapExceeded {
            op: "verify_wilf_via_psi",
            n,
            cap: FILTER_N_CAP,
        }
        .into());
    }
    let (sig, tau) = if dashed {
        spec.dashed_patterns()
            .ok_or(BijectionError::MissingDashedTail)?
    } else {
        spec.consecutive_patterns()
    };
    let mut ok = true;
    let mut sigma_avoiders = 0u64;
    let mut tau_avoiders = 0u64;
    for_each_perm(n, &mut |word| {
        let has_sigma = contains_word(word, &sig);
        let has_tau = contains_word(word, &tau);
        sigma_avoiders += u64::from(!has_sigma);
        tau_avoiders += u64::from(!has_tau);
        if !ok {
            return;
        }
        let image = psi_word(word, spec);
        ok &= has_sigma == contains_word(&image, &tau);
        ok &= has_tau == contains_word(&image, &sig);
    });
    Ok(ok && sigma_avoiders == tau_avoiders)
}

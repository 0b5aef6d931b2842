//! Wilf-equivalence machinery for consecutive and quasi-consecutive vincular
//! permutation patterns: avoider counting, a box-swap bijection, avoidance in
//! fillings of Young diagrams, triangle recurrences for two distinguished
//! patterns, and classification of quasi-consecutive patterns by avoidance
//! counts.

pub mod bijection;
pub mod classify;
pub mod enumerate;
pub mod fillings;
pub mod golden;
pub mod pattern;
pub mod recursion;

pub use pattern::{
    contains, occurrences, order_isomorphic, reduce, Occurrence, PatternError, Permutation,
    VincularPattern,
};

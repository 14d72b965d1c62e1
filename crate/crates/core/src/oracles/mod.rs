//! Brute-force reference computations on prefixes of infinite words.

mod prefix;
pub mod words;

pub use prefix::{
    appearance_naive, count_naive, novel_set_naive, FactorKind, FactorTable, NovelSet, PrefixView, PREFIX_CAP,
};
pub use words::{
    binary_concatenation, failure_function, gap_tightness_word, is_conjugate, is_power, is_unbordered, least_period,
    least_rotation, power_gap_check, power_gap_violation, rotate, word_structure, GapViolation, WordStructure,
};

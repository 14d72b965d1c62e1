//! First-order predicates over integer variables, compiled to automata.

mod library;
mod relation;

pub use library::{
    pred_factor_eq, pred_is_power, pred_novel, pred_novel_power, rel_add, rel_compare, seq_eq_positions, seq_letter_at,
    PredicateCompiler,
};
pub use relation::{Cmp, Quantifier, Relation};

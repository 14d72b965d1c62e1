//! Synchronized automata for the factor complexity of automatic sequences.
//!
//! Given a DFAO generating a k-automatic sequence, this crate compiles
//! first-order predicates about the sequence into multi-track automata and
//! builds automata accepting the graphs `{(n, f(n))_k}` of the subword
//! complexity, the appearance function and the counts of power and primitive
//! factors. Every construction is checked against brute-force oracles.

pub mod automata;
pub mod cli;
pub mod error;
pub mod numeration;
pub mod oracles;
pub mod predicates;
pub mod sequences;
pub mod synchro;

pub use error::{Error, Result};

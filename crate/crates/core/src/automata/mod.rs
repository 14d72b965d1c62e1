//! Multi-track automata over base-k digits: products, projection,
//! minimization and decision procedures.

mod dfa;
mod dfao;
pub mod format;
mod minimize;
mod nfa;

pub(crate) use dfa::product;
pub use dfa::{BoolOp, Dfa, DEFAULT_STATE_CAP};
pub use dfao::Dfao;
pub use nfa::{project_and_determinize, Nfa};

//! Synchronized functions of `n` built from position predicates.

mod blocks;
mod builders;
mod function;

pub use blocks::{
    build_block_automaton, build_block_count_dfao, build_count_sync, BlockAutomaton, BlockCountDfao, CountBuild,
};
pub use builders::{
    analyze, build_appearance_sync, build_power_count_sync, build_primitive_count_sync, build_rho_sync, Analysis,
};
pub use function::{EvalStats, SyncFunction, ARG_VAR, VALUE_VAR};

use crate::automata::DEFAULT_STATE_CAP;

/// Limits applied while building.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub iter_cap: usize,
    pub state_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { iter_cap: 64, state_cap: DEFAULT_STATE_CAP }
    }
}

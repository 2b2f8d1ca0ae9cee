//! Counting and classifying normal words through the obstruction automaton.

mod automaton;
mod classify;
mod freepair;

pub use automaton::{automaton_for, build_automaton, hilbert_prefix, AvoidanceAutomaton};
pub use classify::{classify_growth, CoarseGrowth, GrowthClass, GrowthVerdict};
pub use freepair::{
    check_free_pair, search_free_pair, verify_free_pair, window_blocks, FreePairCertificate,
    FreePairViolation,
};

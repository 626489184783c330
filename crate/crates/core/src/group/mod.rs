//! Permutation groups: stabilizer chains, actions, enumeration.

mod action;
mod chain;
mod closure;
mod three_transposition;

pub use action::{
    is_2_primitive, is_2_transitive, is_primitive, is_transitive, minimal_block, orbits, transitivity_degree,
    ActionError, Primitivity,
};
pub use chain::StabChain;
pub use closure::{reduce_generators, GroupSet, DEFAULT_CAP};
pub use three_transposition::{three_transposition_report, ThreeTranspositionReport};

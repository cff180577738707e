//! Permutation groups, colored digraphs and Cayley graphs, with tools for
//! deciding whether a Cayley (di)graph of a small group is a CI-graph.
//!
//! Permutations act on the right and compose left to right: `p.compose(q)`
//! applies `p` first. Cycle notation is 1-based; everything else is 0-based.

pub mod aut;
pub mod closure;
pub mod error;
pub mod graph;
pub mod group;
pub mod perm;
pub mod suite;

pub use aut::{
    are_isomorphic, automorphism_group, conjugating_element, regular_subgroups_isomorphic_to,
    AutResult,
};
pub use error::{Error, Result};
pub use graph::{cayley, ColoredDigraph, SimVerdict};
pub use group::{FiniteGroup, GroupSpec};
pub use perm::{BlockSystem, PermGroup, Permutation};

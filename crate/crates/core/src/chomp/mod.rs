//! Chomp on finite posets with a global minimum; whoever takes the minimum
//! loses.

mod bitset;
mod hasse;
mod mirror;
mod poset;
pub mod random;
mod semigroup;
mod solver;

pub use bitset::BitSet;
pub use hasse::to_dot;
pub use mirror::{exhaustive_adversary, mirror_agent, AdversaryReport, MirrorAgent};
pub use poset::{FinitePoset, Label};
pub use semigroup::{
    default_move_bound, scan_first_moves, semigroup_poset, semigroup_position_after, ScanConfig,
};
pub use solver::{Player, Position, Quality, Solver, Verdict, DEFAULT_ISO_LIMIT};

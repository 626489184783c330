//! Conway groupoids and hole-stabilizers of supersimple 2-(n,4,λ) designs.

mod big;
pub mod classify;
pub mod design;
pub mod group;
pub mod groupoid;
pub mod moves;
pub mod perm;
pub mod perm_set;
pub mod report;
pub mod two_graph;

pub use design::{Design, DesignError, DesignStats};
pub use perm::{Perm, PermError, Point};

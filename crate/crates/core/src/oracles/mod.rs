//! Brute-force reference implementations for cross-checking. They share no
//! traversal or data structures with the modules they check.

mod hull;
mod lattice;
mod stallings;

pub use hull::{brute_hull, BruteHull};
pub use lattice::{exponents, Lattice, LatticeError};
pub use stallings::{classic_fold, from_graph_map, freely_reduce, Letter, StallingsGraph};

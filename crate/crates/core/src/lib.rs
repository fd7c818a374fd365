//! Classical value of unique games represented as permutation-labeled graphs.
//!
//! A unique game on alphabet `[n]` is a graph whose edges carry permutations;
//! an assignment of values to vertices satisfies edge `u -> v` labelled `p`
//! when `p(k(u)) == k(v)`. This crate computes the minimum number of violated
//! edges (`beta_c`), the number of fully consistent assignments
//! (`beta_c_prime`) and the game value `1 - beta_c / |E|`, together with the
//! lift graph, switching equivalence, structural operations and the signed
//! and Latin-square special cases.

pub mod cli;
pub mod dot;
pub mod equiv;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod lift;
pub mod perm;
pub mod solve;
pub mod special;
pub mod xform;

mod union_find;

pub use error::{Error, Result};
pub use graph::{Edge, GameValue, LabeledGraph, Mode, VertexAssignment, Violation};
pub use perm::{latin_family, LatinFamily, LatinKind, PermError, Permutation};

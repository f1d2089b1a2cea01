//! Maximum-cardinality matching in general graphs through alternating base trees.
//!
//! Exact matchings come from phases that each augment along a maximal set of
//! disjoint shortest augmenting paths. The approximate driver stretches the
//! graph at hitting sets so short augmenting paths disappear quickly, and
//! charges every step to a simulated round and pass budget.

pub mod abd;
pub mod abt;
pub mod approx;
pub mod audit;
pub mod ddfs;
pub mod dist;
pub mod error;
pub mod gen;
pub mod graph;
pub mod heap;
pub mod io;
pub mod mcm;
pub mod oracle;
pub mod stretch;
pub mod union_find;

pub use error::{Error, Result};
pub use graph::{
    augment_along, build_matching_system, greedy_maximal_matching, is_augmenting_path, AlternatingPath, EdgeId, Graph,
    Matching, MatchingSystem, Parity, VertexId,
};
